#include "otoc/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "otoc/floquet.hpp"

namespace otoc {

int bit_reverse(int index, int n_sites) {
  int out = 0;
  for (int b = 0; b < n_sites; ++b)
    if ((index >> b) & 1) out |= 1 << (n_sites - 1 - b);
  return out;
}

SymmetrySectors sector_decompose(int n_sites) {
  SymmetrySectors s;
  s.n_sites = n_sites;
  const int d = 1 << n_sites;
  for (int i = 0; i < d; ++i) {
    const int j = bit_reverse(i, n_sites);
    if (i == j)
      s.even.push_back({i, i});
    else if (i < j) {
      s.even.push_back({i, j});
      s.odd.push_back({i, j});
    }
  }
  return s;
}

namespace {

// Projected column of U for basis vector (e_i + sgn e_j)/norm.
void add_projected(const Mat& u, const std::array<int, 2>& pair, double sgn,
                   Vec& col) {
  if (pair[0] == pair[1]) {
    col = u.col(pair[0]);
  } else {
    const double inv = 1.0 / std::sqrt(2.0);
    col = inv * (u.col(pair[0]) + sgn * u.col(pair[1]));
  }
}

double clamp_spacing(double s) { return s < 0 ? 0.0 : s; }

void ks_scores(SpectralSet& set) {
  std::vector<double> s = set.unfolded_spacings;
  std::sort(s.begin(), s.end());
  const double m = double(s.size());
  double dw = 0, dp = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    const double fw = 1.0 - std::exp(-M_PI * s[i] * s[i] / 4.0);
    const double fp = 1.0 - std::exp(-s[i]);
    const double lo = i / m, hi = (i + 1) / m;
    dw = std::max({dw, std::abs(fw - lo), std::abs(fw - hi)});
    dp = std::max({dp, std::abs(fp - lo), std::abs(fp - hi)});
  }
  set.ks_wigner = dw;
  set.ks_poisson = dp;
  if (!set.degenerate)
    set.verdict = dw < dp ? "wigner" : "poisson";
}

}  // namespace

SpectralSet quasi_energies(const FloquetMap& map, bool even_sector) {
  const Mat u = map.dense();
  const int d = map.dim();
  const int n = map.spec.n_sites;
  // The projection is only valid if U commutes with the reflection.
  double comm = 0;
  for (int c = 0; c < d; ++c) {
    const int rc = bit_reverse(c, n);
    for (int r = 0; r < d; ++r)
      comm = std::max(comm, std::abs(u(r, c) - u(bit_reverse(r, n), rc)));
  }
  if (comm > 1e-10)
    throw ContractError("quasi_energies: map does not respect bond reflection");

  const SymmetrySectors sectors = sector_decompose(n);
  const auto& basis = even_sector ? sectors.even : sectors.odd;
  const double sgn = even_sector ? 1.0 : -1.0;
  const int ds = int(basis.size());

  Mat us(ds, ds);
  Vec col(d);
  for (int c = 0; c < ds; ++c) {
    add_projected(u, basis[c], sgn, col);
    for (int r = 0; r < ds; ++r) {
      const auto& [i, j] = basis[r];
      if (i == j)
        us(r, c) = col[i];
      else
        us(r, c) = (col[i] + sgn * col[j]) / std::sqrt(2.0);
    }
  }

  Eigen::VectorXd theta;
  unitary_eigensystem(us, theta);
  std::sort(theta.data(), theta.data() + theta.size());

  SpectralSet set;
  set.quasi_energies.assign(theta.data(), theta.data() + theta.size());
  double min_gap = 2 * M_PI - (theta[ds - 1] - theta[0]);
  for (int k = 1; k < ds; ++k)
    min_gap = std::min(min_gap, theta[k] - theta[k - 1]);
  if (min_gap < 1e-10) {
    set.degenerate = true;
    set.verdict = "inconclusive";
  }
  return set;
}

void unfold_and_score(SpectralSet& set, int poly_degree) {
  if (set.degenerate)
    throw ContractError("unfold_and_score: degenerate spectrum is inconclusive");
  const auto& th = set.quasi_energies;
  const int m = int(th.size());
  if (m < poly_degree + 2) throw ConfigError("unfold_and_score: too few levels");

  // Fit the staircase N(theta) = k + 1/2 with a polynomial on [-1, 1].
  const double lo = th.front(), hi = th.back();
  const double span = std::max(hi - lo, 1e-12);
  Eigen::MatrixXd vand(m, poly_degree + 1);
  Eigen::VectorXd rhs(m);
  for (int k = 0; k < m; ++k) {
    const double x = 2.0 * (th[k] - lo) / span - 1.0;
    double p = 1.0;
    for (int j = 0; j <= poly_degree; ++j) {
      vand(k, j) = p;
      p *= x;
    }
    rhs[k] = k + 0.5;
  }
  const Eigen::VectorXd coef = vand.colPivHouseholderQr().solve(rhs);
  const auto staircase = [&](double t) {
    const double x = 2.0 * (t - lo) / span - 1.0;
    double p = 1.0, s = 0.0;
    for (int j = 0; j <= poly_degree; ++j) {
      s += coef[j] * p;
      p *= x;
    }
    return s;
  };

  std::vector<double> spacings;
  for (int k = 1; k < m; ++k)
    spacings.push_back(clamp_spacing(staircase(th[k]) - staircase(th[k - 1])));
  spacings.push_back(clamp_spacing(staircase(th[0]) + m - staircase(th[m - 1])));
  score_spacings(set, std::move(spacings));
}

void score_spacings(SpectralSet& set, std::vector<double> spacings) {
  if (spacings.empty()) throw ConfigError("score_spacings: empty sequence");
  double mean = 0;
  for (double s : spacings) mean += s;
  mean /= spacings.size();
  if (mean <= 0) throw ContractError("score_spacings: nonpositive mean spacing");
  for (double& s : spacings) s /= mean;
  set.unfolded_spacings = std::move(spacings);
  ks_scores(set);
}

double dominant_frequency(const std::vector<cplx>& f, int t_horizon) {
  if (int(f.size()) < t_horizon + 1)
    throw ConfigError("dominant_frequency: series shorter than horizon");
  if (t_horizon < 2) throw ConfigError("dominant_frequency: horizon too short");
  cplx mean(0, 0);
  for (int n = 1; n <= t_horizon; ++n) mean += f[n];
  mean /= double(t_horizon);
  int best = 1;
  double best_amp = -1;
  for (int nu = 1; nu <= t_horizon / 2; ++nu) {
    cplx acc(0, 0);
    for (int n = 1; n <= t_horizon; ++n)
      acc += (f[n] - mean) *
             std::exp(cplx(0, -2.0 * M_PI * nu * n / t_horizon));
    const double amp = std::abs(acc) / t_horizon;
    if (amp > best_amp) {
      best_amp = amp;
      best = nu;
    }
  }
  if (best_amp < 1e-14)
    throw ContractError("dominant_frequency: spectrum vanishes away from zero");
  return double(best) / t_horizon;
}

}  // namespace otoc
