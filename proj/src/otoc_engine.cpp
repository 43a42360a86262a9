#include "otoc/otoc.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace otoc {

namespace {

// sigma_z^site and sigma_x^site applied to a state vector in place.
void apply_sigma_z(Vec& v, int site, int n_sites) {
  const int bit = n_sites - site;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if ((i >> bit) & 1) v[i] = -v[i];
}

void apply_sigma_x(Vec& v, int site, int n_sites) {
  const Eigen::Index mask = Eigen::Index(1) << (n_sites - site);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (i & mask) std::swap(v[i], v[i ^ mask]);
}

// Half-chain x magnetization eigenvalues in the Hadamard-rotated basis.
void block_diagonals(int n, Eigen::VectorXd& w, Eigen::VectorXd& v) {
  const int d = 1 << n;
  w.resize(d);
  v.resize(d);
  for (int t = 0; t < d; ++t) {
    int left = 0, right = 0;
    for (int site = 1; site <= n; ++site) {
      const int s = 1 - 2 * ((t >> (n - site)) & 1);
      (site <= n / 2 ? left : right) += s;
    }
    w[t] = 2.0 * left / n;
    v[t] = 2.0 * right / n;
  }
}

void run_jobs(int count, int jobs, const std::function<void(int)>& work) {
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) work(i);
    });
  for (auto& th : pool) th.join();
}

double linear_slope(const std::vector<double>& x, const std::vector<double>& y,
                    double* intercept = nullptr, double* rms = nullptr) {
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (std::abs(den) < 1e-300) throw ContractError("degenerate linear fit");
  const double slope = (n * sxy - sx * sy) / den;
  const double b = (sy - slope * sx) / n;
  if (intercept) *intercept = b;
  if (rms) {
    double ss = 0;
    for (size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - slope * x[i] - b;
      ss += r * r;
    }
    *rms = std::sqrt(ss / n);
  }
  return slope;
}

}  // namespace

OtocSeries otoc_single_site(const SpinChainSpec& spec, const ObservablePair& pair,
                            int n_max) {
  spec.validate();
  if (pair.kind != PairKind::single_site_z && pair.kind != PairKind::single_site_x)
    throw ConfigError("otoc_single_site: expected a single-site observable pair");
  const int n_sites = spec.n_sites;
  if (pair.l < 1 || pair.l > n_sites || pair.m < 1 || pair.m > n_sites)
    throw ConfigError("otoc_single_site: site out of range");
  const bool zaxis = pair.kind == PairKind::single_site_z;
  const FloquetMap map(spec);
  const int d = spec.dim();

  Vec state;
  if (zaxis) {
    state = Vec::Zero(d);
    state[0] = 1.0;  // |up..up>, the +1 eigenstate of every sigma_z
  } else {
    state = Vec::Constant(d, cplx(1.0 / std::sqrt(double(d)), 0));
  }

  OtocSeries out;
  out.pair = pair;
  out.spec = spec;
  out.mode = TraceMode::polarized_state;
  Vec a = state;
  for (int n = 0; n <= n_max; ++n) {
    Vec u = a;
    if (zaxis)
      apply_sigma_z(u, pair.l, n_sites);
    else
      apply_sigma_x(u, pair.l, n_sites);
    for (int k = 0; k < n; ++k) map.apply_adjoint(u);
    Vec vu = u;
    if (zaxis)
      apply_sigma_z(vu, pair.m, n_sites);
    else
      apply_sigma_x(vu, pair.m, n_sites);
    const cplx f = u.dot(vu);
    out.n.push_back(n);
    out.f.push_back(f);
    out.c.push_back(1.0 - f.real());
    if (n < n_max) map.apply(a);
  }
  return out;
}

OtocSeries otoc_single_site_commutator(const SpinChainSpec& spec,
                                       const ObservablePair& pair, int n_max) {
  spec.validate();
  if (pair.kind != PairKind::single_site_z && pair.kind != PairKind::single_site_x)
    throw ConfigError("otoc_single_site_commutator: single-site pairs only");
  const int n_sites = spec.n_sites;
  const bool zaxis = pair.kind == PairKind::single_site_z;
  const FloquetMap map(spec);
  const int d = spec.dim();

  const auto op = [&](Vec& v, int site) {
    if (zaxis)
      apply_sigma_z(v, site, n_sites);
    else
      apply_sigma_x(v, site, n_sites);
  };

  Vec psi;
  if (zaxis) {
    psi = Vec::Zero(d);
    psi[0] = 1.0;
  } else {
    psi = Vec::Constant(d, cplx(1.0 / std::sqrt(double(d)), 0));
  }
  Vec vpsi = psi;
  op(vpsi, pair.m);

  OtocSeries out;
  out.pair = pair;
  out.spec = spec;
  out.mode = TraceMode::polarized_state;
  Vec a = psi, b = vpsi;  // U^n psi and U^n V psi
  for (int n = 0; n <= n_max; ++n) {
    Vec x = b;  // W(n) V psi
    op(x, pair.l);
    for (int k = 0; k < n; ++k) map.apply_adjoint(x);
    Vec y = a;  // V W(n) psi
    op(y, pair.l);
    for (int k = 0; k < n; ++k) map.apply_adjoint(y);
    op(y, pair.m);
    out.n.push_back(n);
    out.c.push_back(0.5 * (x - y).squaredNorm());
    if (n < n_max) {
      map.apply(a);
      map.apply(b);
    }
  }
  return out;
}

OtocSeries otoc_block(const SpinChainSpec& spec, int n_max, TraceMode mode,
                      int haar_states, std::uint64_t seed) {
  spec.validate();
  if (spec.n_sites % 2 != 0)
    throw ConfigError("otoc_block: block protocols need an even chain");
  const int n_sites = spec.n_sites;
  const int d = spec.dim();
  const FloquetMap map(spec);

  OtocSeries out;
  out.pair.kind = PairKind::spin_block;
  out.spec = spec;
  out.mode = mode;

  Eigen::VectorXd wdiag, vdiag;
  block_diagonals(n_sites, wdiag, vdiag);

  if (mode == TraceMode::exact_trace) {
    Mat w = Mat::Zero(d, d);
    w.diagonal() = wdiag.cast<cplx>();
    for (int n = 0; n <= n_max; ++n) {
      double c2 = 0, c4 = 0;
      for (int col = 0; col < d; ++col) {
        const cplx* p = w.col(col).data();
        double s2 = 0, s4 = 0;
        for (int row = 0; row < d; ++row) {
          const double a2 = std::norm(p[row]);
          s2 += a2 * vdiag[row] * vdiag[row];
          s4 += a2 * vdiag[row];
        }
        c2 += s2;
        c4 += s4 * vdiag[col];
      }
      out.n.push_back(n);
      out.c2.push_back(c2 / d);
      out.c4.push_back(c4 / d);
      out.c.push_back((c2 - c4) / d);
      if (n < n_max) map.conjugate(w, /*x_basis=*/true);
    }
    return out;
  }
  if (mode != TraceMode::haar_estimate)
    throw ConfigError("otoc_block: unsupported trace mode");
  if (haar_states < 3)
    throw ConfigError("otoc_block: haar estimation needs at least 3 states");

  // Tr(X)/d estimated by the mean of <phi|X|phi> over Haar states; the
  // evolved observable is applied to vectors through U kicks on both sides.
  const auto apply_w = [&](Vec& v, int n) {
    for (int k = 0; k < n; ++k) map.apply(v);
    Vec acc = Vec::Zero(d);
    for (int site = 1; site <= n_sites / 2; ++site) {
      Vec t = v;
      apply_sigma_x(t, site, n_sites);
      acc += t;
    }
    v = (2.0 / n_sites) * acc;
    for (int k = 0; k < n; ++k) map.apply_adjoint(v);
  };
  const auto apply_v = [&](Vec& v) {
    Vec acc = Vec::Zero(d);
    for (int site = n_sites / 2 + 1; site <= n_sites; ++site) {
      Vec t = v;
      apply_sigma_x(t, site, n_sites);
      acc += t;
    }
    v = (2.0 / n_sites) * acc;
  };

  std::vector<double> acc2(n_max + 1, 0), acc4(n_max + 1, 0);
  for (int s = 0; s < haar_states; ++s) {
    const Vec phi = haar_state(d, seed + std::uint64_t(s));
    for (int n = 0; n <= n_max; ++n) {
      Vec t = phi;
      apply_v(t);
      apply_v(t);
      apply_w(t, n);
      apply_w(t, n);
      acc2[n] += phi.dot(t).real();
      t = phi;
      apply_v(t);
      apply_w(t, n);
      apply_v(t);
      apply_w(t, n);
      acc4[n] += phi.dot(t).real();
    }
  }
  for (int n = 0; n <= n_max; ++n) {
    out.n.push_back(n);
    out.c2.push_back(acc2[n] / haar_states);
    out.c4.push_back(acc4[n] / haar_states);
    out.c.push_back((acc2[n] - acc4[n]) / haar_states);
  }
  return out;
}

OtocSeries otoc_random_observables(const SpinChainSpec& spec, int n_max,
                                   int realizations, std::uint64_t seed,
                                   int jobs, std::vector<double>* spread) {
  spec.validate();
  if (spec.n_sites % 2 != 0)
    throw ConfigError("otoc_random_observables: even chain required");
  if (realizations < 1)
    throw ConfigError("otoc_random_observables: need at least one realization");
  const int d = spec.dim();
  const int da = 1 << (spec.n_sites / 2);
  const int db = da;
  const FloquetMap map(spec);
  const double scale = double(d);  // C(inf) = 2^N for E[W^2] = d_A I ensembles

  std::vector<std::vector<double>> per_real(realizations);
  run_jobs(realizations, jobs, [&](int r) {
    const Mat wa = gue_sample(da, seed + 2 * std::uint64_t(r));
    const Mat vb = gue_sample(db, seed + 2 * std::uint64_t(r) + 1);
    Mat w = Mat::Zero(d, d);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        w.block(i * db, j * db, db, db) =
            wa(i, j) * Mat::Identity(db, db);
    std::vector<double> c(n_max + 1);
    Mat z(d, d);  // Z = W(n) (I (x) V_B); C2 = ||Z||_F^2, C4 = Re Tr(Z Z)
    for (int n = 0; n <= n_max; ++n) {
      for (int blk = 0; blk < da; ++blk)
        z.middleCols(blk * db, db).noalias() =
            w.middleCols(blk * db, db) * vb;
      const double c2 = z.squaredNorm();
      const double c4 = z.transpose().cwiseProduct(z).sum().real();
      c[n] = (c2 - c4) / d;
      if (n < n_max) map.conjugate(w);
    }
    per_real[r] = std::move(c);
  });

  OtocSeries out;
  out.pair.kind = PairKind::random_gue;
  out.pair.seed = seed;
  out.spec = spec;
  out.mode = TraceMode::exact_trace;
  if (spread) spread->assign(n_max + 1, 0.0);
  for (int n = 0; n <= n_max; ++n) {
    double mean = 0;
    for (int r = 0; r < realizations; ++r) mean += per_real[r][n];
    mean /= realizations;
    out.n.push_back(n);
    out.c.push_back(mean / scale);
    if (spread) {
      double ss = 0;
      for (int r = 0; r < realizations; ++r) {
        const double dlt = per_real[r][n] - mean;
        ss += dlt * dlt;
      }
      (*spread)[n] = realizations > 1
                         ? std::sqrt(ss / (realizations - 1.0) / realizations) /
                               scale
                         : 0.0;
    }
  }
  return out;
}

double opee(const FloquetMap& map, int n) {
  if (map.spec.n_sites % 2 != 0) throw ConfigError("opee: even chain required");
  const int d = map.dim();
  const int da = 1 << (map.spec.n_sites / 2);
  const int db = da;
  Mat u = Mat::Identity(d, d);
  for (int k = 0; k < n; ++k) {
    Vec col;
    // U(n) = U * U(n-1): apply the map to every column.
    for (int c = 0; c < d; ++c) {
      col = u.col(c);
      map.apply(col);
      u.col(c) = col;
    }
  }
  // Reshuffle U[(i,a),(j,b)] -> R[(i,j),(a,b)] and take singular values.
  Mat r(da * da, db * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int a = 0; a < db; ++a)
        for (int b = 0; b < db; ++b)
          r(i * da + j, a * db + b) = u(i * db + a, j * db + b);
  Eigen::BDCSVD<Mat> svd(r);
  const Eigen::VectorXd s = svd.singularValues();
  Eigen::VectorXd lam = s.array().square();
  lam /= lam.sum();
  return 1.0 - lam.squaredNorm();
}

double cue_asymptote(const Mat& w, const Mat& v) {
  const double d = double(w.rows());
  const double scale = std::max({1.0, w.cwiseAbs().maxCoeff(), v.cwiseAbs().maxCoeff()});
  if (std::abs(w.trace()) > 1e-9 * scale * d || std::abs(v.trace()) > 1e-9 * scale * d)
    throw ContractError("cue_asymptote: observables must be traceless");
  const double tw = (w * w).trace().real();
  const double tv = (v * v).trace().real();
  return tw * tv / (d * d - 1.0);
}

std::vector<DepartureEntry> departure_times(
    const std::vector<std::pair<int, std::vector<double>>>& c_by_separation,
    double epsilon) {
  std::vector<DepartureEntry> table;
  for (const auto& [dl, c] : c_by_separation) {
    DepartureEntry e;
    e.delta_l = dl;
    for (size_t n = 0; n < c.size(); ++n)
      if (c[n] > epsilon) {
        e.t = int(n);
        e.departed = true;
        break;
      }
    table.push_back(e);
  }
  return table;
}

double propagation_speed(const std::vector<DepartureEntry>& table) {
  std::vector<double> x, y;
  for (const auto& e : table)
    if (e.departed) {
      x.push_back(e.delta_l);
      y.push_back(e.t);
    }
  if (x.size() < 2)
    throw ContractError("propagation_speed: fewer than two departures");
  const double slope = linear_slope(x, y);
  if (std::abs(slope) < 1e-300)
    throw ContractError("propagation_speed: flat departure table");
  return 1.0 / slope;
}

FitResult fit_growth(const std::vector<double>& c, int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi >= int(c.size()) || n_hi <= n_lo)
    throw ConfigError("fit_growth: bad window");
  std::vector<double> x, y;
  for (int n = n_lo; n <= n_hi; ++n) {
    if (c[n] <= 0) throw ContractError("fit_growth: nonpositive value in window");
    x.push_back(std::log(double(n)));
    y.push_back(std::log(c[n]));
  }
  FitResult fit;
  fit.kind = FitResult::power_law;
  double b = 0;
  fit.exponent = linear_slope(x, y, &b, &fit.residual);
  fit.prefactor = std::exp(b);
  fit.n_lo = n_lo;
  fit.n_hi = n_hi;
  return fit;
}

FitResult fit_saturation(const std::vector<double>& c, double c_inf, int n_lo,
                         int n_hi) {
  if (n_lo < 0 || n_hi >= int(c.size()) || n_hi <= n_lo)
    throw ConfigError("fit_saturation: bad window");
  std::vector<double> x, y;
  for (int n = n_lo; n <= n_hi; ++n) {
    const double g = 1.0 - c[n] / c_inf;
    if (g <= 0) continue;  // already past saturation at this sample
    x.push_back(double(n));
    y.push_back(std::log(g));
  }
  if (x.size() < 2) throw ContractError("fit_saturation: empty log window");
  FitResult fit;
  fit.kind = FitResult::exponential;
  double b = 0;
  fit.exponent = -linear_slope(x, y, &b, &fit.residual);
  fit.prefactor = std::exp(b);
  fit.n_lo = n_lo;
  fit.n_hi = n_hi;
  return fit;
}

std::optional<std::pair<int, int>> auto_fit_window(const std::vector<double>& c,
                                                   double c_inf) {
  for (size_t n = 0; n < c.size(); ++n)
    if (c[n] / c_inf > 0.8) {
      const int hi = int(n) / 2;
      if (hi <= 2) return std::nullopt;
      return std::make_pair(2, hi);
    }
  return std::nullopt;
}

double long_time_average(const std::vector<cplx>& f, int t_horizon) {
  if (int(f.size()) < t_horizon + 1)
    throw ConfigError("long_time_average: series shorter than horizon");
  double s = 0;
  for (int n = 1; n <= t_horizon; ++n) s += f[n].real();
  return s / t_horizon;
}

}  // namespace otoc
