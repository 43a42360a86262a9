#include "otoc/phase_scan.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "otoc/floquet.hpp"

namespace otoc {

namespace {

struct EigenPath {
  Mat sigma;            // sigma_x^{N/2} in the eigenbasis of U
  Vec w;                // initial x-polarized state in the eigenbasis
  Vec lambda;           // e^{i theta}
};

EigenPath prepare(const SpinChainSpec& spec) {
  spec.validate();
  const FloquetMap map(spec);
  const int d = spec.dim();
  const Mat u = map.dense();
  Eigen::VectorXd theta;
  Mat q;
  unitary_eigensystem(u, theta, &q);

  const int n = spec.n_sites;
  const int l = n / 2;
  const Eigen::Index mask = Eigen::Index(1) << (n - l);
  Mat pq(d, d);
  for (int r = 0; r < d; ++r) pq.row(r) = q.row(int(r ^ mask));

  EigenPath ep;
  ep.sigma = q.adjoint() * pq;
  ep.w = q.adjoint() * Vec::Constant(d, cplx(1.0 / std::sqrt(double(d)), 0));
  ep.lambda.resize(d);
  for (int k = 0; k < d; ++k) ep.lambda[k] = std::exp(cplx(0, theta[k]));
  return ep;
}

std::vector<cplx> series_from_path(const EigenPath& ep, int t_horizon) {
  const Eigen::Index d = ep.w.size();
  Vec y = ep.w;
  Vec phase_n = Vec::Ones(d);  // conj(lambda)^n accumulated
  std::vector<cplx> f(t_horizon + 1, cplx(1, 0));
  for (int n = 1; n <= t_horizon; ++n) {
    y.array() *= ep.lambda.array();
    phase_n.array() *= ep.lambda.conjugate().array();
    Vec a = ep.sigma * y;
    a.array() *= phase_n.array();
    const Vec sa = ep.sigma * a;
    f[n] = a.dot(sa);
  }
  return f;
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

double interpolate(double x0, double v0, double x1, double v1, double target) {
  if (std::abs(v1 - v0) < 1e-300) return 0.5 * (x0 + x1);
  return x0 + (target - v0) * (x1 - x0) / (v1 - v0);
}

}  // namespace

std::vector<cplx> lmotoc_series_eig(const SpinChainSpec& spec, int t_horizon) {
  return series_from_path(prepare(spec), t_horizon);
}

double lmotoc_long_time_average(const SpinChainSpec& spec, int t_horizon) {
  const auto f = lmotoc_series_eig(spec, t_horizon);
  double s = 0;
  for (int n = 1; n <= t_horizon; ++n) s += f[n].real();
  return s / t_horizon;
}

PhaseGrid scan(const SpinChainSpec& spec_template,
               const std::vector<double>& tau0_values,
               const std::vector<double>& tau1_values, int t_horizon,
               int jobs) {
  PhaseGrid grid;
  grid.tau0_values = tau0_values;
  grid.tau1_values = tau1_values;
  grid.n_sites = spec_template.n_sites;
  grid.t_horizon = t_horizon;
  const int rows = int(tau0_values.size());
  const int cols = int(tau1_values.size());
  grid.order_parameter.resize(rows, cols);
  run_jobs(rows * cols, jobs, [&](int idx) {
    const int r = idx / cols, c = idx % cols;
    SpinChainSpec spec = spec_template;
    spec.tau0 = tau0_values[r];
    spec.tau1 = tau1_values[c];
    grid.order_parameter(r, c) = lmotoc_long_time_average(spec, t_horizon);
  });
  return grid;
}

std::vector<CriticalPoint> extract_critical_line(const PhaseGrid& grid,
                                                 double threshold) {
  std::vector<CriticalPoint> line;
  for (int r = 0; r < grid.order_parameter.rows(); ++r) {
    for (int c = 1; c < grid.order_parameter.cols(); ++c) {
      const double v0 = std::abs(grid.order_parameter(r, c - 1));
      const double v1 = std::abs(grid.order_parameter(r, c));
      if (v0 < threshold && v1 >= threshold) {
        CriticalPoint cp;
        cp.tau0 = grid.tau0_values[r];
        cp.tau1 = interpolate(grid.tau1_values[c - 1], v0, grid.tau1_values[c],
                              v1, threshold);
        line.push_back(cp);
        break;
      }
    }
  }
  return line;
}

double tau0_crossing(const SpinChainSpec& spec_template, double tau1,
                     const std::vector<double>& tau0_samples, int t_horizon,
                     double threshold) {
  if (tau0_samples.size() < 2)
    throw ConfigError("tau0_crossing: need at least two samples");
  std::vector<double> v(tau0_samples.size());
  for (size_t i = 0; i < tau0_samples.size(); ++i) {
    SpinChainSpec spec = spec_template;
    spec.tau0 = tau0_samples[i];
    spec.tau1 = tau1;
    v[i] = std::abs(lmotoc_long_time_average(spec, t_horizon));
  }
  for (int i = int(v.size()) - 1; i >= 1; --i)
    if ((v[i] - threshold) * (v[i - 1] - threshold) <= 0)
      return interpolate(tau0_samples[i], v[i], tau0_samples[i - 1], v[i - 1],
                         threshold);
  throw ContractError("tau0_crossing: no threshold crossing on the transect");
}

double finite_size_exponent(
    const std::vector<std::pair<int, double>>& tau0c_by_n,
    double tau0c_infinity, double* std_error) {
  if (tau0c_by_n.size() < 2)
    throw ConfigError("finite_size_exponent: need at least two sizes");
  std::vector<double> x, y;
  for (const auto& [n, t0c] : tau0c_by_n) {
    const double delta = std::abs(t0c - tau0c_infinity);
    if (delta <= 0)
      throw ContractError("finite_size_exponent: zero shift at finite size");
    x.push_back(std::log(double(n)));
    y.push_back(std::log(delta));
  }
  const double m = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / den;
  if (std_error) {
    const double b = (sy - slope * sx) / m;
    double ss = 0;
    for (size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - slope * x[i] - b;
      ss += r * r;
    }
    *std_error = m > 2 ? std::sqrt(ss / (m - 2) / (sxx - sx * sx / m)) : 0.0;
  }
  return -slope;
}

}  // namespace otoc
