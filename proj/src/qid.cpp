#include "otoc/qid.hpp"

#include <cmath>
#include <complex>

using cplx = std::complex<double>;

namespace otoc {

double QidParams::zeta(double dmi) const {
  return std::exp(-suppression_rate * std::abs(dmi));
}

void QidParams::validate() const {
  if (j1 <= 0 || a <= 0 || a0 <= 0) throw ConfigError("qid: j1, a, a0 must be positive");
  if (j2 < 0 || d < 0) throw ConfigError("qid: j2 and d must be nonnegative");
  if (n_modes < 1) throw ConfigError("qid: need at least one Bragg mode");
  if (r12 <= 0) throw ConfigError("qid: spin separation must be positive");
  if (suppression_rate < 0) throw ConfigError("qid: suppression rate must be nonnegative");
}

double dispersion(const QidParams& p, double kx, double ky, int sign) {
  const double g1 = 0.5 * (std::cos(kx * p.a) + std::cos(ky * p.a));
  const double g2 =
      0.5 * (std::cos((kx + ky) * p.a) + std::cos((kx - ky) * p.a));
  return 2 * p.j1 * (1 - g1) + 2 * p.j2 * (1 - g2) + sign * p.d * std::sin(kx * p.a);
}

double omega_s(const QidParams& p, int sign, double k) {
  return 2 * p.j1 * (1 - 0.5 * std::cos(k * p.a)) +
         2 * p.j2 * (1 - std::cos(k * p.a)) + sign * p.d * std::sin(k * p.a);
}

WaveVectors wave_vectors(const QidParams& p, int m0) {
  if (m0 < 1 || m0 > p.n_modes) throw ConfigError("wave_vectors: m0 out of range");
  WaveVectors wv;
  wv.k_plus = m0 * M_PI / p.a0;
  wv.k_minus = wv.k_plus + (2.0 / p.a) * std::atan(p.d / (p.j1 + 2 * p.j2));
  wv.omega = omega_s(p, +1, wv.k_plus);
  return wv;
}

double omega_product(const QidParams& p, double dmi, double t, bool left) {
  QidParams pd = p;
  pd.d = dmi;
  const double shift =
      left ? (2.0 / p.a) * std::atan(dmi / (p.j1 + 2 * p.j2)) : 0.0;
  const int sign = left ? -1 : +1;
  cplx s(0, 0);
  for (int m0 = 1; m0 <= p.n_modes; ++m0) {
    const double kp = m0 * M_PI / p.a0;
    const double w = omega_s(pd, sign, kp);
    s += std::exp(cplx(0, w * t - (kp + shift) * p.r12));
  }
  return std::norm(s);
}

std::pair<double, double> otoc_left_right(const QidParams& p, double t) {
  p.validate();
  const double n2 = double(p.n_modes) * p.n_modes;
  const auto base = [&](double prod) {
    return 8.0 / n2 * prod - 8.0 / (n2 * n2) * prod * prod;
  };
  const double z = p.zeta(p.d);
  const double cl = base(omega_product(p, p.d, t, true));
  const double cr = z * z * z * z * base(omega_product(p, p.d, t, false));
  return {cl, cr};
}

double group_velocity(const QidParams& p, int sign) {
  const double k0 = 1e-6 / p.a;
  return (omega_s(p, sign, k0) - omega_s(p, sign, 0.0)) / k0;
}

double default_t_max(const QidParams& p) {
  const double vp = std::abs(group_velocity(p, +1));
  const double vm = std::abs(group_velocity(p, -1));
  return p.n_modes * p.a / std::min(vp, vm);
}

double rectification(const QidParams& p, int n_time_points) {
  p.validate();
  if (n_time_points < 2) throw ConfigError("rectification: need at least 2 samples");
  const double tmax = p.t_max > 0 ? p.t_max : default_t_max(p);
  const double dt = tmax / (n_time_points - 1);
  double num = 0, den = 0;
  for (int i = 0; i < n_time_points; ++i) {
    const auto [cl, cr] = otoc_left_right(p, i * dt);
    const double w = (i == 0 || i == n_time_points - 1) ? 0.5 : 1.0;
    num += w * cr;
    den += w * cl;
  }
  if (den <= 0) throw ContractError("rectification: vanishing left signal");
  return num / den;
}

}  // namespace otoc
