#pragma once
#include <utility>
#include <vector>

#include "otoc/chain.hpp"

namespace otoc {

// Magnonic-crystal diode: nonreciprocal 2D magnon dispersion under DMI,
// analytic left/right OTOC mode sums and the rectification coefficient.
struct QidParams {
  double j1 = 1.0;           // nearest-neighbor coupling
  double j2 = 0.5;           // next-nearest coupling
  double d = 1.0;            // DMI strength
  int n_modes = 1000;        // m0 = 1..N Bragg modes
  double a = 1e-3;           // unit cell size
  double a0 = 1.0;           // magnonic-crystal lattice constant
  double r12 = 1e-2;         // spin separation (defaults to 10 a)
  double suppression_rate = 0.2;  // zeta(D) = exp(-rate * D)
  double t_max = -1.0;       // < 0: N a / v_g(slower branch)

  double zeta(double dmi) const;
  void validate() const;
};

// Full 2D dispersion omega(+/-D, k) = 2J1(1-g1) + 2J2(1-g2) + sign*D sin(kx a),
// g1 = (cos kx a + cos ky a)/2, g2 = (cos(kx+ky)a + cos(kx-ky)a)/2.
double dispersion(const QidParams& p, double kx, double ky, int sign);

// On-axis propagated-mode frequency 2J1(1 - cos(ka)/2) + 2J2(1 - cos ka)
// + sign*D sin(ka), as used by the mode sums.
double omega_s(const QidParams& p, int sign, double k);

struct WaveVectors {
  double k_plus = 0;   // m0 pi / a0
  double k_minus = 0;  // k_plus + (2/a) atan(D/(J1 + 2 J2))
  double omega = 0;    // omega_s(+D, k_plus)
};
WaveVectors wave_vectors(const QidParams& p, int m0);

// |Omega|^2 mode-sum product for one side at time t. The left product at D is
// evaluated through the right product at -D (they are equal identically; the
// residual Bragg phase offset is global and drops out of |.|^2).
double omega_product(const QidParams& p, double dmi, double t, bool left);

// (C_L, C_R) at time t: C = (8/N^2) P - (8/N^4) P^2 with P = |Omega|^2 and
// C_R additionally scaled by zeta^4(D).
std::pair<double, double> otoc_left_right(const QidParams& p, double t);

double group_velocity(const QidParams& p, int sign);
double default_t_max(const QidParams& p);

// R = integral C_R dt / integral C_L dt, trapezoidal on a uniform grid.
double rectification(const QidParams& p, int n_time_points = 20000);

}  // namespace otoc
