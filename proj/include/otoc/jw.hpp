#pragma once
#include "otoc/otoc.hpp"

namespace otoc {

// Even-fermion-parity momentum grid: q = odd multiples of pi/N in (-pi, pi).
std::vector<double> momentum_grid(int n_sites);

// Per-mode data of the free-fermion transfer matrix
// T_q = diag(e^{+i t0}, e^{-i t0}) exp(-i (t1/2)(cos q sigma_z + sin q sigma_y))
// with t0 = 2 tau0, t1 = 4 tau1; gamma_q in [0, pi] is its eigenphase,
//   cos gamma_q = cos t0 cos(t1/2) + cos q sin t0 sin(t1/2).
struct ModeCoefficients {
  double q = 0, t0 = 0, t1 = 0;
  double gamma = 0;
  double alpha_plus = 0, alpha_minus = 0;
  cplx beta_plus{0, 0}, beta_minus{0, 0};
  bool degenerate = false;  // sin gamma ~ 0: the Psi channel vanishes
};

struct ModeAmplitudes {
  cplx phi{0, 0}, psi{0, 0};
  int n = 0;
};

ModeCoefficients mode_coefficients(double q, double tau0, double tau1);
// Phi_q(n) = |a+|^2 e^{-i n g} + |a-|^2 e^{+i n g},
// Psi_q(n) = a+ b+ e^{-i n g} + a- b- e^{+i n g}.
ModeAmplitudes mode_amplitudes(const ModeCoefficients& mc, int n);

// Closed-chain TMOTOC F_z^{l,m}(n) by the triple momentum sum; O(N^3) per
// time point, no 2^N objects anywhere.
cplx tmotoc_analytic(int n_sites, double tau0, double tau1, int l, int m, int n);

OtocSeries jw_series(int n_sites, double tau0, double tau1, int l, int m,
                     int n_max);

}  // namespace otoc
