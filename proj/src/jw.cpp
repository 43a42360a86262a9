#include "otoc/jw.hpp"

#include <cmath>

namespace otoc {

std::vector<double> momentum_grid(int n_sites) {
  if (n_sites < 2 || n_sites % 2 != 0)
    throw ConfigError("momentum_grid: even chain length required");
  std::vector<double> qs;
  for (int k = n_sites / 2; k >= 1; --k)
    qs.push_back(-(2 * k - 1) * M_PI / n_sites);
  for (int k = 1; k <= n_sites / 2; ++k)
    qs.push_back((2 * k - 1) * M_PI / n_sites);
  return qs;
}

ModeCoefficients mode_coefficients(double q, double tau0, double tau1) {
  ModeCoefficients mc;
  mc.q = q;
  mc.t0 = 2.0 * tau0;
  mc.t1 = 4.0 * tau1;
  const double ct = std::cos(mc.t0), st = std::sin(mc.t0);
  const double ch = std::cos(mc.t1 / 2), sh = std::sin(mc.t1 / 2);
  const double cg = std::clamp(ct * ch + std::cos(q) * st * sh, -1.0, 1.0);
  mc.gamma = std::acos(cg);
  const double sg = std::sin(mc.gamma);
  double nx = st * sh * std::sin(q);
  double ny = ct * sh * std::sin(q);
  double nz = ct * sh * std::cos(q) - st * ch;
  if (sg > 1e-12) {
    nx /= sg;
    ny /= sg;
    nz /= sg;
  } else {
    mc.degenerate = true;
    nx = ny = nz = 0.0;
  }
  mc.alpha_plus = std::sqrt(std::max(0.0, (1.0 - nz) / 2));
  mc.alpha_minus = std::sqrt(std::max(0.0, (1.0 + nz) / 2));
  const cplx off(nx, ny);
  mc.beta_plus = mc.alpha_plus > 1e-12 ? -off / (2.0 * mc.alpha_plus) : cplx(0, 0);
  mc.beta_minus = mc.alpha_minus > 1e-12 ? off / (2.0 * mc.alpha_minus) : cplx(0, 0);
  return mc;
}

ModeAmplitudes mode_amplitudes(const ModeCoefficients& mc, int n) {
  ModeAmplitudes ma;
  ma.n = n;
  const cplx em = std::exp(cplx(0, -double(n) * mc.gamma));
  const cplx ep = std::conj(em);
  ma.phi = mc.alpha_plus * mc.alpha_plus * em + mc.alpha_minus * mc.alpha_minus * ep;
  ma.psi = mc.alpha_plus * mc.beta_plus * em + mc.alpha_minus * mc.beta_minus * ep;
  return ma;
}

cplx tmotoc_analytic(int n_sites, double tau0, double tau1, int l, int m, int n) {
  if (l < 1 || m < 1) throw ConfigError("tmotoc_analytic: sites are 1-based");
  const auto grid = momentum_grid(n_sites);
  const int nq = int(grid.size());
  std::vector<cplx> phi(nq), psi(nq);
  std::vector<double> apsi2(nq), aphi2(nq);
  for (int i = 0; i < nq; ++i) {
    const auto ma = mode_amplitudes(mode_coefficients(grid[i], tau0, tau1), n);
    phi[i] = ma.phi;
    psi[i] = ma.psi;
    apsi2[i] = std::norm(ma.psi);
    aphi2[i] = std::norm(ma.phi);
  }
  const double delta = double(m - l);
  std::vector<cplx> eq(nq);
  for (int i = 0; i < nq; ++i) eq[i] = std::exp(cplx(0, grid[i] * delta));
  // the grid is symmetric, so the -q partner of index i is nq-1-i
  cplx s(0, 0);
  for (int p = 0; p < nq; ++p) {
    const cplx phip_c = std::conj(phi[p]);
    const cplx psi_mp = psi[nq - 1 - p];
    for (int q = 0; q < nq; ++q) {
      const cplx pq = phip_c * phi[q];
      for (int r = 0; r < nq; ++r) {
        const cplx psir_c = std::conj(psi[r]);
        const cplx t1 = std::conj(eq[q]) * eq[p] * apsi2[r] * pq;
        const cplx t2 = std::conj(eq[q] * eq[r]) * psir_c * pq * psi_mp;
        const cplx t3 = eq[p] * eq[q] * psi[q] * psir_c * phip_c * phi[nq - 1 - r];
        const cplx t4 = eq[q] * std::conj(eq[r]) * psi[q] * psir_c * aphi2[p];
        s += t1 - t2 - t3 + t4;
      }
    }
  }
  const double w = 2.0 / n_sites;
  return cplx(1, 0) - w * w * w * s;
}

OtocSeries jw_series(int n_sites, double tau0, double tau1, int l, int m,
                     int n_max) {
  OtocSeries out;
  out.pair.kind = PairKind::single_site_z;
  out.pair.l = l;
  out.pair.m = m;
  out.spec.n_sites = n_sites;
  out.spec.tau0 = tau0;
  out.spec.tau1 = tau1;
  out.mode = TraceMode::jw_analytic;
  for (int n = 0; n <= n_max; ++n) {
    const cplx f = tmotoc_analytic(n_sites, tau0, tau1, l, m, n);
    out.n.push_back(n);
    out.f.push_back(f);
    out.c.push_back(1.0 - f.real());
  }
  return out;
}

}  // namespace otoc
