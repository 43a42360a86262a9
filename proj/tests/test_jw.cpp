#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <chrono>
#include <cmath>

#include "doctest.h"
#include "otoc/jw.hpp"

using namespace otoc;

namespace {

SpinChainSpec ch2_chain(int n, double tau0, double tau1) {
  SpinChainSpec spec;
  spec.n_sites = n;
  spec.j_x = 1;
  spec.h_x = 0;
  spec.h_z = 1;
  spec.tau0 = tau0;
  spec.tau1 = tau1;
  spec.boundary = Boundary::closed;
  return spec;
}

}  // namespace

TEST_CASE("momentum grid is the antiperiodic set") {
  const auto qs = momentum_grid(6);
  REQUIRE(qs.size() == 6);
  CHECK(qs[0] == doctest::Approx(-5 * M_PI / 6));
  CHECK(qs[2] == doctest::Approx(-M_PI / 6));
  CHECK(qs[3] == doctest::Approx(M_PI / 6));
  CHECK(qs[5] == doctest::Approx(5 * M_PI / 6));
  for (size_t i = 0; i < qs.size(); ++i)
    CHECK(qs[i] == doctest::Approx(-qs[qs.size() - 1 - i]));
  CHECK_THROWS_AS(momentum_grid(5), ConfigError);
}

TEST_CASE("mode amplitudes at n=0 and conjugation symmetry") {
  const auto mc = mode_coefficients(M_PI / 6, 0.3, 0.22);
  const auto m0 = mode_amplitudes(mc, 0);
  CHECK(m0.phi.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(m0.phi.imag()) < 1e-12);
  // unitarity of the per-mode transfer matrix: |Phi|^2 + |Psi|^2 = 1
  for (int n : {1, 3, 10}) {
    const auto ma = mode_amplitudes(mc, n);
    CHECK(std::norm(ma.phi) + std::norm(ma.psi) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(mc.gamma >= 0);
  CHECK(mc.gamma <= M_PI);
  CHECK(mc.alpha_plus * mc.alpha_plus + mc.alpha_minus * mc.alpha_minus ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degenerate mode collapses to the scalar rotation") {
  // tau1 = 0 makes every mode's axis vanish: Phi = e^{-i n t0} style scalar,
  // Psi = 0 identically.
  const auto mc = mode_coefficients(M_PI / 6, 0.0, 0.0);
  CHECK(mc.degenerate);
  const auto ma = mode_amplitudes(mc, 7);
  CHECK(std::abs(ma.psi) == 0.0);
  CHECK(ma.phi.real() == doctest::Approx(std::cos(7 * mc.gamma)).epsilon(1e-12));
}

TEST_CASE("analytic tmotoc matches exact diagonalization") {
  const double tau0 = 0.3, tau1 = 0.22;
  const SpinChainSpec spec = ch2_chain(6, tau0, tau1);
  for (auto [l, m] : {std::pair{1, 1}, {1, 3}, {1, 4}}) {
    ObservablePair pair;
    pair.kind = PairKind::single_site_z;
    pair.l = l;
    pair.m = m;
    const auto ed = otoc_single_site(spec, pair, 8);
    for (int n = 0; n <= 8; ++n) {
      const cplx fjw = tmotoc_analytic(6, tau0, tau1, l, m, n);
      CHECK(std::abs(fjw - ed.f[n]) < 1e-8);
    }
  }
}

TEST_CASE("translation invariance and boundedness") {
  for (int n : {1, 4, 9}) {
    const cplx a = tmotoc_analytic(8, 0.19, 0.23, 1, 4, n);
    const cplx b = tmotoc_analytic(8, 0.19, 0.23, 3, 6, n);
    CHECK(std::abs(a - b) < 1e-10);
    CHECK(std::abs(a) <= 1.0 + 1e-8);
  }
}

TEST_CASE("departure time agrees with exact diagonalization") {
  // N=12, tau0 = pi/56, tau1 = pi/28, separation 3.
  const double tau0 = M_PI / 56, tau1 = M_PI / 28;
  const SpinChainSpec spec = ch2_chain(12, tau0, tau1);
  ObservablePair pair;
  pair.kind = PairKind::single_site_z;
  pair.m = 6;
  pair.l = 9;
  const auto ed = otoc_single_site(spec, pair, 20);
  const auto jw = jw_series(12, tau0, tau1, 9, 6, 20);
  const auto dep_ed = departure_times({{3, ed.c}}, 1e-3);
  const auto dep_jw = departure_times({{3, jw.c}}, 1e-3);
  REQUIRE(dep_ed[0].departed);
  REQUIRE(dep_jw[0].departed);
  CHECK(dep_ed[0].t == dep_jw[0].t);
  CHECK(dep_ed[0].t == 8);
}

TEST_CASE("revival at weak kicks") {
  // N=12, tau0 = tau1 = pi/28: F returns within 1e-3 of 1 at some n <= 5000.
  int revival = -1;
  for (int n = 50; n <= 5000; n += 1) {
    const cplx f = tmotoc_analytic(12, M_PI / 28, M_PI / 28, 6, 6, n);
    if (std::abs(f - cplx(1, 0)) < 1e-3) {
      revival = n;
      break;
    }
  }
  CHECK(revival > 0);
  MESSAGE("revival index: ", revival);
}

TEST_CASE("triple sum cost scales like the cube of the chain length") {
  const auto time_points = [](int n_sites, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    cplx acc(0, 0);
    for (int r = 0; r < reps; ++r)
      acc += tmotoc_analytic(n_sites, 0.11, 0.13, 1, 1, 5 + (r % 3));
    const auto dt = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0).count();
    CHECK(std::abs(acc) < 1e18);  // keep the work observable
    return dt / reps;
  };
  time_points(12, 5);  // warm up
  const double t12 = time_points(12, 400);
  const double t24 = time_points(24, 50);
  const double ratio = t24 / t12;
  MESSAGE("per-point cost ratio N=24 / N=12: ", ratio);
  CHECK(ratio > 6.0);
  CHECK(ratio < 10.0);
}
