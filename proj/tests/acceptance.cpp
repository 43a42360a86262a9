// Acceptance gate: one line per criterion, nonzero exit on any failure.
// argv[1] (optional) is the path to the CLI binary, used by the determinism
// criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "otoc/floquet.hpp"
#include "otoc/jw.hpp"
#include "otoc/otoc.hpp"
#include "otoc/phase_scan.hpp"
#include "otoc/qid.hpp"
#include "otoc/spectral.hpp"

using namespace otoc;

namespace {

int failures = 0;
std::vector<int> selected;  // empty = run everything

void report(int index, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", index, ok ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void run(int index, const std::function<std::pair<bool, std::string>()>& body) {
  if (!selected.empty() &&
      std::find(selected.begin(), selected.end(), index) == selected.end())
    return;
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    std::tie(ok, detail) = body();
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  char buf[32];
  std::snprintf(buf, sizeof buf, "  [%.0fs]", dt);
  report(index, ok, detail + buf);
}

SpinChainSpec chain(int n, double hx, double hz, double tau0, double tau1,
                    Boundary b = Boundary::closed) {
  SpinChainSpec s;
  s.n_sites = n;
  s.j_x = 1;
  s.h_x = hx;
  s.h_z = hz;
  s.tau0 = tau0;
  s.tau1 = tau1;
  s.boundary = b;
  return s;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  for (int i = 2; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  // 1. analytic TMOTOC vs exact diagonalization, N=12, tau = pi/28, l = m.
  run(1, [] {
    const double tau = M_PI / 28;
    const auto spec = chain(12, 0, 1, tau, tau);
    ObservablePair pair;
    pair.kind = PairKind::single_site_z;
    pair.l = pair.m = 6;
    const auto ed = otoc_single_site(spec, pair, 200);
    const auto jw = jw_series(12, tau, tau, 6, 6, 200);
    double md = 0;
    for (int n = 0; n <= 200; ++n)
      md = std::max(md, std::abs(jw.f[n] - ed.f[n]));
    return std::make_pair(md <= 1e-8, fmt("max |F_jw - F_ed| = %.2e", md));
  });

  // 2. short-time commutator growth at tau = 1e-3, N=6 closed chain.
  run(2, [] {
    const double tau = 1e-3;
    const auto spec = chain(6, 0, 1, tau, tau);
    const auto series = [&](PairKind kind, int l, int m, int n_max) {
      ObservablePair pair;
      pair.kind = kind;
      pair.l = l;
      pair.m = m;
      return otoc_single_site_commutator(spec, pair, n_max);
    };
    const auto sz1 = series(PairKind::single_site_z, 2, 3, 3);
    const auto sz2 = series(PairKind::single_site_z, 2, 4, 2);
    const auto sx1 = series(PairKind::single_site_x, 2, 3, 3);
    const double t2 = tau * tau, t6 = std::pow(tau, 6);
    const double ratios[] = {sz1.c[1] / (8 * t2),    sz1.c[2] / (32 * t2),
                             sz1.c[3] / (72 * t2),   sz2.c[2] / (128 * t6),
                             sx1.c[2] / (128 * t6),  sx1.c[3] / (2048 * t6)};
    bool ok = true;
    std::string d = "ratios";
    for (double r : ratios) {
      ok = ok && r >= 0.97 && r <= 1.03;
      d += fmt(" %.4f", r);
    }
    return std::make_pair(ok, d);
  });

  // 3. tau <-> pi/2 - tau duality of the block series, N=8, h_x = h_z = 4.
  run(3, [] {
    // the pi/2 - tau duality is exact on the ring (H_xx spectrum even there)
    const auto a = otoc_block(chain(8, 4, 4, M_PI / 18, M_PI / 18), 500,
                              TraceMode::exact_trace);
    const auto b = otoc_block(
        chain(8, 4, 4, M_PI / 2 - M_PI / 18, M_PI / 2 - M_PI / 18), 500,
        TraceMode::exact_trace);
    double md = 0;
    for (int n = 0; n <= 500; ++n) md = std::max(md, std::abs(a.c[n] - b.c[n]));
    return std::make_pair(md <= 1e-9, fmt("max pointwise diff = %.2e", md));
  });

  // 4. special point tau = pi/4: zeros at n = 2mN and 2N-periodic structure.
  run(4, [] {
    const auto s =
        otoc_block(chain(8, 0, 1, M_PI / 4, M_PI / 4, Boundary::open), 50,
                   TraceMode::exact_trace);
    bool ok = true;
    double worst_zero = 0, worst_period = 0;
    for (int m = 1; m <= 3; ++m)
      worst_zero = std::max(worst_zero, std::abs(s.c[16 * m]));
    for (int n = 0; n + 16 <= 50; ++n)
      worst_period = std::max(worst_period, std::abs(s.c[n + 16] - s.c[n]));
    ok = worst_zero <= 1e-8 && worst_period <= 1e-8;
    return std::make_pair(
        ok, fmt("|C(2mN)| <= %.2e, period-16 defect %.2e", worst_zero,
                worst_period));
  });

  // 5. ensemble-averaged random-block OTOC tracks the propagator OPEE.
  run(5, [] {
    const auto spec = chain(6, 4, 4, M_PI / 18, M_PI / 18, Boundary::open);
    const auto mean = otoc_random_observables(spec, 20, 200, 2024, 1);
    const FloquetMap map(spec);
    bool ok = true;
    std::string d;
    for (int n : {1, 5, 20}) {
      const double e = opee(map, n);
      const double err = std::abs(mean.c[n] - e) / std::max(e, 0.01);
      ok = ok && err < 0.05;
      d += fmt(" n=%d otoc=%.4f opee=%.4f", n, mean.c[n], e);
    }
    return std::make_pair(ok, d);
  });

  // 6. block-observable growth exponents at N=12, open chain; the window
  // rule keys off the observed saturation level (mean over the last quarter)
  // since the finite chain settles below the random-matrix value.
  run(6, [] {
    struct Case {
      double hx, tau, lo, hi;
      int n_max;
    };
    const Case cases[] = {{0, M_PI / 18, 1.7, 2.3, 160},
                          {4, M_PI / 18, 0.9, 1.4, 400},
                          {4, 3 * M_PI / 18, 1.4, 2.0, 110}};
    bool ok = true;
    std::string d;
    for (const auto& c : cases) {
      const auto s =
          otoc_block(chain(12, c.hx, 4, c.tau, c.tau, Boundary::open),
                     c.n_max, TraceMode::exact_trace);
      double tail = 0;
      const int lo = 3 * c.n_max / 4;
      for (int n = lo; n <= c.n_max; ++n) tail += s.c[n];
      tail /= c.n_max - lo + 1;
      const auto win = auto_fit_window(s.c, tail);
      if (!win) {
        ok = false;
        d += " no-window";
        continue;
      }
      const auto fit = fit_growth(s.c, win->first, win->second);
      ok = ok && fit.exponent >= c.lo && fit.exponent <= c.hi;
      d += fmt(" b=%.3f[%d,%d]", fit.exponent, win->first, win->second);
    }
    return std::make_pair(ok, d);
  });

  // 7. random-block saturation rate at N=12, integrable kicks.
  run(7, [] {
    const auto spec = chain(12, 0, 4, M_PI / 18, M_PI / 18, Boundary::open);
    const auto s = otoc_random_observables(spec, 60, 2, 12345, 1);
    double tail = 0;
    for (int n = 45; n <= 60; ++n) tail += s.c[n];
    tail /= 16;
    const auto win = auto_fit_window(s.c, tail);
    if (!win) return std::make_pair(false, std::string("no auto window"));
    const auto fit = fit_saturation(s.c, tail, win->first, win->second);
    const bool ok =
        fit.exponent >= 0.08 && fit.exponent <= 0.22 && fit.residual < 0.1;
    return std::make_pair(
        ok, fmt("mu = %.4f, residual = %.4f, window [%d,%d]", fit.exponent,
                fit.residual, win->first, win->second));
  });

  // 8. quasi-energy spacing verdicts at N=12, even sector, open chain.
  run(8, [] {
    const auto sectors = sector_decompose(12);
    bool ok = int(sectors.even.size()) == (4096 + 64) / 2 &&
              int(sectors.odd.size()) == (4096 - 64) / 2;
    std::string d;

    auto chaotic = quasi_energies(
        FloquetMap(chain(12, 4, 4, M_PI / 3, M_PI / 3, Boundary::open)), true);
    if (chaotic.degenerate) {
      ok = false;
      d += " chaotic-degenerate";
    } else {
      unfold_and_score(chaotic, 6);
      ok = ok && chaotic.ks_wigner < chaotic.ks_poisson;
      d += fmt(" chaotic ksW=%.3f ksP=%.3f", chaotic.ks_wigner,
               chaotic.ks_poisson);
    }

    auto inte = quasi_energies(
        FloquetMap(chain(12, 0, 4, M_PI / 18, M_PI / 18, Boundary::open)),
        true);
    if (inte.degenerate) {
      ok = false;
      d += " integrable-degenerate";
    } else {
      unfold_and_score(inte, 6);
      ok = ok && inte.ks_poisson < inte.ks_wigner;
      d += fmt(" integrable ksW=%.3f ksP=%.3f", inte.ks_wigner,
               inte.ks_poisson);
    }

    auto special = quasi_energies(
        FloquetMap(chain(12, 4, 4, M_PI / 4, M_PI / 4, Boundary::open)), true);
    ok = ok && special.degenerate && special.verdict == "inconclusive";
    d += fmt(" special=%s", special.verdict.c_str());
    return std::make_pair(ok, d);
  });

  // 9. z- and x-channel butterfly speeds agree within 10%.
  run(9, [] {
    const auto spec =
        chain(12, 0, 1, M_PI / 56, M_PI / 28, Boundary::open);
    double speeds[2];
    bool monotone = true;
    std::string d;
    int idx = 0;
    for (auto kind : {PairKind::single_site_z, PairKind::single_site_x}) {
      std::vector<std::pair<int, std::vector<double>>> tables;
      for (int dl = 3; dl <= 8; ++dl) {
        ObservablePair pair;
        pair.kind = kind;
        pair.m = 1;
        pair.l = 1 + dl;
        tables.emplace_back(dl, otoc_single_site(spec, pair, 60).c);
      }
      const auto dep = departure_times(tables, 1e-3);
      for (size_t k = 0; k < dep.size(); ++k) {
        if (!dep[k].departed) monotone = false;
        if (k > 0 && dep[k].t <= dep[k - 1].t) monotone = false;
      }
      speeds[idx++] = propagation_speed(dep);
    }
    const double rel =
        std::abs(speeds[0] - speeds[1]) / std::max(speeds[0], speeds[1]);
    d = fmt("v_z = %.4f, v_x = %.4f, gap = %.1f%%, monotone = %s", speeds[0],
            speeds[1], 100 * rel, monotone ? "yes" : "no");
    return std::make_pair(rel <= 0.10 && monotone, d);
  });

  // 10. phase-scan grid properties and finite-size exponent.
  run(10, [] {
    std::vector<double> taus;
    for (int k = 0; k < 14; ++k) taus.push_back(k * M_PI / 28);
    const auto grid = scan(chain(8, 0, 1, 0, 0), taus, taus, 1000, 1);
    bool ok = true;
    std::string d;
    // self-duality: (k, k') <-> (14-k, 14-k') for interior indices
    double sym = 0;
    for (int r = 1; r <= 13; ++r)
      for (int c = 1; c <= 13; ++c)
        sym = std::max(sym, std::abs(grid.order_parameter(r, c) -
                                     grid.order_parameter(14 - r, 14 - c)));
    ok = ok && sym <= 1e-6;
    d += fmt("sym=%.1e", sym);
    // tau0 = tau1 = 0 is the identity map (Fbar = 1 trivially); the zero-kick
    // column is meaningful only for nonzero tau0
    double col0 = 0;
    for (int r = 1; r < 14; ++r)
      col0 = std::max(col0, std::abs(grid.order_parameter(r, 0)));
    ok = ok && col0 < 0.05;
    d += fmt(" tau1=0 col max=%.2e", col0);
    ok = ok && grid.order_parameter(1, 7) > 0.9;
    d += fmt(" F(pi/28,pi/4)=%.4f", grid.order_parameter(1, 7));

    // synthetic finite-size pipeline
    std::vector<std::pair<int, double>> synth;
    for (int n : {6, 8, 10})
      synth.emplace_back(n, M_PI / 4 - 0.9 * std::pow(double(n), -0.8));
    const double planted = finite_size_exponent(synth, M_PI / 4, nullptr);
    ok = ok && std::abs(planted - 0.8) <= 0.02;
    d += fmt(" planted=%.4f", planted);

    // full-scale fit on N in {6, 8, 10}: crossings along the tau1 = 5pi/28
    // transect converge on the diagonal critical line tau0 = tau1 from below
    const double tau1_cut = 5 * M_PI / 28;
    std::vector<double> samples;
    for (int k = 8; k <= 28; ++k) samples.push_back(k * M_PI / 112);
    std::vector<std::pair<int, double>> pts;
    for (int n : {6, 8, 10})
      pts.emplace_back(n, tau0_crossing(chain(n, 0, 1, 0, 0), tau1_cut,
                                        samples, 4000, 0.03));
    const double inv_nu = finite_size_exponent(pts, tau1_cut, nullptr);
    ok = ok && inv_nu >= 0.60 && inv_nu <= 1.05;
    d += fmt(" 1/nu=%.4f (t0c:", inv_nu);
    for (auto& [n, t] : pts) d += fmt(" %d:%.4f", n, t);
    d += ")";
    return std::make_pair(ok, d);
  });

  // 11. magnonic diode identities and monotone rectification.
  run(11, [] {
    QidParams p;
    bool ok = true;
    std::string d;
    p.d = 0;
    const double r0 = rectification(p);
    ok = ok && r0 == 1.0;
    d += fmt("R(0)=%.17g", r0);
    double prev = 1.0 + 1e-12;
    for (double dv : {0.0, 0.5, 1.0, 2.0, 3.0}) {
      QidParams q;
      q.d = dv;
      const double r = rectification(q);
      ok = ok && r <= prev;
      prev = r;
      d += fmt(" R(%.1f)=%.4f", dv, r);
    }
    QidParams q;
    const auto [cl0, cr0] = otoc_left_right(q, 0.0);
    ok = ok && std::abs(cl0) <= 1e-10;
    d += fmt(" C_L(0)=%.1e", cl0);
    for (int m0 : {1, 10, 100}) {
      const auto wv = wave_vectors(q, m0);
      const double resid =
          std::abs(omega_s(q, +1, wv.k_plus) - omega_s(q, -1, wv.k_minus));
      ok = ok && resid <= 1e-6;
      (void)cr0;
    }
    double prod_gap = 0;
    for (double t : {0.0, 1.0, 7.5}) {
      const double l = omega_product(q, q.d, t, true);
      const double r = omega_product(q, -q.d, t, false);
      prod_gap = std::max(prod_gap, std::abs(l - r));
    }
    ok = ok && prod_gap <= 1e-12 * q.n_modes * q.n_modes;
    d += fmt(" product gap=%.1e", prod_gap);
    return std::make_pair(ok, d);
  });

  // 12. CLI determinism: identical seed => byte-identical CSV.
  run(12, [&cli] {
    if (cli.empty())
      return std::make_pair(false, std::string("no CLI path given"));
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "otoc_acceptance";
    fs::remove_all(base);
    bool ok = true;
    std::string d;
    const std::string cmds[] = {
        " otoc-random --n 6 --hx 4 --hz 4 --tau0 pi/18 --tau1 pi/18"
        " --kicks 10 --realizations 4 --seed 99 --jobs 2",
        " jw-analytic --n 8 --tau0 pi/28 --tau1 pi/28 --l 4 --m 4 --kicks 30"};
    const std::string files[] = {"otoc-random.csv", "jw-analytic.csv"};
    for (int k = 0; k < 2; ++k) {
      const fs::path d1 = base / ("a" + std::to_string(k));
      const fs::path d2 = base / ("b" + std::to_string(k));
      const std::string c1 = cli + cmds[k] + " --out-dir " + d1.string();
      const std::string c2 = cli + cmds[k] + " --out-dir " + d2.string();
      if (std::system(c1.c_str()) != 0 || std::system(c2.c_str()) != 0) {
        ok = false;
        d += " run-failed";
        continue;
      }
      const std::string s1 = slurp((d1 / files[k]).string());
      const std::string s2 = slurp((d2 / files[k]).string());
      if (s1.empty() || s1 != s2) {
        ok = false;
        d += " mismatch:" + files[k];
      } else {
        d += " " + files[k] + "=identical(" + std::to_string(s1.size()) + "B)";
      }
    }
    fs::remove_all(base);
    return std::make_pair(ok, d);
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
