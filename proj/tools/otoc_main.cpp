#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "otoc/floquet.hpp"
#include "otoc/io.hpp"
#include "otoc/jw.hpp"
#include "otoc/otoc.hpp"
#include "otoc/phase_scan.hpp"
#include "otoc/qid.hpp"
#include "otoc/spectral.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using json = nlohmann::json;
using namespace otoc;

struct Common {
  std::string out_dir = ".";
  std::string format = "csv";
  std::uint64_t seed = 0;
  int jobs = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out-dir", c.out_dir, "output directory");
  cmd->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", c.seed, "RNG seed");
  cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
}

json angle_json(const std::string& text) {
  return json{{"text", text}, {"value", parse_angle(text)}};
}

void emit(const Common& c, const std::string& name, const Csv& csv,
          json params) {
  std::filesystem::create_directories(c.out_dir);
  const auto base = std::filesystem::path(c.out_dir) / name;
  if (c.format == "csv") {
    csv.write((base.string() + ".csv"));
  } else {
    json rows = json::array();
    for (const auto& r : csv.rows) {
      json row;
      for (size_t i = 0; i < csv.header.size(); ++i) row[csv.header[i]] = r[i];
      rows.push_back(row);
    }
    std::ofstream f(base.string() + ".json", std::ios::binary);
    f << rows.dump(2) << "\n";
  }
  json manifest{{"command", name},
                {"version", kVersion},
                {"seed", c.seed},
                {"jobs", c.jobs},
                {"format", c.format},
                {"out_dir", c.out_dir},
                {"params", std::move(params)}};
  std::ofstream mf((std::filesystem::path(c.out_dir) / (name + ".manifest.json"))
                       .string(),
                   std::ios::binary);
  mf << manifest.dump(2) << "\n";
}

struct ChainFlags {
  int n = 8;
  std::string tau0 = "0", tau1 = "0";
  double jx = 1, hx = 0, hz = 1;
  std::string boundary = "closed";
  int kicks = 100;

  void add(CLI::App* cmd) {
    cmd->add_option("--n", n, "chain length");
    cmd->add_option("--tau0", tau0, "z-kick period (decimal or pi literal)");
    cmd->add_option("--tau1", tau1, "x-kick period (decimal or pi literal)");
    cmd->add_option("--jx", jx, "Ising coupling");
    cmd->add_option("--hx", hx, "longitudinal field");
    cmd->add_option("--hz", hz, "transverse field");
    cmd->add_option("--boundary", boundary, "open or closed")
        ->check(CLI::IsMember({"open", "closed"}));
    cmd->add_option("--kicks", kicks, "number of Floquet periods")
        ->check(CLI::PositiveNumber);
  }
  SpinChainSpec spec() const {
    SpinChainSpec s;
    s.n_sites = n;
    s.tau0 = parse_angle(tau0);
    s.tau1 = parse_angle(tau1);
    s.j_x = jx;
    s.h_x = hx;
    s.h_z = hz;
    s.boundary = boundary == "open" ? Boundary::open : Boundary::closed;
    return s;
  }
  json to_json() const {
    return json{{"n", n},           {"tau0", angle_json(tau0)},
                {"tau1", angle_json(tau1)}, {"jx", jx},
                {"hx", hx},         {"hz", hz},
                {"boundary", boundary},     {"kicks", kicks}};
  }
};

int run(int argc, char** argv) {
  CLI::App app{"kicked Ising chain OTOC toolkit"};
  app.require_subcommand(1);

  // otoc-single
  auto* single = app.add_subcommand("otoc-single", "single-site OTOC by ED");
  Common c_single;
  ChainFlags f_single;
  std::string axis = "z";
  int l = 1, m = 1;
  add_common(single, c_single);
  f_single.add(single);
  single->add_option("--axis", axis, "z or x")->check(CLI::IsMember({"z", "x"}));
  single->add_option("--l", l, "first site (1-based)");
  single->add_option("--m", m, "second site (1-based)");

  // otoc-block
  auto* block = app.add_subcommand("otoc-block", "spin-block OTOC");
  Common c_block;
  ChainFlags f_block;
  std::string trace_mode = "exact";
  int haar_states = 3;
  add_common(block, c_block);
  f_block.add(block);
  block->add_option("--trace-mode", trace_mode, "exact or haar")
      ->check(CLI::IsMember({"exact", "haar"}));
  block->add_option("--haar-states", haar_states, "states for haar estimation");

  // otoc-random
  auto* random = app.add_subcommand("otoc-random", "random-block (GUE) OTOC");
  Common c_random;
  ChainFlags f_random;
  int realizations = 10;
  add_common(random, c_random);
  f_random.add(random);
  random->add_option("--realizations", realizations, "ensemble size")
      ->check(CLI::PositiveNumber);

  // jw-analytic
  auto* jw = app.add_subcommand("jw-analytic", "free-fermion TMOTOC");
  Common c_jw;
  ChainFlags f_jw;
  int jl = 1, jm = 1;
  add_common(jw, c_jw);
  f_jw.add(jw);
  jw->add_option("--l", jl, "first site (1-based)");
  jw->add_option("--m", jm, "second site (1-based)");

  // nnsd
  auto* nnsd = app.add_subcommand("nnsd", "quasi-energy spacing statistics");
  Common c_nnsd;
  ChainFlags f_nnsd;
  f_nnsd.boundary = "open";
  std::string sector = "even";
  int poly_degree = 6;
  add_common(nnsd, c_nnsd);
  f_nnsd.add(nnsd);
  nnsd->add_option("--sector", sector, "even or odd")
      ->check(CLI::IsMember({"even", "odd"}));
  nnsd->add_option("--poly-degree", poly_degree, "unfolding polynomial degree");

  // phase-scan
  auto* phase = app.add_subcommand("phase-scan", "tau0-tau1 order parameter grid");
  Common c_phase;
  ChainFlags f_phase;
  int grid_steps = 14, t_horizon = 1000;
  add_common(phase, c_phase);
  f_phase.add(phase);
  phase->add_option("--grid-steps", grid_steps, "samples per axis, step pi/28");
  phase->add_option("--t-horizon", t_horizon, "kicks in the long-time average");

  // qid-otoc
  auto* qotoc = app.add_subcommand("qid-otoc", "magnonic diode OTOC traces");
  Common c_qotoc;
  QidParams qp;
  int time_points = 2000;
  add_common(qotoc, c_qotoc);
  qotoc->add_option("--d", qp.d, "DMI strength");
  qotoc->add_option("--j1", qp.j1, "nearest-neighbor coupling");
  qotoc->add_option("--j2", qp.j2, "next-nearest coupling");
  qotoc->add_option("--modes", qp.n_modes, "Bragg modes");
  qotoc->add_option("--t-max", qp.t_max, "time horizon (auto if negative)");
  qotoc->add_option("--time-points", time_points, "samples");

  // qid-rect
  auto* qrect = app.add_subcommand("qid-rect", "rectification sweep over DMI");
  Common c_qrect;
  QidParams qr;
  std::string d_sweep = "0:3:0.25";
  int rect_points = 20000;
  add_common(qrect, c_qrect);
  qrect->add_option("--d-sweep", d_sweep, "start:stop:step DMI sweep");
  qrect->add_option("--j1", qr.j1, "nearest-neighbor coupling");
  qrect->add_option("--j2", qr.j2, "next-nearest coupling");
  qrect->add_option("--modes", qr.n_modes, "Bragg modes");
  qrect->add_option("--time-points", rect_points, "integration samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  if (single->parsed()) {
    ObservablePair pair;
    pair.kind = axis == "z" ? PairKind::single_site_z : PairKind::single_site_x;
    pair.l = l;
    pair.m = m;
    auto series = otoc_single_site(f_single.spec(), pair, f_single.kicks);
    json p = f_single.to_json();
    p["axis"] = axis;
    p["l"] = l;
    p["m"] = m;
    p["trace_mode"] = "polarized_state";
    emit(c_single, "otoc-single", series_csv(series), std::move(p));
  } else if (block->parsed()) {
    const auto mode = trace_mode == "exact" ? TraceMode::exact_trace
                                            : TraceMode::haar_estimate;
    auto series = otoc_block(f_block.spec(), f_block.kicks, mode, haar_states,
                             c_block.seed);
    json p = f_block.to_json();
    p["trace_mode"] = trace_mode;
    p["haar_states"] = haar_states;
    emit(c_block, "otoc-block", series_csv(series), std::move(p));
  } else if (random->parsed()) {
    std::vector<double> spread;
    auto series = otoc_random_observables(f_random.spec(), f_random.kicks,
                                          realizations, c_random.seed,
                                          c_random.jobs, &spread);
    Csv csv = series_csv(series);
    csv.header.push_back("spread");
    for (size_t i = 0; i < csv.rows.size(); ++i)
      csv.rows[i].push_back(format_number(spread[i]));
    json p = f_random.to_json();
    p["realizations"] = realizations;
    p["trace_mode"] = "exact_trace";
    emit(c_random, "otoc-random", csv, std::move(p));
  } else if (jw->parsed()) {
    const auto spec = f_jw.spec();
    auto series =
        jw_series(f_jw.n, spec.tau0, spec.tau1, jl, jm, f_jw.kicks);
    json p = f_jw.to_json();
    p["l"] = jl;
    p["m"] = jm;
    p["trace_mode"] = "jw_analytic";
    emit(c_jw, "jw-analytic", series_csv(series), std::move(p));
  } else if (nnsd->parsed()) {
    const FloquetMap map(f_nnsd.spec());
    auto set = quasi_energies(map, sector == "even");
    json report{{"sector", sector},
                {"degenerate", set.degenerate},
                {"levels", set.quasi_energies.size()}};
    Csv csv;
    csv.header = {"unfolded_spacing"};
    if (!set.degenerate) {
      unfold_and_score(set, poly_degree);
      for (double s : set.unfolded_spacings) csv.rows.push_back({format_number(s)});
      report["ks_wigner"] = set.ks_wigner;
      report["ks_poisson"] = set.ks_poisson;
    }
    report["verdict"] = set.verdict;
    json p = f_nnsd.to_json();
    p["sector"] = sector;
    p["poly_degree"] = poly_degree;
    p["report"] = report;
    emit(c_nnsd, "nnsd", csv, std::move(p));
  } else if (phase->parsed()) {
    std::vector<double> taus;
    for (int k = 0; k < grid_steps; ++k) taus.push_back(k * M_PI / 28);
    auto grid =
        scan(f_phase.spec(), taus, taus, t_horizon, c_phase.jobs);
    Csv csv;
    csv.header = {"tau0", "tau1", "order_parameter"};
    for (int r = 0; r < grid.order_parameter.rows(); ++r)
      for (int cc = 0; cc < grid.order_parameter.cols(); ++cc)
        csv.rows.push_back({format_number(taus[r]), format_number(taus[cc]),
                            format_number(grid.order_parameter(r, cc))});
    json p = f_phase.to_json();
    p["grid_steps"] = grid_steps;
    p["t_horizon"] = t_horizon;
    emit(c_phase, "phase-scan", csv, std::move(p));
  } else if (qotoc->parsed()) {
    qp.validate();
    const double tmax = qp.t_max > 0 ? qp.t_max : default_t_max(qp);
    Csv csv;
    csv.header = {"t", "c_left", "c_right"};
    for (int i = 0; i < time_points; ++i) {
      const double t = tmax * i / (time_points - 1);
      const auto [cl, cr] = otoc_left_right(qp, t);
      csv.rows.push_back(
          {format_number(t), format_number(cl), format_number(cr)});
    }
    json p{{"d", qp.d},       {"j1", qp.j1},
           {"j2", qp.j2},     {"modes", qp.n_modes},
           {"t_max", tmax},   {"time_points", time_points}};
    emit(c_qotoc, "qid-otoc", csv, std::move(p));
  } else if (qrect->parsed()) {
    double lo = 0, hi = 0, step = 0;
    if (std::sscanf(d_sweep.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
        step <= 0)
      throw ConfigError("qid-rect: --d-sweep expects start:stop:step");
    Csv csv;
    csv.header = {"d", "r"};
    for (double d = lo; d <= hi + 1e-12; d += step) {
      QidParams p = qr;
      p.d = d;
      csv.rows.push_back({format_number(d), format_number(rectification(p, rect_points))});
    }
    json p{{"d_sweep", d_sweep}, {"j1", qr.j1},
           {"j2", qr.j2},        {"modes", qr.n_modes},
           {"time_points", rect_points}};
    emit(c_qrect, "qid-rect", csv, std::move(p));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "{\"error\":\"config\",\"message\":\"" << e.what() << "\"}\n";
    return 2;
  } catch (const ContractError& e) {
    std::cerr << "{\"error\":\"contract\",\"message\":\"" << e.what() << "\"}\n";
    return 3;
  } catch (const CLI::Error&) {
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "{\"error\":\"internal\",\"message\":\"" << e.what() << "\"}\n";
    return 3;
  }
}
