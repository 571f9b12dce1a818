// gaplab: spectra, integrated density of states, gap detection and
// Schwartzman gap labels for dynamically defined Jacobi matrices.
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gaplab/cocycle.hpp"
#include "gaplab/ids.hpp"
#include "gaplab/io.hpp"
#include "gaplab/labelling.hpp"
#include "gaplab/parallel.hpp"

using namespace gaplab;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "gaplab 0.1.0";

struct EGrid {
  double lo = -3.0;
  double hi = 3.0;
  int count = 200;

  std::vector<double> points() const {
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
      out[i] = lo + (hi - lo) * i / std::max(1, count - 1);
    return out;
  }
};

struct Config {
  SystemSpec system = SystemSpec::rotation(0.6180339887498949);
  SamplingFn p = SamplingFn::identity(TrigPoly::constant(1, 1.0));
  SamplingFn q = SamplingFn::identity(TrigPoly::constant(1, 0.0));
  int N = 1000;
  int samples = 4;
  std::uint64_t seed = 1;
  double delta = 0.01;
  double min_width = 0.05;
  double label_tol = 0.0;  // 0: derive from N
  int coeff_bound = 0;     // 0: derive from kernel rank
  EGrid grid;
  std::string out_dir = "gaplab-out";

  double resolved_label_tol() const {
    return label_tol > 0.0 ? label_tol : std::max(5e-3, 10.0 / N);
  }

  Json echo() const {
    Json j;
    j["system"] = to_json(system);
    j["p"] = to_json(p);
    j["q"] = to_json(q);
    j["N"] = N;
    j["samples"] = samples;
    j["seed"] = seed;
    j["delta"] = delta;
    j["min_width"] = min_width;
    j["label_tol"] = resolved_label_tol();
    j["coeff_bound"] = coeff_bound;
    j["E_grid"] = {{"lo", grid.lo}, {"hi", grid.hi}, {"count", grid.count}};
    j["out"] = out_dir;
    return j;
  }
};

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

void load_config_file(Config& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  auto fail = [&](const char* ptr, const std::string& what) {
    throw ConfigError(std::string(ptr) + ": " + what);
  };
  try {
    if (j.contains("system")) cfg.system = system_from_json(j["system"]);
  } catch (const std::exception& e) {
    fail("/system", e.what());
  }
  try {
    if (j.contains("p")) cfg.p = samplingfn_from_json(j["p"]);
  } catch (const std::exception& e) {
    fail("/p", e.what());
  }
  try {
    if (j.contains("q")) cfg.q = samplingfn_from_json(j["q"]);
  } catch (const std::exception& e) {
    fail("/q", e.what());
  }
  if (j.contains("N")) cfg.N = j["N"].get<int>();
  if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("delta")) cfg.delta = j["delta"].get<double>();
  if (j.contains("min_width")) cfg.min_width = j["min_width"].get<double>();
  if (j.contains("label_tol")) cfg.label_tol = j["label_tol"].get<double>();
  if (j.contains("M")) cfg.coeff_bound = j["M"].get<int>();
  if (j.contains("E_grid")) {
    const Json& g = j["E_grid"];
    if (g.contains("lo")) cfg.grid.lo = g["lo"].get<double>();
    if (g.contains("hi")) cfg.grid.hi = g["hi"].get<double>();
    if (g.contains("count")) cfg.grid.count = g["count"].get<int>();
  }
  if (cfg.N < 1) fail("/N", "must be >= 1");
  if (cfg.samples < 1) fail("/samples", "must be >= 1");
  if (cfg.grid.count < 2) fail("/E_grid/count", "must be >= 2");
}

void parse_egrid_flag(Config& cfg, const std::string& s) {
  const auto c1 = s.find(':');
  const auto c2 = s.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw ConfigError("--E-grid expects lo:hi:count");
  cfg.grid.lo = std::stod(s.substr(0, c1));
  cfg.grid.hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
  cfg.grid.count = std::stoi(s.substr(c2 + 1));
  if (cfg.grid.count < 2) throw ConfigError("--E-grid count must be >= 2");
}

void emit_report(const Config& cfg, const std::string& command, Json results,
                 double seconds) {
  fs::create_directories(cfg.out_dir);
  Json rep;
  rep["version"] = kVersion;
  rep["command"] = command;
  rep["config"] = cfg.echo();
  rep["results"] = std::move(results);
  rep["seconds"] = seconds;
  write_file(cfg.out_dir + "/report.json", rep.dump(2) + "\n");
}

LabelGroup label_group_for(const Config& cfg) {
  auto group = LabelGroup::for_system(cfg.system);
  if (cfg.coeff_bound > 0)
    group.coeff_bound = cfg.coeff_bound;
  else
    group.coeff_bound = (group.rank() >= 2) ? 30 : 100;
  return group;
}

bool is_free_model(const Config& cfg) {
  const auto pval = cfg.p.base.terms;
  const auto qnorm = cfg.q.base.coeff_norm();
  return cfg.p.post == PostMap::Identity && cfg.q.post == PostMap::Identity &&
         qnorm == 0.0 && pval.size() == 1 &&
         pval.begin()->first == std::vector<int>(cfg.p.base.dim, 0) &&
         pval.begin()->second == Complex{1.0, 0.0};
}

double free_ids(double E) {
  if (E <= -2.0) return 0.0;
  if (E >= 2.0) return 1.0;
  return 1.0 - std::acos(E / 2.0) / M_PI;
}

int cmd_spectrum(const Config& cfg) {
  Timer t;
  const auto dos = dos_estimate(cfg.system, cfg.p, cfg.q, cfg.seed,
                                cfg.samples, cfg.N);
  const auto bands = spectrum_approx(dos, cfg.delta);
  fs::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/dos.csv", dos_csv(dos));
  Json jb = Json::array();
  for (const auto& [lo, hi] : bands) jb.push_back({lo, hi});
  emit_report(cfg, "spectrum", Json{{"bands", jb}}, t.seconds());
  std::cout << "spectrum: " << bands.size() << " band(s)\n";
  return 0;
}

int cmd_ids(const Config& cfg) {
  Timer t;
  const auto dos = dos_estimate(cfg.system, cfg.p, cfg.q, cfg.seed,
                                cfg.samples, cfg.N);
  const auto grid = cfg.grid.points();
  std::vector<double> k(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) k[i] = ids_eval(dos, grid[i]);
  fs::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/ids.csv", curve_csv("E", "k", grid, k));
  write_file(cfg.out_dir + "/ids.svg",
             svg_line_plot("integrated density of states", grid, k));
  Json results;
  if (is_free_model(cfg)) {
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      sup = std::max(sup, std::abs(k[i] - free_ids(grid[i])));
    results["free_closed_form_sup_error"] = sup;
    std::cout << "ids: sup error vs closed form " << sup << "\n";
  }
  emit_report(cfg, "ids", std::move(results), t.seconds());
  return 0;
}

std::vector<Gap> stable_gaps(const Config& cfg, DosEstimate* dos_out = nullptr) {
  const auto dos = dos_estimate(cfg.system, cfg.p, cfg.q, cfg.seed,
                                cfg.samples, cfg.N);
  const auto doubled = dos_estimate(cfg.system, cfg.p, cfg.q, cfg.seed,
                                    cfg.samples, 2 * cfg.N);
  if (dos_out != nullptr) *dos_out = dos;
  return detect_gaps(dos, cfg.delta, cfg.min_width, &doubled);
}

int cmd_gaps(const Config& cfg) {
  Timer t;
  const auto gaps = stable_gaps(cfg);
  Json jg = Json::array();
  for (const Gap& g : gaps) jg.push_back(to_json(g));
  fs::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/gaps.json", jg.dump(2) + "\n");
  emit_report(cfg, "gaps", Json{{"gaps", jg}}, t.seconds());
  std::cout << "gaps: " << gaps.size() << " stable gap(s)\n";
  return 0;
}

int cmd_labels(const Config& cfg) {
  Timer t;
  const auto gaps = stable_gaps(cfg);
  const auto group = label_group_for(cfg);
  const auto summary = verify_gap_labels(gaps, group, cfg.resolved_label_tol());
  Json jr = Json::array();
  std::string csv = "lo,hi,width,label,n,residual,matched\n";
  for (const auto& rep : summary.reports) {
    jr.push_back(to_json(rep));
    csv += std::to_string(rep.gap.lo) + "," + std::to_string(rep.gap.hi) +
           "," + std::to_string(rep.gap.width()) + "," +
           std::to_string(rep.gap.label) + "," + std::to_string(rep.match.n) +
           "," + std::to_string(rep.match.residual) + "," +
           (rep.match.matched ? "1" : "0") + "\n";
  }
  fs::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/labels.json", jr.dump(2) + "\n");
  write_file(cfg.out_dir + "/labels.csv", csv);
  emit_report(cfg, "labels",
              Json{{"matched", summary.matched},
                   {"unmatched", summary.unmatched},
                   {"reports", jr}},
              t.seconds());
  std::cout << "labels: " << summary.matched << " matched, "
            << summary.unmatched << " unmatched\n";
  return 0;
}

int cmd_rotation(const Config& cfg) {
  Timer t;
  const auto omega = sample_points(cfg.system, cfg.seed, 1)[0];
  const auto grid = cfg.grid.points();
  const long long t_max = std::max(1000, cfg.N);
  std::vector<double> rot(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    rot[i] = rotation_number(grid[i], cfg.system, cfg.p, cfg.q, omega, t_max);
  });
  fs::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/rotation.csv",
             curve_csv("E", "rotation", grid, rot));
  write_file(cfg.out_dir + "/rotation.svg",
             svg_line_plot("rotation number", grid, rot));
  emit_report(cfg, "rotation", Json{{"t_max", t_max}}, t.seconds());
  return 0;
}

int cmd_ds_sweep(const Config& cfg) {
  Timer t;
  const auto grid = cfg.grid.points();
  DsParams params;
  params.seed = cfg.seed;
  std::vector<std::string> verdicts(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    try {
      const auto v = dominated_splitting_test(grid[i], cfg.system, cfg.p,
                                              cfg.q, params);
      verdicts[i] = (v.status == DsStatus::Dominated)     ? "dominated"
                    : (v.status == DsStatus::NotDominated) ? "not_dominated"
                                                           : "inconclusive";
    } catch (const SingularCocycle&) {
      verdicts[i] = "singular";
    }
  });
  std::string csv = "E,verdict\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    csv += std::to_string(grid[i]) + "," + verdicts[i] + "\n";
  fs::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/ds_sweep.csv", csv);
  emit_report(cfg, "ds-sweep", Json{}, t.seconds());
  return 0;
}

// --- verification subcommands (acceptance entry points) ---

JacobiBlock random_positive_block(std::mt19937_64& rng, int max_m) {
  std::uniform_int_distribution<int> msize(2, max_m);
  std::uniform_real_distribution<double> bdist(-2.0, 2.0);
  std::uniform_real_distribution<double> adist(1e-3, 2.0);
  const int m = msize(rng);
  std::vector<double> diag(m);
  std::vector<Complex> off(m - 1);
  for (double& d : diag) d = bdist(rng);
  for (auto& a : off) a = {adist(rng), 0.0};
  auto blk = make_block(std::move(diag), std::move(off));
  blk.gauge_reduced = true;
  return blk;
}

int cmd_verify_oscillation(const Config& cfg, int cases) {
  Timer t;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> edist(-5.0, 5.0);
  int pass = 0;
  Json lines = Json::array();
  for (int it = 0; it < cases;) {
    const auto blk = random_positive_block(rng, 12);
    const double E = edist(rng);
    const auto eigs = eigenvalues(blk, 1e-12);
    bool near = false;
    for (double v : eigs.values)
      if (std::abs(v - E) < 1e-6) near = true;
    if (near) continue;
    const auto rep = verify_oscillation(blk, E);
    if (rep.equal) ++pass;
    lines.push_back(Json{{"m", blk.size()},
                         {"E", E},
                         {"F", rep.zeros},
                         {"eig_above", rep.eigencount_above},
                         {"equal", rep.equal}});
    ++it;
  }
  fs::create_directories(cfg.out_dir);
  std::string jsonl;
  for (const auto& l : lines) jsonl += l.dump() + "\n";
  write_file(cfg.out_dir + "/oscillation.jsonl", jsonl);
  emit_report(cfg, "verify-oscillation",
              Json{{"cases", cases}, {"pass", pass}}, t.seconds());
  std::cout << "verify-oscillation: " << pass << "/" << cases << " exact\n";
  return pass == cases ? 0 : 1;
}

int cmd_verify_gauge(const Config& cfg, int cases) {
  Timer t;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> cdist(-1.5, 1.5);
  const int N = 50;
  int pass = 0;
  for (int it = 0; it < cases; ++it) {
    std::vector<double> diag(N);
    std::vector<Complex> off(N - 1);
    for (double& d : diag) d = cdist(rng);
    for (auto& a : off) a = {cdist(rng), cdist(rng)};
    auto blk = make_block(diag, off);
    auto abs_blk = blk;
    for (auto& a : abs_blk.offdiag) a = {std::abs(a), 0.0};
    abs_blk.gauge_reduced = true;
    const auto e1 = eigenvalues(gauge_reduce(blk), 1e-11);
    const auto e2 = eigenvalues(abs_blk, 1e-11);
    double err = 0.0;
    for (int i = 0; i < N; ++i)
      err = std::max(err, std::abs(e1.values[i] - e2.values[i]));
    if (err < 1e-9) ++pass;
  }
  emit_report(cfg, "verify-gauge", Json{{"cases", cases}, {"pass", pass}},
              t.seconds());
  std::cout << "verify-gauge: " << pass << "/" << cases << "\n";
  return pass == cases ? 0 : 1;
}

int cmd_verify_blocks(const Config& cfg) {
  Timer t;
  // Clamped off-diagonal over the configured (invertible) system.
  const auto omega = sample_points(cfg.system, cfg.seed, 1)[0];
  const long long window = std::max(1000, cfg.N);
  const auto coeffs =
      coefficients(cfg.system, cfg.p, cfg.q, omega, Window{0, window});
  const auto dec = split_blocks(coeffs);
  std::mt19937_64 rng(cfg.seed + 1);
  std::uniform_real_distribution<double> edist(cfg.grid.lo, cfg.grid.hi);
  int pass = 0;
  const int cases = 500;
  for (int it = 0; it < cases;) {
    const auto& blk = dec.blocks[rng() % dec.blocks.size()];
    const double E = edist(rng);
    int flips;
    try {
      flips = block_sign_flips(blk, E);
    } catch (const EnergyTooCloseToBlockSpectrum&) {
      continue;
    }
    const int above =
        static_cast<int>(blk.size()) - sturm_count(blk, E);
    if (flips == above) ++pass;
    ++it;
  }
  emit_report(cfg, "verify-blocks", Json{{"cases", cases}, {"pass", pass}},
              t.seconds());
  std::cout << "verify-blocks: " << pass << "/" << cases << " exact\n";
  return pass == cases ? 0 : 1;
}

int cmd_verify_solenoid(const Config& cfg) {
  Timer t;
  const auto sol = SystemSpec::solenoid(0.25);
  const auto dbl = SystemSpec::doubling(2);
  const auto pts = sample_points(sol, cfg.seed, 4);
  bool coincide = true;
  for (const auto& pt : pts) {
    const auto cs = coefficients(sol, cfg.p, cfg.q, pt, Window{0, 1000});
    const auto cd = coefficients(dbl, cfg.p, cfg.q,
                                 PhasePoint{{pt.torus[0]}}, Window{0, 1000});
    for (long long n = 0; n <= 1000; ++n)
      if (cs.a_at(n) != cd.a_at(n) || cs.b_at(n) != cd.b_at(n))
        coincide = false;
  }
  const auto dos_s = dos_estimate(sol, cfg.p, cfg.q, cfg.seed, cfg.samples,
                                  std::min(cfg.N, 500));
  const auto dos_d = dos_estimate(dbl, cfg.p, cfg.q, cfg.seed, cfg.samples,
                                  std::min(cfg.N, 500));
  const bool byte_equal = dos_csv(dos_s) == dos_csv(dos_d);
  emit_report(cfg, "verify-solenoid",
              Json{{"coefficients_exact", coincide},
                   {"dos_byte_equal", byte_equal}},
              t.seconds());
  std::cout << "verify-solenoid: coefficients "
            << (coincide ? "exact" : "DIFFER") << ", dos "
            << (byte_equal ? "byte-equal" : "DIFFER") << "\n";
  return (coincide && byte_equal) ? 0 : 1;
}

int cmd_report(const Config& cfg) {
  Timer t;
  DosEstimate dos;
  const auto gaps = stable_gaps(cfg, &dos);
  const auto grid = cfg.grid.points();
  std::vector<double> k(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) k[i] = ids_eval(dos, grid[i]);
  fs::create_directories(cfg.out_dir);
  write_file(cfg.out_dir + "/dos.csv", dos_csv(dos));
  write_file(cfg.out_dir + "/ids.csv", curve_csv("E", "k", grid, k));
  write_file(cfg.out_dir + "/ids.svg",
             svg_line_plot("integrated density of states", grid, k));
  Json results;
  Json jg = Json::array();
  for (const Gap& g : gaps) jg.push_back(to_json(g));
  results["gaps"] = jg;
  if (cfg.system.kind == SystemKind::AffineTorus) {
    const auto group = label_group_for(cfg);
    const auto summary =
        verify_gap_labels(gaps, group, cfg.resolved_label_tol());
    Json jr = Json::array();
    for (const auto& rep : summary.reports) jr.push_back(to_json(rep));
    results["labels"] = jr;
    results["matched"] = summary.matched;
    results["unmatched"] = summary.unmatched;
    if (group.rank() == 0) {
      const auto verdict = connectedness_verdict(gaps, group, cfg.min_width);
      results["connected"] = verdict.connected;
      results["connectedness_note"] =
          "no gap detected at this resolution (N, delta, min_width); "
          "a consistency check, not a proof";
    }
  } else if (cfg.system.kind == SystemKind::Doubling) {
    // Integer labels hold for nonvanishing p; with zeros the theory is open.
    bool p_vanishes = cfg.p.post == PostMap::ClampBelow;
    if (!p_vanishes) {
      LabelGroup trivial;
      const auto verdict =
          connectedness_verdict(gaps, trivial, cfg.min_width, true);
      results["connected"] = verdict.connected;
    } else {
      results["connectedness_note"] =
          "p takes the value zero: integer-label theory open; "
          "observed labels reported without a verdict";
    }
  }
  write_file(cfg.out_dir + "/gaps.json", results["gaps"].dump(2) + "\n");
  emit_report(cfg, "report", std::move(results), t.seconds());
  std::cout << "report: " << gaps.size() << " stable gap(s), artifacts in "
            << cfg.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kVersion) +
               " - gap labelling for ergodic Jacobi matrices"};
  app.require_subcommand(1);

  Config cfg;
  std::string config_path;
  std::string egrid_flag;
  int opt_N = 0, opt_samples = 0, opt_cases = 200;
  std::uint64_t opt_seed = 0;
  bool seed_set = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "JSON experiment config");
    sub->add_option("--N", opt_N, "truncation size override");
    sub->add_option("--samples", opt_samples, "sample count override");
    sub->add_option("--seed", opt_seed, "seed override")
        ->each([&](const std::string&) { seed_set = true; });
    sub->add_option("--E-grid", egrid_flag, "energy grid lo:hi:count");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--delta", cfg.delta, "spectrum resolution");
    sub->add_option("--min-width", cfg.min_width, "minimum reported gap width");
    sub->add_option("--label-tol", cfg.label_tol, "label match tolerance");
    sub->add_option("--M", cfg.coeff_bound, "label coefficient box bound");
  };

  auto* spectrum = app.add_subcommand("spectrum", "approximate the spectrum");
  auto* ids = app.add_subcommand("ids", "IDS curve over an energy grid");
  auto* gaps = app.add_subcommand("gaps", "detect stable spectral gaps");
  auto* labels = app.add_subcommand("labels", "match gap labels");
  auto* rotation = app.add_subcommand("rotation", "rotation number sweep");
  auto* ds = app.add_subcommand("ds-sweep", "dominated splitting sweep");
  auto* vosc = app.add_subcommand("verify-oscillation",
                                  "oscillation theorem spot checks");
  auto* vgauge = app.add_subcommand("verify-gauge", "gauge invariance checks");
  auto* vblocks =
      app.add_subcommand("verify-blocks", "singular block identity checks");
  auto* vsol = app.add_subcommand("verify-solenoid",
                                  "doubling/solenoid coincidence checks");
  auto* report = app.add_subcommand("report", "full pipeline report");
  for (auto* sub : {spectrum, ids, gaps, labels, rotation, ds, vosc, vgauge,
                    vblocks, vsol, report})
    add_common(sub);
  vosc->add_option("--cases", opt_cases, "number of random instances");
  vgauge->add_option("--cases", opt_cases, "number of random instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; any parse failure is a config error.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) load_config_file(cfg, config_path);
    if (opt_N > 0) cfg.N = opt_N;
    if (opt_samples > 0) cfg.samples = opt_samples;
    if (seed_set) cfg.seed = opt_seed;
    if (!egrid_flag.empty()) parse_egrid_flag(cfg, egrid_flag);

    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (ids->parsed()) return cmd_ids(cfg);
    if (gaps->parsed()) return cmd_gaps(cfg);
    if (labels->parsed()) return cmd_labels(cfg);
    if (rotation->parsed()) return cmd_rotation(cfg);
    if (ds->parsed()) return cmd_ds_sweep(cfg);
    if (vosc->parsed()) return cmd_verify_oscillation(cfg, opt_cases);
    if (vgauge->parsed()) return cmd_verify_gauge(cfg, opt_cases);
    if (vblocks->parsed()) return cmd_verify_blocks(cfg);
    if (vsol->parsed()) return cmd_verify_solenoid(cfg);
    if (report->parsed()) return cmd_report(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
