#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "dmnls/config.hpp"
#include "dmnls/diagnostics.hpp"
#include "dmnls/experiments.hpp"
#include "dmnls/ground_state.hpp"
#include "dmnls/io.hpp"

namespace fs = std::filesystem;
using namespace dmnls;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

struct CommonOpts {
  std::string config_path;
  std::string out_dir = "out";
  std::string cache_path;
  std::uint64_t seed = 1;
  bool quiet = false;
  bool json_out = false;
};

DispersionMap reference_two_step() { return DispersionMap::two_step(2.0, 1.0, 0.5); }

ExperimentSpec default_spec(ExperimentKind kind, std::uint64_t seed) {
  ExperimentSpec s;
  s.kind = kind;
  s.seed = seed;
  switch (kind) {
    case ExperimentKind::strichartz:
      s.map = reference_two_step();
      s.grid = {GridSpec::Kind::torus, 8192, 256.0};
      s.q = 8.0;
      s.r = 4.0;
      s.t_window = 12.0;
      s.ensemble = 50;
      break;
    case ExperimentKind::inhomogeneous:
      s.map = reference_two_step();
      s.grid = {GridSpec::Kind::torus, 4096, 128.0};
      s.q = 8.0;
      s.r = 4.0;
      s.t_window = 8.0;
      s.ensemble = 8;
      break;
    case ExperimentKind::scattering:
      s.map = reference_two_step();
      s.grid = {GridSpec::Kind::torus, 8192, 192.0};
      s.datum = {"gaussian", 0.01, 2.0, 0.0, 0.0};
      s.eta = 0.05;
      s.t_final = 64.0;
      s.checkpoints = 8;
      s.dt_max = 0.02;
      break;
    case ExperimentKind::blowup:
      s.map = DispersionMap::two_step(1.0, 1.0, 0.5);
      s.grid = {GridSpec::Kind::radial, 2048, 12.0};
      s.datum = {"ground_state", 1.2, 1.0, 0.0, 0.0};
      s.dt_max = 2e-5;
      break;
    case ExperimentKind::soliton:
      s.map = DispersionMap::two_step(1.0, 1.0, 0.5);
      s.grid = {GridSpec::Kind::radial, 2048, 16.0};
      s.datum = {"ground_state", 1.0, 1.0, 0.0, 0.0};
      s.t_final = 0.25;
      s.dt_max = 2e-3;
      break;
    case ExperimentKind::partition:
      s.map = reference_two_step();
      s.n_min = -10;
      s.n_max = 10;
      break;
  }
  return s;
}

int verdict_exit_code(const std::string& verdict) {
  if (verdict == "pass" || verdict == "blowup_detected") return kExitPass;
  if (verdict == "inconclusive") return kExitInconclusive;
  return kExitFail;
}

int combine_exit(int a, int b) {
  if (a == kExitFail || b == kExitFail) return kExitFail;
  if (a == kExitInconclusive || b == kExitInconclusive) return kExitInconclusive;
  return std::max(a, b);
}

bool spec_needs_profile(ExperimentKind k) {
  return k == ExperimentKind::blowup || k == ExperimentKind::soliton;
}

void write_artifacts(const ResultReport& report, const fs::path& dir,
                     const std::string& stem) {
  write_report(report, (dir / (stem + "_report.json")).string());
  if (!report.diagnostics.empty()) {
    write_diagnostics_csv(report.diagnostics,
                          (dir / (stem + "_diagnostics.csv")).string());
  }
  if (!report.covers.empty()) {
    write_covers_csv(report.covers, (dir / (stem + "_covers.csv")).string());
  }
  if (report.final_state) {
    write_snapshot(*report.final_state, report.spec.t_final,
                   (dir / (stem + "_final_state.bin")).string());
  }
  export_gamma_csv(report.spec.map, (dir / (stem + "_gamma.csv")).string());
  export_big_gamma_csv(report.spec.map, 3.0,
                       (dir / (stem + "_big_gamma.csv")).string());
}

int run_specs(const std::vector<ExperimentSpec>& specs, const CommonOpts& opts) {
  fs::create_directories(opts.out_dir);
  std::optional<GroundStateProfile> profile;
  for (const ExperimentSpec& s : specs) {
    if (spec_needs_profile(s.kind) && !profile) {
      profile = cached_ground_state(opts.cache_path);
    }
  }

  int exit_code = kExitPass;
  int index = 0;
  for (const ExperimentSpec& s : specs) {
    ResultReport report = run_experiment(s, profile ? &*profile : nullptr);
    std::string stem = to_string(s.kind) +
                       (specs.size() > 1 ? "_" + std::to_string(index) : "");
    write_artifacts(report, opts.out_dir, stem);
    if (opts.json_out) std::cout << report_to_json(report) << "\n";
    if (!opts.quiet) {
      std::cerr << to_string(s.kind) << ": " << report.verdict << " ("
                << report.runtime_seconds << " s)\n";
    }
    exit_code = combine_exit(exit_code, verdict_exit_code(report.verdict));
    ++index;
  }
  return exit_code;
}

std::vector<ExperimentSpec> specs_for_kind(ExperimentKind kind,
                                           const CommonOpts& opts,
                                           std::vector<std::string>& errors) {
  if (opts.config_path.empty()) {
    return {default_spec(kind, opts.seed)};
  }
  ConfigParseResult parsed = parse_config(opts.config_path);
  if (!parsed.ok()) {
    errors = parsed.errors;
    return {};
  }
  std::vector<ExperimentSpec> selected;
  for (const ExperimentSpec& s : parsed.config->experiments) {
    if (s.kind == kind) selected.push_back(s);
  }
  if (selected.empty()) {
    errors.push_back("config has no " + to_string(kind) + " experiment");
  }
  return selected;
}

int run_groundstate(const CommonOpts& opts, double gamma_plus, double tol) {
  fs::create_directories(opts.out_dir);
  GroundStateProfile q = cached_ground_state(opts.cache_path, tol);
  save_profile(q, (fs::path(opts.out_dir) / "groundstate.csv").string());
  auto [res1, res2] = pohozaev_residuals(q);

  GroundStateProfile target =
      gamma_plus == 1.0 ? q : rescale_to_rplus(q, gamma_plus);
  if (gamma_plus != 1.0) {
    save_profile(target, (fs::path(opts.out_dir) / "rplus.csv").string());
  }

  ResultReport report;
  report.spec.kind = ExperimentKind::soliton;  // closest kind; echo only
  report.seed = opts.seed;
  report.measurements.push_back({"peak", q.peak(), 0.0, true});
  report.measurements.push_back({"mass", q.mass(), 0.0, true});
  report.measurements.push_back(
      {"pohozaev_residual_1", std::abs(res1), tol, std::abs(res1) <= tol});
  report.measurements.push_back(
      {"pohozaev_residual_2", std::abs(res2), tol, std::abs(res2) <= tol});
  report.measurements.push_back({"gn_constant", gn_constant(target), 0.0, true});
  report.measurements.push_back(
      {"far_field_deviation", q.far_field_deviation(), 1e-3,
       q.far_field_deviation() <= 1e-3});
  bool ok = std::abs(res1) <= tol && std::abs(res2) <= tol;
  report.verdict = ok ? "pass" : "fail";
  write_report(report, (fs::path(opts.out_dir) / "groundstate_report.json").string());
  if (opts.json_out) std::cout << report_to_json(report) << "\n";
  if (!opts.quiet) {
    std::cerr << "groundstate: " << report.verdict << " peak=" << q.peak()
              << " mass=" << q.mass() << "\n";
  }
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dispersion-managed NLS simulation and verification lab"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonOpts opts;
  app.add_option("--config", opts.config_path, "JSON run configuration");
  app.add_option("--out", opts.out_dir, "output directory");
  app.add_option("--seed", opts.seed, "base random seed");
  app.add_option("--cache", opts.cache_path, "ground-state profile cache file");
  app.add_flag("--quiet", opts.quiet, "suppress progress messages");
  app.add_flag("--json", opts.json_out, "print machine-readable reports on stdout");

  auto* sim = app.add_subcommand("simulate", "run every experiment in a config");
  auto* gs = app.add_subcommand("groundstate", "solve the ground-state profile");
  double gs_gamma_plus = 1.0;
  double gs_tol = 1e-6;
  gs->add_option("--gamma-plus", gs_gamma_plus, "rescale target gamma_+");
  gs->add_option("--tol", gs_tol, "consistency tolerance");
  auto* str = app.add_subcommand("strichartz", "linear space-time bound audit");
  auto* blw = app.add_subcommand("blowup", "rescaled virial blowup run");
  auto* sct = app.add_subcommand("scattering", "small-data scattering run");
  auto* par = app.add_subcommand("partition", "covering-number sweep");
  auto* sol = app.add_subcommand("soliton", "stationary-profile regression");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (sim->parsed()) {
      if (opts.config_path.empty()) {
        std::cerr << "simulate requires --config\n";
        return kExitUsage;
      }
      ConfigParseResult parsed = parse_config(opts.config_path);
      if (!parsed.ok()) {
        for (const std::string& e : parsed.errors) std::cerr << e << "\n";
        return kExitUsage;
      }
      CommonOpts merged = opts;
      if (merged.cache_path.empty()) {
        merged.cache_path = parsed.config->groundstate_cache;
      }
      merged.quiet = merged.quiet || parsed.config->quiet;
      if (merged.out_dir == "out") merged.out_dir = parsed.config->out_dir;
      return run_specs(parsed.config->experiments, merged);
    }
    if (gs->parsed()) {
      return run_groundstate(opts, gs_gamma_plus, gs_tol);
    }

    ExperimentKind kind = ExperimentKind::partition;
    if (str->parsed()) kind = ExperimentKind::strichartz;
    if (blw->parsed()) kind = ExperimentKind::blowup;
    if (sct->parsed()) kind = ExperimentKind::scattering;
    if (par->parsed()) kind = ExperimentKind::partition;
    if (sol->parsed()) kind = ExperimentKind::soliton;

    std::vector<std::string> errors;
    std::vector<ExperimentSpec> specs = specs_for_kind(kind, opts, errors);
    if (!errors.empty()) {
      for (const std::string& e : errors) std::cerr << e << "\n";
      return kExitUsage;
    }
    return run_specs(specs, opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
