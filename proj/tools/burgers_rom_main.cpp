#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "burgers/pipeline.hpp"

namespace {

using burgers::config::ExperimentConfig;

struct CommonOpts {
  std::string config_path;
  std::string preset;
  std::string out_dir;
  int iters = -1;
  std::string closure;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON experiment config");
  cmd->add_option("--preset", o.preset, "built-in preset (test1|test2)")
      ->check(CLI::IsMember({"test1", "test2"}));
  cmd->add_option("--out", o.out_dir, "output directory override");
  cmd->add_option("--iters", o.iters, "ES iteration override");
  cmd->add_option("--closure", o.closure,
                  "closure kind override (none|h|r|rq|rs|t|sk|clm|nev|h+nev)");
}

ExperimentConfig resolve(const CommonOpts& o) {
  if (!o.preset.empty() && !o.config_path.empty())
    throw burgers::ConfigError("give either --preset or --config, not both");
  ExperimentConfig cfg;
  if (!o.preset.empty()) {
    cfg = burgers::config::preset(o.preset);
  } else if (!o.config_path.empty()) {
    cfg = burgers::config::load(o.config_path);
  } else {
    throw burgers::ConfigError("one of --preset or --config is required");
  }
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (o.iters >= 0) cfg.es_params.max_iters = o.iters;
  if (!o.closure.empty()) {
    cfg.closure.kind = burgers::closures::kind_from_string(o.closure);
    const std::size_t ch = cfg.closure.has_nonlinear() ? 2 : 1;
    if (cfg.es_params.channels() != ch) {
      // Keep channel 1 settings, clone them for a second channel at a
      // distinct frequency.
      cfg.es_params.a.resize(ch, cfg.es_params.a[0]);
      cfg.es_params.omega.resize(ch, cfg.es_params.omega[0] * 1.5);
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"POD-Galerkin reduced-order models of the coupled Burgers "
               "equation with extremum-seeking closure tuning"};
  app.require_subcommand(1);

  CommonOpts o;
  CLI::App* truth = app.add_subcommand("truth", "solve the FEM truth trajectory");
  CLI::App* podc = app.add_subcommand("pod", "build the POD bases");
  CLI::App* romc = app.add_subcommand("rom", "integrate the ROM with the configured closure");
  CLI::App* tune = app.add_subcommand("tune", "auto-tune the closure amplitudes");
  CLI::App* rep = app.add_subcommand("report", "summarize a finished run");
  for (CLI::App* c : {truth, podc, romc, tune}) add_common(c, o);
  std::string report_dir;
  rep->add_option("--out", report_dir, "experiment directory")->required();

  CLI11_PARSE(app, argc, argv);

  std::string stage = "config";
  try {
    if (rep->parsed()) {
      const auto s = burgers::pipeline::report(report_dir);
      std::printf("iterations: %zu\n", s.iterations);
      std::printf("cost: initial %.6g, final %.6g, min %.6g\n", s.cost_initial,
                  s.cost_final, s.cost_min);
      std::printf("final gains: mu_e %.6g", s.final_gains[0]);
      if (s.final_gains.size() > 1)
        std::printf(", mu_nl %.6g", s.final_gains[1]);
      std::printf("\nmu_e tail: mean %.6g, std %.6g\n", s.plateau_mean,
                  s.plateau_std);
      return 0;
    }

    const ExperimentConfig cfg = resolve(o);
    if (truth->parsed()) {
      stage = "truth";
      burgers::pipeline::run_truth(cfg);
      std::printf("wrote %s\n", (cfg.out_dir / "truth.csv").string().c_str());
    } else if (podc->parsed()) {
      stage = "pod";
      burgers::pipeline::run_pod(cfg);
      std::printf("wrote POD bases under %s\n", cfg.out_dir.string().c_str());
    } else if (romc->parsed()) {
      stage = "rom";
      auto ctx = burgers::pipeline::prepare(cfg);
      const auto traj = burgers::pipeline::run_rom(ctx, cfg.closure, "rom");
      if (traj.diverged)
        std::printf("ROM diverged at t=%.6g\n", traj.divergence_time);
      else
        std::printf("wrote %s\n", (cfg.out_dir / "rom.csv").string().c_str());
    } else if (tune->parsed()) {
      stage = "tune";
      const auto out = burgers::pipeline::run_tune(cfg);
      std::printf("cost: initial %.6g, final %.6g (ROM-G %.6g)\n",
                  out.cost_initial, out.cost_final, out.cost_rom_g);
      std::printf("tuned gains: mu_e %.6g", out.tuned_gains[0]);
      if (out.tuned_gains.size() > 1)
        std::printf(", mu_nl %.6g", out.tuned_gains[1]);
      std::printf("\nclamp events: %ld\n", out.state.clamp_events);
      std::printf("outputs under %s\n", cfg.out_dir.string().c_str());
    }
    return 0;
  } catch (const burgers::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const burgers::Error& e) {
    std::fprintf(stderr, "numerical failure in stage '%s': %s\n", stage.c_str(),
                 e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
