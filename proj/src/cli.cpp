#include "manetsim/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <thread>

#include <CLI11.hpp>

#include "manetsim/grid.hpp"
#include "manetsim/report.hpp"
#include "manetsim/yuv.hpp"

namespace manetsim {

namespace {

int fail(int code, const std::string& what) {
  std::fprintf(stderr, "manetsim: %s\n", what.c_str());
  return code;
}

YuvSequence load_source(const std::string& yuv_path, uint32_t width, uint32_t height) {
  if (!std::filesystem::exists(yuv_path)) {
    throw IoError("no such file: " + yuv_path);
  }
  return YuvSequence::load(yuv_path, width, height);
}

}  // namespace

int cmd_run(const std::string& config_path, const std::string& yuv_path,
            const std::string& out_dir, const CliOverrides& ov) {
  ScenarioConfig cfg;
  try {
    cfg = load_scenario_config(config_path);
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.theta) cfg.theta = *ov.theta;
    cfg.validate();
  } catch (const IoError& e) {
    return fail(2, e.what());
  } catch (const SimError& e) {
    return fail(1, e.what());
  }

  YuvSequence source;
  try {
    source = load_source(yuv_path, cfg.width, cfg.height);
  } catch (const SimError& e) {
    return fail(2, e.what());
  }

  try {
    RunResult result = run_scenario(cfg, source);
    write_run_artifacts(result, cfg, out_dir, ov.ma_window);
  } catch (const IoError& e) {
    return fail(2, e.what());
  } catch (const BadConfig& e) {
    return fail(1, e.what());
  } catch (const std::exception& e) {
    return fail(3, e.what());
  }
  return 0;
}

int cmd_grid(const std::string& config_path, const std::string& yuv_path,
             const std::string& out_dir, unsigned jobs, const CliOverrides& ov) {
  GridConfig cfg;
  try {
    cfg = load_grid_config(config_path);
    if (ov.seed) cfg.base.seed = *ov.seed;
    if (ov.theta) cfg.base.theta = *ov.theta;
  } catch (const IoError& e) {
    return fail(2, e.what());
  } catch (const SimError& e) {
    return fail(1, e.what());
  }

  YuvSequence source;
  try {
    source = load_source(yuv_path, cfg.base.width, cfg.base.height);
  } catch (const SimError& e) {
    return fail(2, e.what());
  }

  try {
    GridOutcome outcome = run_grid(cfg, source, out_dir, jobs, ov.ma_window);
    if (outcome.any_failed) {
      for (const CellSummary& s : outcome.cells) {
        if (s.failed) {
          std::fprintf(stderr, "manetsim: cell %s failed: %s\n",
                       s.cell.label().c_str(), s.error.c_str());
        }
      }
      return 3;
    }
  } catch (const IoError& e) {
    return fail(2, e.what());
  } catch (const std::exception& e) {
    return fail(3, e.what());
  }
  return 0;
}

int cmd_synth(const std::string& out_path, uint32_t n_frames, uint32_t width,
              uint32_t height) {
  try {
    YuvSequence seq = synth_sequence(n_frames, width, height);
    seq.store(out_path);
  } catch (const IoError& e) {
    return fail(2, e.what());
  } catch (const SimError& e) {
    return fail(1, e.what());
  }
  return 0;
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Video streaming over simulated mobile ad-hoc networks"};
  app.require_subcommand(1);

  std::string config_path, yuv_path, out_dir;
  CliOverrides ov;
  uint64_t seed = 0;
  double theta = 0.0;
  unsigned jobs = std::thread::hardware_concurrency();

  CLI::App* run = app.add_subcommand("run", "Run one scenario and emit its reports");
  run->add_option("--config", config_path, "scenario config file")
      ->required()
      ->envname("MANETSIM_CONFIG");
  run->add_option("--yuv", yuv_path, "raw I420 source video")
      ->required()
      ->envname("MANETSIM_YUV");
  run->add_option("--out", out_dir, "output directory")
      ->required()
      ->envname("MANETSIM_OUT");
  CLI::Option* run_seed =
      run->add_option("--seed", seed, "override the config seed")->envname("MANETSIM_SEED");
  run->add_option("--window", ov.ma_window, "moving-average width")
      ->envname("MANETSIM_WINDOW");
  CLI::Option* run_theta =
      run->add_option("--theta", theta, "extractability threshold")->envname("MANETSIM_THETA");

  CLI::App* grid = app.add_subcommand("grid", "Run the full experiment grid");
  grid->add_option("--config", config_path, "grid config file")
      ->required()
      ->envname("MANETSIM_CONFIG");
  grid->add_option("--yuv", yuv_path, "raw I420 source video")
      ->required()
      ->envname("MANETSIM_YUV");
  grid->add_option("--out", out_dir, "output directory")
      ->required()
      ->envname("MANETSIM_OUT");
  CLI::Option* grid_seed =
      grid->add_option("--seed", seed, "override the base seed")->envname("MANETSIM_SEED");
  grid->add_option("--jobs", jobs, "worker threads")->envname("MANETSIM_JOBS");
  grid->add_option("--window", ov.ma_window, "moving-average width")
      ->envname("MANETSIM_WINDOW");
  CLI::Option* grid_theta =
      grid->add_option("--theta", theta, "extractability threshold")->envname("MANETSIM_THETA");

  std::string synth_out;
  uint32_t n_frames = 2000, width = 352, height = 288;
  CLI::App* synth = app.add_subcommand("synth", "Write a deterministic synthetic YUV");
  synth->add_option("--out", synth_out, "output file")->required()->envname("MANETSIM_OUT");
  synth->add_option("--frames", n_frames, "frame count");
  synth->add_option("--width", width, "frame width");
  synth->add_option("--height", height, "frame height");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (run->parsed()) {
    if (*run_seed) ov.seed = seed;
    if (*run_theta) ov.theta = theta;
    return cmd_run(config_path, yuv_path, out_dir, ov);
  }
  if (grid->parsed()) {
    if (*grid_seed) ov.seed = seed;
    if (*grid_theta) ov.theta = theta;
    return cmd_grid(config_path, yuv_path, out_dir, jobs, ov);
  }
  if (synth->parsed()) {
    return cmd_synth(synth_out, n_frames, width, height);
  }
  return 1;
}

}  // namespace manetsim
