#pragma once

#include <optional>
#include <string>

namespace manetsim {

// Exit codes: 0 success, 1 bad config, 2 I/O failure, 3 simulation error.

struct CliOverrides {
  std::optional<uint64_t> seed;
  size_t ma_window = 100;
  std::optional<double> theta;
};

int cmd_run(const std::string& config_path, const std::string& yuv_path,
            const std::string& out_dir, const CliOverrides& ov = {});

int cmd_grid(const std::string& config_path, const std::string& yuv_path,
             const std::string& out_dir, unsigned jobs, const CliOverrides& ov = {});

int cmd_synth(const std::string& out_path, uint32_t n_frames, uint32_t width,
              uint32_t height);

int cli_main(int argc, const char* const* argv);

}  // namespace manetsim
