#pragma once

#include <string>

#include "manetsim/scenario.hpp"

namespace manetsim {

// Writes the per-run artifact set into `dir` (created if needed):
//   trace.txt, sender_log.txt, receiver_log.txt, metrics.csv,
//   psnr_smooth.csv, jitter.csv, channel_stats.csv, route_events.csv,
//   summary.txt
void write_run_artifacts(const RunResult& result, const ScenarioConfig& cfg,
                         const std::string& dir, size_t ma_window);

std::string summary_text(const RunResult& result, const ScenarioConfig& cfg);

}  // namespace manetsim
