#pragma once

#include <string>

#include "manetsim/config.hpp"

namespace manetsim {

struct GridCell {
  Protocol protocol = Protocol::Aodv;
  uint32_t n_nodes = 4;
  double spacing = 20.0;
  MobilityMode mobility = MobilityMode::Static;

  std::string label() const;
};

struct CellSummary {
  GridCell cell;
  bool failed = false;
  std::string error;
  double loss_rate = 0.0;
  double decodable_ratio = 0.0;
  bool extractable = false;
  double mean_psnr_db = 0.0;
  double mean_abs_jitter_s = 0.0;
  double time_to_first_frame_s = 0.0;  // NaN when nothing delivered
};

struct GridOutcome {
  std::vector<CellSummary> cells;  // fixed enumeration order
  bool any_failed = false;
};

std::vector<GridCell> enumerate_cells(const GridConfig& cfg);

// Per-cell scenario: the base config with the cell axes applied and
// seed = hash(base seed, cell label), so adding cells never changes
// existing cells' results.
ScenarioConfig cell_scenario(const GridConfig& cfg, const GridCell& cell);

// Runs every cell on `jobs` workers, writing per-cell artifacts under
// out_dir/<label>/ plus extractability.tsv and comparison.csv. Cell
// failures are recorded and the grid continues.
GridOutcome run_grid(const GridConfig& cfg, const YuvSequence& source,
                     const std::string& out_dir, unsigned jobs, size_t ma_window);

std::string extractability_tsv(const GridConfig& cfg, const GridOutcome& outcome);
std::string comparison_csv(const GridOutcome& outcome);

}  // namespace manetsim
