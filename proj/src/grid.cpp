#include "manetsim/grid.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "manetsim/report.hpp"

namespace manetsim {

std::string GridCell::label() const {
  char buf[64];
  if (mobility == MobilityMode::Static) {
    std::snprintf(buf, sizeof(buf), "%s_n%u_d%g", protocol_name(protocol), n_nodes, spacing);
  } else {
    std::snprintf(buf, sizeof(buf), "%s_n%u_%s", protocol_name(protocol), n_nodes,
                  mobility_name(mobility));
  }
  return buf;
}

std::vector<GridCell> enumerate_cells(const GridConfig& cfg) {
  std::vector<GridCell> cells;
  for (Protocol p : cfg.protocols) {
    for (uint32_t n : cfg.node_counts) {
      for (double d : cfg.spacings) {
        cells.push_back(GridCell{p, n, d, MobilityMode::Static});
      }
    }
  }
  if (cfg.include_mobility) {
    for (Protocol p : cfg.protocols) {
      cells.push_back(GridCell{p, cfg.mobility_nodes, 0.0, MobilityMode::Outward});
      cells.push_back(GridCell{p, cfg.mobility_nodes, 0.0, MobilityMode::Inward});
    }
  }
  return cells;
}

ScenarioConfig cell_scenario(const GridConfig& cfg, const GridCell& cell) {
  ScenarioConfig sc = cfg.base;
  sc.protocol = cell.protocol;
  sc.n_nodes = cell.n_nodes;
  sc.mobility = cell.mobility;
  if (cell.mobility == MobilityMode::Static) {
    sc.spacing_m = cell.spacing;
  }
  sc.seed = mix_seed(cfg.base.seed, cell.label());
  return sc;
}

GridOutcome run_grid(const GridConfig& cfg, const YuvSequence& source,
                     const std::string& out_dir, unsigned jobs, size_t ma_window) {
  std::vector<GridCell> cells = enumerate_cells(cfg);
  GridOutcome outcome;
  outcome.cells.resize(cells.size());

  std::filesystem::create_directories(out_dir);
  if (jobs == 0) jobs = 1;

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      CellSummary& s = outcome.cells[i];
      s.cell = cells[i];
      try {
        ScenarioConfig sc = cell_scenario(cfg, cells[i]);
        RunResult r = run_scenario(sc, source);
        write_run_artifacts(r, sc, out_dir + "/" + cells[i].label(), ma_window);
        s.loss_rate = r.metrics.loss_rate;
        s.decodable_ratio = r.metrics.decodable_ratio;
        s.extractable = r.metrics.extractable;
        s.mean_psnr_db = r.metrics.mean_psnr();
        s.mean_abs_jitter_s = r.metrics.mean_abs_jitter();
        s.time_to_first_frame_s = r.time_to_first_frame_s;
      } catch (const std::exception& e) {
        s.failed = true;
        s.error = e.what();
      }
    }
  };

  std::vector<std::thread> pool;
  for (unsigned t = 0; t + 1 < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (const CellSummary& s : outcome.cells) {
    if (s.failed) outcome.any_failed = true;
  }

  std::ofstream tsv(out_dir + "/extractability.tsv", std::ios::trunc);
  tsv << extractability_tsv(cfg, outcome);
  std::ofstream csv(out_dir + "/comparison.csv", std::ios::trunc);
  csv << comparison_csv(outcome);
  return outcome;
}

std::string extractability_tsv(const GridConfig& cfg, const GridOutcome& outcome) {
  auto find = [&](Protocol p, uint32_t n, double d) -> const CellSummary* {
    for (const CellSummary& s : outcome.cells) {
      if (s.cell.mobility == MobilityMode::Static && s.cell.protocol == p &&
          s.cell.n_nodes == n && s.cell.spacing == d) {
        return &s;
      }
    }
    return nullptr;
  };

  char buf[64];
  std::string out = "nodes";
  for (double d : cfg.spacings) {
    for (Protocol p : cfg.protocols) {
      std::snprintf(buf, sizeof(buf), "\t%s_d%g", protocol_name(p), d);
      out += buf;
    }
  }
  out += '\n';
  for (uint32_t n : cfg.node_counts) {
    out += std::to_string(n);
    for (double d : cfg.spacings) {
      for (Protocol p : cfg.protocols) {
        const CellSummary* s = find(p, n, d);
        if (!s || s->failed) {
          out += "\t-";
        } else {
          std::snprintf(buf, sizeof(buf), "\t%c:%.3f", s->extractable ? 'Y' : 'N',
                        s->decodable_ratio);
          out += buf;
        }
      }
    }
    out += '\n';
  }
  return out;
}

std::string comparison_csv(const GridOutcome& outcome) {
  std::string out =
      "protocol,n_nodes,spacing_m,mobility,loss_rate,decodable_ratio,extractable,"
      "mean_psnr_db,mean_abs_jitter_s,time_to_first_frame_s\n";
  char buf[256];
  for (const CellSummary& s : outcome.cells) {
    if (s.failed) {
      std::snprintf(buf, sizeof(buf), "%s,%u,%g,%s,failed,,,,,\n",
                    protocol_name(s.cell.protocol), s.cell.n_nodes, s.cell.spacing,
                    mobility_name(s.cell.mobility));
      out += buf;
      continue;
    }
    std::string ttff = "";
    if (!std::isnan(s.time_to_first_frame_s)) {
      std::snprintf(buf, sizeof(buf), "%.6f", s.time_to_first_frame_s);
      ttff = buf;
    }
    std::snprintf(buf, sizeof(buf), "%s,%u,%g,%s,%.6f,%.6f,%c,%.4f,%.6f,%s\n",
                  protocol_name(s.cell.protocol), s.cell.n_nodes, s.cell.spacing,
                  mobility_name(s.cell.mobility), s.loss_rate, s.decodable_ratio,
                  s.extractable ? 'Y' : 'N', s.mean_psnr_db, s.mean_abs_jitter_s,
                  ttff.c_str());
    out += buf;
  }
  return out;
}

}  // namespace manetsim
