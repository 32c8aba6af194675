#pragma once

#include <vector>

#include "manetsim/engine.hpp"
#include "manetsim/radio.hpp"

namespace manetsim {

// sqrt(n) x sqrt(n) grid with node (row, col) at (col*D, row*D), ids
// row-major from 0. Throws NotPerfectSquare.
std::vector<NodePosition> matrix_topology(uint32_t n_nodes, double spacing);

uint32_t grid_side(uint32_t n_nodes);  // sqrt(n) or NotPerfectSquare

// Per-node positions over time. Mobile plans scale the grid about its
// center with constant speed, so spacing(0) = d_start and spacing(T) = d_end;
// positions are clamped beyond T. A node sitting on the center never moves.
class MobilityPlan {
 public:
  static MobilityPlan fixed(std::vector<NodePosition> positions);
  static MobilityPlan static_grid(uint32_t n_nodes, double spacing);
  static MobilityPlan scaling_grid(uint32_t n_nodes, double d_start, double d_end,
                                   double duration_s);

  NodePosition position_at(NodeId node, SimTime t) const;
  double spacing_at(SimTime t) const;
  size_t node_count() const { return initial_.size(); }

 private:
  std::vector<NodePosition> initial_;
  NodePosition center_{};
  double d_start_ = 0.0;
  double d_end_ = 0.0;
  double duration_s_ = 0.0;
  bool moving_ = false;
};

}  // namespace manetsim
