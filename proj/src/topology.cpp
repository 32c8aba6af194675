#include "manetsim/topology.hpp"

#include <algorithm>
#include <cmath>

namespace manetsim {

uint32_t grid_side(uint32_t n_nodes) {
  uint32_t side = uint32_t(std::lround(std::sqrt(double(n_nodes))));
  if (side == 0 || side * side != n_nodes) {
    throw NotPerfectSquare(std::to_string(n_nodes) + " nodes cannot form a square grid");
  }
  return side;
}

std::vector<NodePosition> matrix_topology(uint32_t n_nodes, double spacing) {
  uint32_t side = grid_side(n_nodes);
  std::vector<NodePosition> pos;
  pos.reserve(n_nodes);
  for (uint32_t row = 0; row < side; ++row) {
    for (uint32_t col = 0; col < side; ++col) {
      pos.push_back(NodePosition{col * spacing, row * spacing});
    }
  }
  return pos;
}

MobilityPlan MobilityPlan::fixed(std::vector<NodePosition> positions) {
  MobilityPlan p;
  p.initial_ = std::move(positions);
  p.moving_ = false;
  return p;
}

MobilityPlan MobilityPlan::static_grid(uint32_t n_nodes, double spacing) {
  MobilityPlan p;
  p.initial_ = matrix_topology(n_nodes, spacing);
  p.d_start_ = p.d_end_ = spacing;
  p.moving_ = false;
  return p;
}

MobilityPlan MobilityPlan::scaling_grid(uint32_t n_nodes, double d_start, double d_end,
                                        double duration_s) {
  if (d_start <= 0.0 || duration_s <= 0.0) {
    throw BadConfig("mobility needs positive start spacing and duration");
  }
  MobilityPlan p;
  p.initial_ = matrix_topology(n_nodes, d_start);
  uint32_t side = grid_side(n_nodes);
  double half = (side - 1) * d_start / 2.0;
  p.center_ = NodePosition{half, half};
  p.d_start_ = d_start;
  p.d_end_ = d_end;
  p.duration_s_ = duration_s;
  p.moving_ = true;
  return p;
}

double MobilityPlan::spacing_at(SimTime t) const {
  if (!moving_) return d_start_;
  double k = std::clamp(t / duration_s_, 0.0, 1.0);
  return d_start_ + (d_end_ - d_start_) * k;
}

NodePosition MobilityPlan::position_at(NodeId node, SimTime t) const {
  const NodePosition& p0 = initial_[node];
  if (!moving_) return p0;
  double scale = spacing_at(t) / d_start_;
  return NodePosition{center_.x + scale * (p0.x - center_.x),
                      center_.y + scale * (p0.y - center_.y)};
}

}  // namespace manetsim
