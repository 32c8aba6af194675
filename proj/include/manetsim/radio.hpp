#pragma once

#include <cmath>

#include "manetsim/errors.hpp"

namespace manetsim {

struct NodePosition {
  double x = 0.0;  // meters
  double y = 0.0;
};

inline double distance(const NodePosition& a, const NodePosition& b) {
  double dx = a.x - b.x;
  double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

// Defaults give a nominal reception range of ~250 m (the classic 914 MHz
// WaveLAN profile), so neighbors stay connected at grid spacings up to 150 m.
struct RadioParams {
  double tx_power_w = 0.28183815;
  double gain_tx = 1.0;
  double gain_rx = 1.0;
  double antenna_height_tx = 1.5;  // meters
  double antenna_height_rx = 1.5;
  double frequency_hz = 914e6;
  double system_loss = 1.0;  // >= 1
  double rx_threshold_w = 3.652e-10;
  double bitrate_bps = 2e6;

  double wavelength() const { return 299792458.0 / frequency_hz; }

  // Below this distance the free-space term dominates; at and beyond it the
  // ground-reflection d^-4 term applies. The two formulas agree exactly at
  // the crossover.
  double crossover_distance() const {
    return 4.0 * M_PI * antenna_height_tx * antenna_height_rx / wavelength();
  }
};

// Two-ray ground model:
//   d <  dc:  Pr = Pt*Gt*Gr*lambda^2 / ((4*pi*d)^2 * L)
//   d >= dc:  Pr = Pt*Gt*Gr*ht^2*hr^2 / (d^4 * L)
double received_power(const NodePosition& tx, const NodePosition& rx, const RadioParams& p);

inline bool in_range(const NodePosition& tx, const NodePosition& rx, const RadioParams& p) {
  return received_power(tx, rx, p) >= p.rx_threshold_w;
}

}  // namespace manetsim
