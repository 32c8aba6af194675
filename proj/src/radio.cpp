#include "manetsim/radio.hpp"

namespace manetsim {

double received_power(const NodePosition& tx, const NodePosition& rx, const RadioParams& p) {
  double d = distance(tx, rx);
  if (d == 0.0) throw ZeroDistance("received_power at zero distance");
  double num = p.tx_power_w * p.gain_tx * p.gain_rx;
  if (d < p.crossover_distance()) {
    double lambda = p.wavelength();
    double denom = 4.0 * M_PI * d;
    return num * lambda * lambda / (denom * denom * p.system_loss);
  }
  double ht = p.antenna_height_tx;
  double hr = p.antenna_height_rx;
  return num * ht * ht * hr * hr / (d * d * d * d * p.system_loss);
}

}  // namespace manetsim
