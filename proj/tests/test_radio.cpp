#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "manetsim/radio.hpp"
#include "manetsim/rng.hpp"

using namespace manetsim;

namespace {

// Independent oracle: both formulas evaluated directly from their textbook
// forms, selected analytically by the crossover distance.
double friis_oracle(const RadioParams& p, double d) {
  double lambda = 299792458.0 / p.frequency_hz;
  return p.tx_power_w * p.gain_tx * p.gain_rx * lambda * lambda /
         (std::pow(4.0 * M_PI * d, 2.0) * p.system_loss);
}

double two_ray_oracle(const RadioParams& p, double d) {
  return p.tx_power_w * p.gain_tx * p.gain_rx *
         std::pow(p.antenna_height_tx * p.antenna_height_rx, 2.0) /
         (std::pow(d, 4.0) * p.system_loss);
}

NodePosition at(double x) { return NodePosition{x, 0.0}; }

}  // namespace

TEST_CASE("default parameters give the expected nominal range") {
  RadioParams p;
  // Solving the two-ray formula for Pr = rx_threshold with the defaults
  // gives d = (Pt*ht^2*hr^2 / thr)^(1/4) ~= 250.01 m.
  double range = std::pow(p.tx_power_w * std::pow(p.antenna_height_tx * p.antenna_height_rx, 2.0) /
                              p.rx_threshold_w,
                          0.25);
  CHECK(range == doctest::Approx(250.0107).epsilon(1e-4));

  double pr250 = received_power(at(0), at(250.0), p);
  CHECK(pr250 == doctest::Approx(two_ray_oracle(p, 250.0)).epsilon(1e-12));
  CHECK(pr250 == doctest::Approx(3.652622e-10).epsilon(1e-5));
  CHECK(pr250 >= p.rx_threshold_w);
  CHECK(received_power(at(0), at(251.0), p) < p.rx_threshold_w);
}

TEST_CASE("crossover distance joins the branches continuously") {
  RadioParams p;
  double dc = p.crossover_distance();
  CHECK(dc == doctest::Approx(86.2021).epsilon(1e-4));
  CHECK(friis_oracle(p, dc) == doctest::Approx(two_ray_oracle(p, dc)).epsilon(1e-12));
  // At exactly dc the two-ray branch is taken; both agree there anyway.
  CHECK(received_power(at(0), at(dc), p) ==
        doctest::Approx(two_ray_oracle(p, dc)).epsilon(1e-12));
  // Just inside the crossover the free-space form applies.
  CHECK(received_power(at(0), at(dc * 0.5), p) ==
        doctest::Approx(friis_oracle(p, dc * 0.5)).epsilon(1e-12));
}

TEST_CASE("zero distance is rejected") {
  RadioParams p;
  CHECK_THROWS_AS(received_power(at(5.0), at(5.0), p), ZeroDistance);
}

TEST_CASE("received power strictly decreases with distance") {
  RadioParams p;
  RngStream rng(11);
  double prev_d = 0.1;
  double prev_p = received_power(at(0), at(prev_d), p);
  for (int i = 0; i < 400; ++i) {
    double d = prev_d + 0.05 + rng.uniform_double() * 10.0;
    double pr = received_power(at(0), at(d), p);
    CHECK(pr < prev_p);
    prev_d = d;
    prev_p = pr;
  }
}

TEST_CASE("link symmetry and the 150 m grid geometry") {
  RadioParams p;
  NodePosition a{0, 0}, b{150, 0}, diag{150, 150}, far{300, 0};
  CHECK(in_range(a, b, p));
  CHECK(in_range(b, a, p));
  CHECK(in_range(a, diag, p));  // d ~= 212.1 m
  CHECK_FALSE(in_range(a, far, p));  // two grid steps, d = 300 m
  CHECK_FALSE(in_range(far, a, p));

  RngStream rng(3);
  for (int i = 0; i < 200; ++i) {
    NodePosition u{rng.uniform_double() * 500, rng.uniform_double() * 500};
    NodePosition v{rng.uniform_double() * 500, rng.uniform_double() * 500};
    if (distance(u, v) == 0.0) continue;
    CHECK(in_range(u, v, p) == in_range(v, u, p));
  }
}
