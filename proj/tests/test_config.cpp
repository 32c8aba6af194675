#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "manetsim/config.hpp"

using namespace manetsim;

TEST_CASE("a full scenario file parses") {
  const char* text = R"(
# experiment setup
protocol = dsdv
n_nodes = 16
spacing = 100
mobility = static
n_frames = 500
width = 352
height = 288
sender = 0
receiver = 15
seed = 99
drain_time = 4.5
theta = 0.1
concealment = zero_fill
fps = 30
gop_len = 30
mtu = 1024
base_i = 5000
alpha = 55.5
bitrate = 2e6
tx_power = 0.28183815
cw_min = 32
retry_limit = 7
dsdv_update_period = 12
)";
  ScenarioConfig cfg = parse_scenario_config(text);
  CHECK(cfg.protocol == Protocol::Dsdv);
  CHECK(cfg.n_nodes == 16);
  CHECK(cfg.spacing_m == 100.0);
  CHECK(cfg.n_frames == 500);
  CHECK(cfg.receiver.value() == 15);
  CHECK(cfg.seed == 99);
  CHECK(cfg.drain_time_s == 4.5);
  CHECK(cfg.theta == 0.1);
  CHECK(cfg.concealment == ConcealmentMode::ZeroFill);
  CHECK(cfg.video.base_i == 5000.0);
  CHECK(cfg.video.alpha == 55.5);
  CHECK(cfg.dsdv.update_period_s == 12.0);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("defaults survive an empty file") {
  ScenarioConfig cfg = parse_scenario_config("");
  CHECK(cfg.protocol == Protocol::Aodv);
  CHECK(cfg.n_nodes == 4);
  CHECK(cfg.n_frames == 2000);
  CHECK(cfg.video.mtu == 1024);
  CHECK(cfg.theta == 0.05);
  CHECK(cfg.sender_id() == 0);
  CHECK(cfg.receiver_id() == 3);
}

TEST_CASE("unknown keys are rejected") {
  CHECK_THROWS_AS(parse_scenario_config("nodes = 4\n"), BadConfig);
  CHECK_THROWS_AS(parse_scenario_config("grid_nodes = 4\n"), BadConfig);
  CHECK_THROWS_WITH_AS(parse_scenario_config("frobnicate = 1\n"),
                       "unknown key: frobnicate", BadConfig);
}

TEST_CASE("malformed lines and values are rejected") {
  CHECK_THROWS_AS(parse_scenario_config("just some words\n"), BadConfig);
  CHECK_THROWS_AS(parse_scenario_config("n_nodes = four\n"), BadConfig);
  CHECK_THROWS_AS(parse_scenario_config("spacing = 20m\n"), BadConfig);
  CHECK_THROWS_AS(parse_scenario_config("protocol = olsr\n"), BadConfig);
  CHECK_THROWS_AS(parse_scenario_config("= 5\n"), BadConfig);
}

TEST_CASE("comments and blank lines are ignored") {
  ScenarioConfig cfg = parse_scenario_config(
      "\n"
      "   # leading comment\n"
      "n_nodes = 9   # trailing comment\n"
      "\t\n");
  CHECK(cfg.n_nodes == 9);
}

TEST_CASE("grid files take the same keys plus the axes") {
  const char* text = R"(
seed = 5
n_frames = 100
grid_protocols = aodv
grid_nodes = 4, 9
grid_spacings = 20, 50
grid_mobility = false
grid_mobility_nodes = 9
)";
  GridConfig grid = parse_grid_config(text);
  CHECK(grid.base.seed == 5);
  CHECK(grid.base.n_frames == 100);
  REQUIRE(grid.protocols.size() == 1);
  CHECK(grid.protocols[0] == Protocol::Aodv);
  CHECK(grid.node_counts == std::vector<uint32_t>{4, 9});
  CHECK(grid.spacings == std::vector<double>{20.0, 50.0});
  CHECK_FALSE(grid.include_mobility);
  CHECK(grid.mobility_nodes == 9);
}

TEST_CASE("grid defaults match the experiment matrix") {
  GridConfig grid = parse_grid_config("");
  CHECK(grid.protocols.size() == 2);
  CHECK(grid.node_counts == std::vector<uint32_t>{4, 9, 16, 25, 36, 49, 64});
  CHECK(grid.spacings == std::vector<double>{20.0, 50.0, 100.0, 150.0});
  CHECK(grid.include_mobility);
  CHECK(grid.mobility_nodes == 25);
}

TEST_CASE("grid parser still rejects unknown keys") {
  CHECK_THROWS_AS(parse_grid_config("grid_shape = wide\n"), BadConfig);
}
