#include "manetsim/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace manetsim {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw BadConfig("bad numeric value for " + key + ": '" + v + "'");
  }
}

uint64_t parse_uint(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    unsigned long long u = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return u;
  } catch (const std::exception&) {
    throw BadConfig("bad integer value for " + key + ": '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw BadConfig("bad boolean value for " + key + ": '" + v + "'");
}

Protocol parse_protocol(const std::string& key, const std::string& v) {
  if (v == "aodv") return Protocol::Aodv;
  if (v == "dsdv") return Protocol::Dsdv;
  throw BadConfig("bad protocol for " + key + ": '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(v);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Returns true when the key belongs to the single-run scenario schema.
bool apply_scenario_key(ScenarioConfig& cfg, const std::string& key, const std::string& v) {
  if (key == "protocol") cfg.protocol = parse_protocol(key, v);
  else if (key == "n_nodes") cfg.n_nodes = uint32_t(parse_uint(key, v));
  else if (key == "spacing") cfg.spacing_m = parse_double(key, v);
  else if (key == "mobility") {
    if (v == "static") cfg.mobility = MobilityMode::Static;
    else if (v == "outward") cfg.mobility = MobilityMode::Outward;
    else if (v == "inward") cfg.mobility = MobilityMode::Inward;
    else throw BadConfig("bad mobility mode: '" + v + "'");
  }
  else if (key == "d_start") cfg.d_start = parse_double(key, v);
  else if (key == "d_end") cfg.d_end = parse_double(key, v);
  else if (key == "n_frames") cfg.n_frames = uint32_t(parse_uint(key, v));
  else if (key == "width") cfg.width = uint32_t(parse_uint(key, v));
  else if (key == "height") cfg.height = uint32_t(parse_uint(key, v));
  else if (key == "sender") cfg.sender = NodeId(parse_uint(key, v));
  else if (key == "receiver") cfg.receiver = NodeId(parse_uint(key, v));
  else if (key == "seed") cfg.seed = parse_uint(key, v);
  else if (key == "drain_time") cfg.drain_time_s = parse_double(key, v);
  else if (key == "theta") cfg.theta = parse_double(key, v);
  else if (key == "concealment") {
    if (v == "repeat_last") cfg.concealment = ConcealmentMode::RepeatLast;
    else if (v == "zero_fill") cfg.concealment = ConcealmentMode::ZeroFill;
    else throw BadConfig("bad concealment mode: '" + v + "'");
  }
  else if (key == "fps") cfg.video.fps = parse_double(key, v);
  else if (key == "gop_len") cfg.video.gop_len = uint32_t(parse_uint(key, v));
  else if (key == "mtu") cfg.video.mtu = uint32_t(parse_uint(key, v));
  else if (key == "base_i") cfg.video.base_i = parse_double(key, v);
  else if (key == "base_p") cfg.video.base_p = parse_double(key, v);
  else if (key == "alpha") cfg.video.alpha = parse_double(key, v);
  else if (key == "beta") cfg.video.beta = parse_double(key, v);
  else if (key == "size_min") cfg.video.size_min = uint32_t(parse_uint(key, v));
  else if (key == "size_max") cfg.video.size_max = uint32_t(parse_uint(key, v));
  else if (key == "tx_power") cfg.radio.tx_power_w = parse_double(key, v);
  else if (key == "gain_tx") cfg.radio.gain_tx = parse_double(key, v);
  else if (key == "gain_rx") cfg.radio.gain_rx = parse_double(key, v);
  else if (key == "antenna_height_tx") cfg.radio.antenna_height_tx = parse_double(key, v);
  else if (key == "antenna_height_rx") cfg.radio.antenna_height_rx = parse_double(key, v);
  else if (key == "frequency") cfg.radio.frequency_hz = parse_double(key, v);
  else if (key == "system_loss") cfg.radio.system_loss = parse_double(key, v);
  else if (key == "rx_threshold") cfg.radio.rx_threshold_w = parse_double(key, v);
  else if (key == "bitrate") cfg.radio.bitrate_bps = parse_double(key, v);
  else if (key == "slot") cfg.mac.slot_s = parse_double(key, v);
  else if (key == "cw_min") cfg.mac.cw_min = uint32_t(parse_uint(key, v));
  else if (key == "cw_max") cfg.mac.cw_max = uint32_t(parse_uint(key, v));
  else if (key == "retry_limit") cfg.mac.retry_limit = uint32_t(parse_uint(key, v));
  else if (key == "mac_overhead") cfg.mac.overhead_s = parse_double(key, v);
  else if (key == "ifq_capacity") cfg.mac.ifq_capacity = size_t(parse_uint(key, v));
  else if (key == "aodv_route_timeout") cfg.aodv.active_route_timeout_s = parse_double(key, v);
  else if (key == "aodv_rrep_wait") cfg.aodv.rrep_wait_s = parse_double(key, v);
  else if (key == "aodv_rreq_retries") cfg.aodv.rreq_retries = uint32_t(parse_uint(key, v));
  else if (key == "aodv_buffer_capacity") cfg.aodv.buffer_capacity = size_t(parse_uint(key, v));
  else if (key == "aodv_buffer_timeout") cfg.aodv.buffer_timeout_s = parse_double(key, v);
  else if (key == "dsdv_update_period") cfg.dsdv.update_period_s = parse_double(key, v);
  else if (key == "dsdv_settling") cfg.dsdv.settling_s = parse_double(key, v);
  else if (key == "dsdv_trigger_gap") cfg.dsdv.min_trigger_gap_s = parse_double(key, v);
  else if (key == "dsdv_stagger") cfg.dsdv.startup_stagger_s = parse_double(key, v);
  else if (key == "psnr_cap") cfg.psnr.cap_db = parse_double(key, v);
  else return false;
  return true;
}

bool apply_grid_key(GridConfig& cfg, const std::string& key, const std::string& v) {
  if (key == "grid_protocols") {
    cfg.protocols.clear();
    for (const std::string& p : split_list(v)) cfg.protocols.push_back(parse_protocol(key, p));
    if (cfg.protocols.empty()) throw BadConfig("grid_protocols is empty");
  } else if (key == "grid_nodes") {
    cfg.node_counts.clear();
    for (const std::string& p : split_list(v)) cfg.node_counts.push_back(uint32_t(parse_uint(key, p)));
    if (cfg.node_counts.empty()) throw BadConfig("grid_nodes is empty");
  } else if (key == "grid_spacings") {
    cfg.spacings.clear();
    for (const std::string& p : split_list(v)) cfg.spacings.push_back(parse_double(key, p));
    if (cfg.spacings.empty()) throw BadConfig("grid_spacings is empty");
  } else if (key == "grid_mobility") {
    cfg.include_mobility = parse_bool(key, v);
  } else if (key == "grid_mobility_nodes") {
    cfg.mobility_nodes = uint32_t(parse_uint(key, v));
  } else {
    return false;
  }
  return true;
}

void for_each_entry(const std::string& text,
                    const std::function<void(const std::string&, const std::string&)>& fn) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw BadConfig("line " + std::to_string(lineno) + " is not `key = value`");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw BadConfig("empty key on line " + std::to_string(lineno));
    fn(key, value);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ScenarioConfig parse_scenario_config(const std::string& text) {
  ScenarioConfig cfg;
  for_each_entry(text, [&](const std::string& key, const std::string& v) {
    if (!apply_scenario_key(cfg, key, v)) throw BadConfig("unknown key: " + key);
  });
  return cfg;
}

GridConfig parse_grid_config(const std::string& text) {
  GridConfig cfg;
  for_each_entry(text, [&](const std::string& key, const std::string& v) {
    if (!apply_scenario_key(cfg.base, key, v) && !apply_grid_key(cfg, key, v)) {
      throw BadConfig("unknown key: " + key);
    }
  });
  return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path) {
  return parse_scenario_config(read_file(path));
}

GridConfig load_grid_config(const std::string& path) {
  return parse_grid_config(read_file(path));
}

}  // namespace manetsim
