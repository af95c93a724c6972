#include "sinrsched/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sinrsched {

RadioParams ScenarioConfig::radio() const {
  RadioParams r;
  r.alpha = alpha;
  r.beta = db_to_linear(beta_db);
  r.noise = dbm_to_mw(noise_dbm);
  r.tx_power = tx_power_mw > 0.0 ? tx_power_mw : default_tx_power(r.beta, r.noise);
  return r;
}

void validate(const ScenarioConfig& c) {
  const auto need = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("config: ") + what);
  };
  need(c.area_side > 0.0, "area_side must be > 0");
  need(c.pairs >= 1, "pairs must be >= 1");
  need(c.node_count == 0 || c.node_count >= 2 * c.pairs, "node_count must be 0 or >= 2 * pairs");
  need(c.tx_range > 0.0, "tx_range must be > 0");
  need(c.min_link_length >= 0.0 && c.min_link_length < c.tx_range,
       "min_link_length must lie in [0, tx_range)");
  need(c.interference_range > 0.0, "interference_range must be > 0");
  need(std::isfinite(c.noise_dbm), "noise_dbm must be finite");
  need(db_to_linear(c.beta_db) >= 1.0, "beta_db must be >= 0");
  need(c.alpha > 2.0, "alpha must be > 2");
  need(c.tx_power_mw >= 0.0, "tx_power_mw must be >= 0");
  need(c.rate > 0.0, "rate must be > 0");
  need(c.frame_length >= 1, "frame_length must be >= 1");
  need(c.runs >= 0, "runs must be >= 0");
  need(c.threads >= 1, "threads must be >= 1");
  need(c.mini_slots >= 2, "mini_slots must be >= 2");
  need(c.max_distributed_slots >= 1, "max_distributed_slots must be >= 1");
  static const std::set<std::string> known{"lp-bound", "app", "pm", "pg", "pcg", "opt", "distributed"};
  for (const auto& a : c.algorithms)
    if (!known.contains(a)) throw std::invalid_argument("config: unknown algorithm '" + a + "'");
}

namespace {

ScenarioConfig parse_json(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  ScenarioConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "area_side") c.area_side = value.get<double>();
    else if (key == "pairs") c.pairs = value.get<int>();
    else if (key == "node_count") c.node_count = value.get<int>();
    else if (key == "tx_range") c.tx_range = value.get<double>();
    else if (key == "min_link_length") c.min_link_length = value.get<double>();
    else if (key == "interference_range") c.interference_range = value.get<double>();
    else if (key == "noise_dbm") c.noise_dbm = value.get<double>();
    else if (key == "beta_db") c.beta_db = value.get<double>();
    else if (key == "alpha") c.alpha = value.get<double>();
    else if (key == "tx_power_mw") c.tx_power_mw = value.get<double>();
    else if (key == "rate") c.rate = value.get<double>();
    else if (key == "frame_length") c.frame_length = value.get<int>();
    else if (key == "runs") c.runs = value.get<int>();
    else if (key == "master_seed") c.master_seed = value.get<std::uint64_t>();
    else if (key == "algorithms") c.algorithms = value.get<std::vector<std::string>>();
    else if (key == "threads") c.threads = value.get<int>();
    else if (key == "mini_slots") c.mini_slots = value.get<int>();
    else if (key == "max_distributed_slots") c.max_distributed_slots = value.get<int>();
    else if (key == "exhaustive") {
      c.exhaustive.max_links = value.value("max_links", c.exhaustive.max_links);
      c.exhaustive.max_frame = value.value("max_frame", c.exhaustive.max_frame);
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  validate(c);
  return c;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
  try {
    return parse_json(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("'" + path.string() + "': " + e.what());
  }
}

namespace {

class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : gen_(seed) {}
  double operator()() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 gen_;
};

constexpr int kPlacementRetries = 10000;

}  // namespace

NetworkInstance generate_scenario(const ScenarioConfig& config, std::uint64_t seed) {
  validate(config);
  Uniform u(seed);
  NetworkInstance inst;
  inst.radio = config.radio();
  const double side = config.area_side;

  std::set<std::pair<double, double>> used;
  const auto fresh = [&](double x, double y) {
    if (used.contains({x, y})) return false;
    for (const Node& n : inst.nodes)
      if (std::hypot(n.x - x, n.y - y) < kMinDistance) return false;
    return true;
  };
  const auto add_node = [&](double x, double y) {
    inst.nodes.push_back({static_cast<NodeId>(inst.nodes.size()), x, y});
    used.emplace(x, y);
  };

  for (int i = 0; i < config.pairs; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementRetries && !placed; ++attempt) {
      const double sx = u() * side, sy = u() * side;
      // Uniform over the annulus [min_link_length, R_T] around the sender.
      const double r0 = config.min_link_length, r1 = config.tx_range;
      const double r = std::sqrt(r0 * r0 + u() * (r1 * r1 - r0 * r0));
      const double phi = 2.0 * std::numbers::pi * u();
      const double rx = sx + r * std::cos(phi), ry = sy + r * std::sin(phi);
      if (rx < 0.0 || rx > side || ry < 0.0 || ry > side) continue;
      if (r < kMinDistance || !fresh(sx, sy) || !fresh(rx, ry)) continue;
      add_node(sx, sy);
      add_node(rx, ry);
      placed = true;
    }
    if (!placed)
      throw std::runtime_error("could not place pair " + std::to_string(i) + " after " +
                               std::to_string(kPlacementRetries) + " attempts");
    const auto id = static_cast<LinkId>(i);
    inst.links.push_back({id, 2 * id, 2 * id + 1, config.rate});
  }

  for (int i = 2 * config.pairs; i < config.effective_node_count(); ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementRetries && !placed; ++attempt) {
      const double x = u() * side, y = u() * side;
      if (!fresh(x, y)) continue;
      add_node(x, y);
      placed = true;
    }
    if (!placed) throw std::runtime_error("could not place extra node " + std::to_string(i));
  }

  validate(inst);
  return inst;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_scenario(const NetworkInstance& inst, std::ostream& out) {
  const RadioParams& r = inst.radio;
  out << "sinrsched-scenario 1\n";
  out << "radio alpha=" << format_real(r.alpha) << " beta=" << format_real(r.beta)
      << " noise=" << format_real(r.noise) << " tx_power=" << format_real(r.tx_power) << "\n";
  out << "nodes " << inst.nodes.size() << "\n";
  for (const Node& n : inst.nodes)
    out << n.id << " " << format_real(n.x) << " " << format_real(n.y) << "\n";
  out << "links " << inst.links.size() << "\n";
  for (const Link& l : inst.links)
    out << l.id << " " << l.sender << " " << l.receiver << " " << format_real(l.rate) << "\n";
}

namespace {

std::istringstream next_line(std::istream& in, const char* what) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    return std::istringstream(line);
  }
  throw std::invalid_argument(std::string("unexpected end of input, expected ") + what);
}

void expect_word(std::istringstream& ss, const std::string& word) {
  std::string got;
  if (!(ss >> got) || got != word)
    throw std::invalid_argument("expected '" + word + "', found '" + got + "'");
}

double keyed_real(std::istringstream& ss, const std::string& key) {
  std::string tok;
  if (!(ss >> tok) || tok.rfind(key + "=", 0) != 0)
    throw std::invalid_argument("expected '" + key + "=<value>'");
  std::size_t used = 0;
  const std::string text = tok.substr(key.size() + 1);
  const double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("malformed value for " + key);
  return v;
}

void expect_end(std::istringstream& ss) {
  std::string rest;
  if (ss >> rest) throw std::invalid_argument("trailing token '" + rest + "'");
}

template <class Fn>
void with_file(const std::filesystem::path& path, std::ios::openmode mode, Fn&& fn) {
  std::fstream f(path, mode);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "'");
  try {
    fn(f);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("'" + path.string() + "': " + e.what());
  }
  if ((mode & std::ios::out) && !f.flush())
    throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

NetworkInstance read_scenario(std::istream& in) {
  NetworkInstance inst;
  {
    auto ss = next_line(in, "header");
    expect_word(ss, "sinrsched-scenario");
    expect_word(ss, "1");
  }
  {
    auto ss = next_line(in, "radio block");
    expect_word(ss, "radio");
    inst.radio.alpha = keyed_real(ss, "alpha");
    inst.radio.beta = keyed_real(ss, "beta");
    inst.radio.noise = keyed_real(ss, "noise");
    inst.radio.tx_power = keyed_real(ss, "tx_power");
    expect_end(ss);
  }
  std::size_t count = 0;
  {
    auto ss = next_line(in, "nodes");
    expect_word(ss, "nodes");
    if (!(ss >> count)) throw std::invalid_argument("missing node count");
  }
  for (std::size_t i = 0; i < count; ++i) {
    auto ss = next_line(in, "node");
    Node n;
    if (!(ss >> n.id >> n.x >> n.y)) throw std::invalid_argument("malformed node line");
    expect_end(ss);
    inst.nodes.push_back(n);
  }
  {
    auto ss = next_line(in, "links");
    expect_word(ss, "links");
    if (!(ss >> count)) throw std::invalid_argument("missing link count");
  }
  for (std::size_t i = 0; i < count; ++i) {
    auto ss = next_line(in, "link");
    Link l;
    if (!(ss >> l.id >> l.sender >> l.receiver >> l.rate))
      throw std::invalid_argument("malformed link line");
    expect_end(ss);
    inst.links.push_back(l);
  }
  validate(inst);
  return inst;
}

void save_scenario(const NetworkInstance& instance, const std::filesystem::path& path) {
  with_file(path, std::ios::out | std::ios::trunc, [&](std::ostream& f) { write_scenario(instance, f); });
}

NetworkInstance load_scenario(const std::filesystem::path& path) {
  NetworkInstance inst;
  with_file(path, std::ios::in, [&](std::istream& f) { inst = read_scenario(f); });
  return inst;
}

void write_schedule(const Schedule& schedule, std::ostream& out) {
  out << "sinrsched-schedule 1\n";
  out << "frame " << schedule.frame_length() << "\n";
  for (int t = 0; t < schedule.frame_length(); ++t) {
    out << "slot " << t + 1;
    for (LinkId l : schedule.slots[static_cast<std::size_t>(t)]) out << " " << l;
    out << "\n";
  }
}

Schedule read_schedule(std::istream& in) {
  {
    auto ss = next_line(in, "header");
    expect_word(ss, "sinrsched-schedule");
    expect_word(ss, "1");
  }
  int frame = 0;
  {
    auto ss = next_line(in, "frame");
    expect_word(ss, "frame");
    if (!(ss >> frame) || frame < 1) throw std::invalid_argument("frame length must be >= 1");
  }
  Schedule s(frame);
  for (int t = 1; t <= frame; ++t) {
    auto ss = next_line(in, "slot");
    expect_word(ss, "slot");
    int idx = 0;
    if (!(ss >> idx) || idx != t)
      throw std::invalid_argument("expected slot " + std::to_string(t));
    LinkId l;
    while (ss >> l) s.slots[static_cast<std::size_t>(t - 1)].push_back(l);
    if (!ss.eof()) throw std::invalid_argument("malformed slot " + std::to_string(t));
  }
  return s;
}

void save_schedule(const Schedule& schedule, const std::filesystem::path& path) {
  with_file(path, std::ios::out | std::ios::trunc, [&](std::ostream& f) { write_schedule(schedule, f); });
}

Schedule load_schedule(const std::filesystem::path& path) {
  Schedule s;
  with_file(path, std::ios::in, [&](std::istream& f) { s = read_schedule(f); });
  return s;
}

}  // namespace sinrsched
