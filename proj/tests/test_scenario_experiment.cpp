#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sinrsched/experiment.hpp"
#include "sinrsched/scenario.hpp"
#include "test_support.hpp"

using namespace sinrsched;
using namespace sinrsched::testing;
namespace fs = std::filesystem;

namespace {

std::string scenario_text(const NetworkInstance& inst) {
  std::ostringstream out;
  write_scenario(inst, out);
  return out.str();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sinrsched_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<ResultRow> without_timing(std::vector<ResultRow> rows) {
  for (ResultRow& r : rows) r.wall_ms = 0.0;
  return rows;
}

ScenarioConfig small_config() {
  ScenarioConfig c;
  c.area_side = 4.0;
  c.pairs = 3;
  c.frame_length = 4;
  c.runs = 6;
  c.master_seed = 99;
  return c;
}

}  // namespace

TEST_CASE("config defaults follow the evaluation setup") {
  const ScenarioConfig c;
  CHECK(c.area_side == 100.0);
  CHECK(c.tx_range == 1.0);
  CHECK(c.interference_range == 2.5);
  CHECK(c.frame_length == 100);
  CHECK(c.runs == 100);
  CHECK(c.effective_node_count() == 20);
  const RadioParams r = c.radio();
  CHECK(r.alpha == 4.0);
  CHECK(r.beta == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(r.noise == doctest::Approx(1e-9).epsilon(1e-12));
  CHECK(r.tx_power == doctest::Approx(1e-6).epsilon(1e-12));
}

TEST_CASE("config parsing") {
  const ScenarioConfig c = parse_config(R"({"pairs": 4, "beta_db": 3, "algorithms": ["app"],
                                            "exhaustive": {"max_links": 6}, "master_seed": 18446744073709551615})");
  CHECK(c.pairs == 4);
  CHECK(c.radio().beta == doctest::Approx(std::pow(10.0, 0.3)));
  CHECK(c.algorithms == std::vector<std::string>{"app"});
  CHECK(c.exhaustive.max_links == 6);
  CHECK(c.exhaustive.max_frame == 4);
  CHECK(c.master_seed == 18446744073709551615ULL);

  CHECK_THROWS_AS(parse_config(R"({"pears": 4})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"pairs": 0})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"alpha": 2})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"algorithms": ["magic"]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"pairs": "four"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[1, 2]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(R"({"node_count": 3, "pairs": 2})"), std::invalid_argument);
}

TEST_CASE("config file errors name the path") {
  const fs::path dir = scratch_dir("config");
  try {
    load_config(dir / "missing.json");
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("missing.json") != std::string::npos);
  }
  std::ofstream(dir / "bad.json") << R"({"runs": -1})";
  try {
    load_config(dir / "bad.json");
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("bad.json") != std::string::npos);
  }
}

TEST_CASE("one pair") {
  ScenarioConfig c;
  c.pairs = 1;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const NetworkInstance inst = generate_scenario(c, seed);
    REQUIRE(inst.link_count() == 1);
    REQUIRE(inst.node_count() == 2);
    CHECK(link_length(inst, 0) <= 1.0);
  }
}

TEST_CASE("generated scenarios respect the configuration") {
  ScenarioConfig c;
  c.pairs = 30;
  c.node_count = 70;
  c.min_link_length = 0.25;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const NetworkInstance inst = generate_scenario(c, seed);
    CHECK_NOTHROW(validate(inst));
    CHECK(inst.node_count() == 70);
    CHECK(inst.link_count() == 30);
    std::set<NodeId> used;
    for (const Link& l : inst.links) {
      CHECK(l.sender == 2 * l.id);
      CHECK(l.receiver == 2 * l.id + 1);
      CHECK(link_length(inst, l.id) <= c.tx_range);
      CHECK(link_length(inst, l.id) >= c.min_link_length);
      CHECK(l.rate == 1.0);
      CHECK(used.insert(l.sender).second);
      CHECK(used.insert(l.receiver).second);
    }
    for (const Node& n : inst.nodes) {
      CHECK(n.x >= 0.0);
      CHECK(n.x <= c.area_side);
      CHECK(n.y >= 0.0);
      CHECK(n.y <= c.area_side);
    }
  }
}

TEST_CASE("generation is a pure function of the seed") {
  ScenarioConfig c;
  c.pairs = 12;
  CHECK(scenario_text(generate_scenario(c, 5)) == scenario_text(generate_scenario(c, 5)));
  CHECK(scenario_text(generate_scenario(c, 5)) != scenario_text(generate_scenario(c, 6)));
}

TEST_CASE("generation gives up on an impossible area") {
  ScenarioConfig c;
  c.area_side = 2e-6;
  c.pairs = 40;
  CHECK_THROWS_AS(generate_scenario(c, 1), std::runtime_error);
}

TEST_CASE("scenario text round-trips exactly") {
  ScenarioConfig c;
  c.pairs = 9;
  const NetworkInstance a = generate_scenario(c, 77);
  std::istringstream in(scenario_text(a));
  const NetworkInstance b = read_scenario(in);
  CHECK(scenario_text(b) == scenario_text(a));
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i].x == b.nodes[i].x);
    CHECK(a.nodes[i].y == b.nodes[i].y);
  }
  CHECK(a.radio.noise == b.radio.noise);
  CHECK(a.radio.tx_power == b.radio.tx_power);
}

TEST_CASE("malformed scenarios are rejected") {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_scenario(in);
  };
  const std::string good =
      "sinrsched-scenario 1\nradio alpha=4 beta=10 noise=1e-09 tx_power=1e-06\n"
      "nodes 2\n0 0 0\n1 1 0\nlinks 1\n0 0 1 1\n";
  CHECK_NOTHROW(parse(good));
  CHECK_THROWS_AS(parse("sinrsched-scenario 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse(""), std::invalid_argument);
  CHECK_THROWS_AS(parse("sinrsched-scenario 1\nradio alpha=4 beta=10 noise=1e-09\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("sinrsched-scenario 1\nradio alpha=4 beta=10 noise=1e-09 tx_power=1e-06\n"
                        "nodes 2\n0 0 0\n1 1 0\nlinks 1\n0 0 0 1\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse("sinrsched-scenario 1\nradio alpha=4 beta=10 noise=1e-09 tx_power=1e-06\n"
                        "nodes 2\n0 0 0 7\n1 1 0\nlinks 1\n0 0 1 1\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse("sinrsched-scenario 1\nradio alpha=4 beta=10 noise=1e-09 tx_power=1e-06\n"
                        "nodes 3\n0 0 0\n1 1 0\n"),
                  std::invalid_argument);
}

TEST_CASE("schedule text round-trips") {
  Schedule s(3);
  s.slots[0] = {0, 2};
  s.slots[2] = {1};
  std::ostringstream out;
  write_schedule(s, out);
  CHECK(out.str() == "sinrsched-schedule 1\nframe 3\nslot 1 0 2\nslot 2\nslot 3 1\n");
  std::istringstream in(out.str());
  CHECK(read_schedule(in) == s);

  std::istringstream bad("sinrsched-schedule 1\nframe 2\nslot 2 0\nslot 1\n");
  CHECK_THROWS_AS(read_schedule(bad), std::invalid_argument);
  std::istringstream zero("sinrsched-schedule 1\nframe 0\n");
  CHECK_THROWS_AS(read_schedule(zero), std::invalid_argument);
}

TEST_CASE("file helpers report the path") {
  const fs::path dir = scratch_dir("files");
  const NetworkInstance inst = distant_pair();
  save_scenario(inst, dir / "a.scn");
  CHECK(scenario_text(load_scenario(dir / "a.scn")) == scenario_text(inst));
  try {
    load_scenario(dir / "nope.scn");
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("nope.scn") != std::string::npos);
  }
  CHECK_THROWS_AS(save_schedule(Schedule(1), dir / "no_such_dir" / "x.sched"), std::runtime_error);
}

TEST_CASE("per-run seeds") {
  std::set<std::uint64_t> seen;
  for (int r = 0; r < 1000; ++r) seen.insert(run_seed(7, r));
  CHECK(seen.size() == 1000);
  CHECK(run_seed(7, 3) == run_seed(7, 3));
  CHECK(run_seed(7, 3) != run_seed(8, 3));
}

TEST_CASE("empty algorithm list gives an empty table") {
  ScenarioConfig c = small_config();
  c.algorithms.clear();
  CHECK(run_experiment(c).empty());
}

TEST_CASE("app stays under the relaxation row by row") {
  ScenarioConfig c = small_config();
  c.algorithms = {"lp-bound", "app"};
  const auto rows = run_experiment(c);
  REQUIRE(rows.size() == 12);
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    CHECK(rows[i].algorithm == "lp-bound");
    CHECK(rows[i + 1].algorithm == "app");
    CHECK(rows[i].run_id == static_cast<int>(i / 2));
    if (rows[i + 1].status == "lp_infeasible") continue;
    REQUIRE(rows[i + 1].throughput);
    REQUIRE(rows[i + 1].lp_bound);
    CHECK(*rows[i + 1].throughput <= *rows[i + 1].lp_bound * (1 + kLpObjectiveTol));
    CHECK(*rows[i].throughput == *rows[i + 1].lp_bound);
  }
}

TEST_CASE("tiny instance sandwich with the exact optimum") {
  ScenarioConfig c = small_config();
  c.pairs = 2;
  c.frame_length = 3;
  c.area_side = 2.5;
  c.runs = 10;
  c.algorithms = {"app", "opt", "lp-bound"};
  const auto rows = run_experiment(c);
  int checked = 0;
  for (std::size_t i = 0; i < rows.size(); i += 3) {
    const ResultRow& app = rows[i];
    const ResultRow& opt = rows[i + 1];
    if (opt.status != "ok") continue;
    REQUIRE(opt.opt);
    REQUIRE(opt.lp_bound);
    CHECK(*opt.opt <= *opt.lp_bound * (1 + 1e-6));
    if (app.status == "ok") CHECK(*app.throughput <= *opt.opt * (1 + 1e-9));
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("every algorithm produces a row") {
  ScenarioConfig c = small_config();
  c.runs = 2;
  c.algorithms = {"lp-bound", "app", "pm", "pg", "pcg", "opt", "distributed"};
  const auto rows = run_experiment(c);
  REQUIRE(rows.size() == 14);
  for (const ResultRow& r : rows) {
    CHECK(r.n == 3);
    CHECK(r.status != "error");
    if (r.algorithm == "distributed") {
      CHECK(r.slots_used);
      CHECK(r.throughput);
    }
  }
}

TEST_CASE("size guard is recorded, not thrown") {
  ScenarioConfig c = small_config();
  c.pairs = 9;
  c.area_side = 20;
  c.runs = 1;
  c.algorithms = {"opt"};
  const auto rows = run_experiment(c);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].status == "size_guard");
  CHECK_FALSE(rows[0].throughput);
}

TEST_CASE("thread count does not change the table") {
  ScenarioConfig c = small_config();
  c.algorithms = {"app", "pg", "distributed"};
  const auto one = run_experiment(c);
  c.threads = 4;
  const auto four = run_experiment(c);
  CHECK(without_timing(one) == without_timing(four));
}

TEST_CASE("summary statistics") {
  std::vector<ResultRow> rows(4);
  rows[0].algorithm = rows[1].algorithm = "app";
  rows[2].algorithm = rows[3].algorithm = "pg";
  for (auto& r : rows) r.n = 5;
  rows[0].throughput = 1.0;
  rows[1].throughput = 3.0;
  rows[2].throughput = 2.0;
  const auto s = summarize(rows);
  REQUIRE(s.size() == 2);
  CHECK(s[0].algorithm == "app");
  CHECK(s[0].mean == 2.0);
  CHECK(s[0].stddev == doctest::Approx(std::sqrt(2.0)));
  CHECK(s[0].samples == 2);
  CHECK(s[1].mean == 2.0);
  CHECK(s[1].stddev == 0.0);
  CHECK(s[1].samples == 1);
}

TEST_CASE("result files") {
  const fs::path dir = scratch_dir("results");
  emit_results({}, dir / "empty.csv");
  CHECK(read_file(dir / "empty.csv") == std::string(kResultHeader) + "\n");
  CHECK(fs::exists(dir / "empty.summary.csv"));

  ScenarioConfig c = small_config();
  c.runs = 1;
  c.algorithms = {"app", "pm"};
  const auto rows = run_experiment(c);
  REQUIRE(rows.size() == 2);
  emit_results(rows, dir / "two.csv");
  const std::string text = read_file(dir / "two.csv");
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);

  std::ifstream in(dir / "two.csv");
  CHECK(read_results(in) == rows);

  const std::string summary = read_file(dir / "two.summary.csv");
  CHECK(summary.rfind("algorithm,n,mean,stddev,samples\n", 0) == 0);
  CHECK(summary.find("\napp,3,") != std::string::npos);

  try {
    emit_results(rows, dir / "missing" / "x.csv");
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("x.csv") != std::string::npos);
  }
}

TEST_CASE("results parser rejects foreign files") {
  std::istringstream wrong("a,b,c\n");
  CHECK_THROWS_AS(read_results(wrong), std::invalid_argument);
  std::istringstream short_row(std::string(kResultHeader) + "\n1,2,3\n");
  CHECK_THROWS_AS(read_results(short_row), std::invalid_argument);
}
