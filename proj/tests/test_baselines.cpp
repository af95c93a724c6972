#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sinrsched/baselines.hpp"
#include "sinrsched/centralized.hpp"
#include "sinrsched/scenario.hpp"
#include "test_support.hpp"

using namespace sinrsched;
using namespace sinrsched::testing;

namespace {

NetworkInstance accumulation_fixture() {
  return load_scenario(SINRSCHED_FIXTURE_DIR "/accumulation.scn");
}

// Link 0 at the centre of a ring of seven senders, each 2 from its receiver.
NetworkInstance seven_ring() {
  std::vector<std::pair<double, double>> pts{{0, 0}, {1, 0}};
  std::vector<std::pair<int, int>> links{{0, 1}};
  for (int i = 0; i < 7; ++i) {
    const double a = 2.0 * 3.141592653589793 * i / 7.0 + 0.3;
    pts.emplace_back(1 + 2 * std::cos(a), 2 * std::sin(a));
    pts.emplace_back(1 + 3 * std::cos(a), 3 * std::sin(a));
    links.emplace_back(2 * i + 2, 2 * i + 3);
  }
  return make_instance(pts, links, radio(10, 0, 1));
}

int slot_of(const Schedule& s, LinkId l) {
  for (int t = 0; t < s.frame_length(); ++t)
    for (LinkId k : s.slots[static_cast<std::size_t>(t)])
      if (k == l) return t;
  return -1;
}

}  // namespace

TEST_CASE("names") {
  CHECK(to_string(BaselineKind::ProtocolModel) == "pm");
  CHECK(to_string(BaselineKind::PhysicalGreedy) == "pg");
  CHECK(to_string(BaselineKind::PhysicalConflictGraph) == "pcg");
}

TEST_CASE("single link") {
  const auto one = make_instance({{0, 0}, {1, 0}}, {{0, 1}}, default_radio());
  for (const BaselineResult& r : {pm_schedule(one, 2.5, 3), pg_schedule(one, 3), pcg_schedule(one, 3)}) {
    CHECK(r.colours == 1);
    CHECK(r.uncovered.empty());
    CHECK(slot_of(r.schedule, 0) == 0);
  }
}

TEST_CASE("shared receiver needs two colours") {
  const auto inst = make_instance({{0, 0}, {2, 0}, {1, 0.5}}, {{0, 2}, {1, 2}}, default_radio());
  CHECK(pm_schedule(inst, 2.5, 2).colours == 2);
  CHECK(pcg_schedule(inst, 2).colours == 2);
  CHECK(pg_schedule(inst, 2).colours == 2);
  const BaselineResult tight = pm_schedule(inst, 2.5, 1);
  CHECK(tight.uncovered == std::vector<LinkId>{1});
}

TEST_CASE("far apart links share a colour") {
  CHECK(pm_schedule(distant_pair(), 2.5, 2).colours == 1);
  CHECK(pg_schedule(distant_pair(), 2).colours == 1);
  const BaselineResult near = pm_schedule(distant_pair(), 60.0, 2);
  CHECK(near.colours == 2);
}

TEST_CASE("greedy physical puts the heavier link first") {
  auto inst = clashing_pair();
  inst.links[1].rate = 3.0;
  const BaselineResult r = pg_schedule(inst, 2);
  CHECK(r.colours == 2);
  CHECK(slot_of(r.schedule, 1) == 0);
  CHECK(slot_of(r.schedule, 0) == 1);
  CHECK(check_all(inst, r.schedule).feasible);
}

TEST_CASE("compatible pair shares a slot") {
  const auto inst = sinr16_pair(10.0);
  CHECK(pg_schedule(inst, 2).colours == 1);
  CHECK(pcg_schedule(inst, 2).colours == 1);
  CHECK(pcg_schedule(sinr16_pair(20.0), 2).colours == 2);
}

TEST_CASE("classes repeat over the frame") {
  const BaselineResult r = pg_schedule(clashing_pair(), 5);
  CHECK(r.schedule.slots[0] == r.schedule.slots[2]);
  CHECK(r.schedule.slots[1] == r.schedule.slots[3]);
  CHECK(r.schedule.slots[0] == r.schedule.slots[4]);
  CHECK(throughput(clashing_pair(), r.schedule) == doctest::Approx(1.0));
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(pm_schedule(distant_pair(), 0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(pm_schedule(distant_pair(), 2.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(pg_schedule(distant_pair(), 0), std::invalid_argument);
  CHECK_THROWS_AS(pcg_schedule(distant_pair(), 0), std::invalid_argument);
}

TEST_CASE("ring of pairwise-compatible interferers") {
  const auto inst = seven_ring();
  for (LinkId a = 0; a < 8; ++a)
    for (LinkId b = 0; b < 8; ++b)
      if (a != b) REQUIRE(oracle_sinr(inst, a, {b}) >= inst.radio.beta);
  REQUIRE(oracle_sinr(inst, 0, {1, 2, 3, 4, 5, 6, 7}) < inst.radio.beta);

  const BaselineResult pcg = pcg_schedule(inst, 4);
  CHECK(pcg.colours == 1);
  CHECK_FALSE(check_sinr(inst, pcg.schedule).empty());
  CHECK(effective_throughput(inst, pcg.schedule) < throughput(inst, pcg.schedule));

  const BaselineResult pg = pg_schedule(inst, 4);
  CHECK(pg.colours >= 2);
  CHECK(check_all(inst, pg.schedule).feasible);
}

TEST_CASE("accumulation fixture") {
  const auto inst = accumulation_fixture();
  REQUIRE(inst.link_count() == 6);
  std::vector<LinkId> others{1, 2, 3, 4, 5};
  for (LinkId k : others) CHECK(oracle_sinr(inst, 0, {k}) >= inst.radio.beta);
  CHECK(oracle_sinr(inst, 0, others) < inst.radio.beta);

  const BaselineResult pm = pm_schedule(inst, 2.5, 10);
  const BaselineResult pcg = pcg_schedule(inst, 10);
  const BaselineResult pg = pg_schedule(inst, 10);
  CHECK(pm.colours == 1);
  CHECK(pcg.colours == 1);
  CHECK(check_radio_constraints(inst, pm.schedule).empty());
  CHECK(check_radio_constraints(inst, pcg.schedule).empty());
  CHECK_FALSE(check_sinr(inst, pm.schedule).empty());
  CHECK_FALSE(check_sinr(inst, pcg.schedule).empty());
  CHECK(check_all(inst, pg.schedule).feasible);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AppResult app = app_schedule(inst, 10, seed);
    REQUIRE(app.lp_status == LpStatus::Optimal);
    CHECK(check_sinr(inst, app.outcome.schedule).empty());
    CHECK(check_radio_constraints(inst, app.outcome.schedule).empty());
  }
}

TEST_CASE("baseline invariants on random instances") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 300; ++trial) {
    const int links = 1 + static_cast<int>(rng() % 10);
    auto inst = random_instance(rng, links, 1.0 + 5.0 * unit(rng), trial % 2 == 0);
    for (Link& l : inst.links) l.rate = 0.5 + unit(rng);
    const int T = 1 + static_cast<int>(rng() % 10);

    const BaselineResult pg = pg_schedule(inst, T);
    CHECK(check_radio_constraints(inst, pg.schedule).empty());
    CHECK(check_sinr(inst, pg.schedule).empty());
    CHECK(check_coverage(inst, pg.schedule) == pg.uncovered);
    CHECK(effective_throughput(inst, pg.schedule) == doctest::Approx(throughput(inst, pg.schedule)));

    for (const BaselineResult& r : {pm_schedule(inst, 2.5, T), pcg_schedule(inst, T)}) {
      CHECK(check_radio_constraints(inst, r.schedule).empty());
      CHECK(check_coverage(inst, r.schedule) == r.uncovered);
      CHECK(r.colours <= T);
      CHECK(effective_throughput(inst, r.schedule) <= throughput(inst, r.schedule));
    }
  }
}
