#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "sinrsched/radio.hpp"
#include "test_support.hpp"

using namespace sinrsched;
using namespace sinrsched::testing;

TEST_CASE("link gain at fixed distances") {
  const auto inst = make_instance({{0, 0}, {1, 0}, {2, 0}, {0, 2.5}}, {{0, 1}}, radio(10, 1e-3, 1));
  CHECK(link_gain(inst, 0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(link_gain(inst, 0, 2) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(link_gain(inst, 0, 3) == doctest::Approx(0.0256).epsilon(1e-14));
}

TEST_CASE("link gain rejects degenerate pairs") {
  auto inst = make_instance({{0, 0}, {1, 0}}, {{0, 1}}, radio(10, 1e-3, 1));
  CHECK_THROWS_AS(link_gain(inst, 0, 0), std::domain_error);
  CHECK_THROWS_AS(link_gain(inst, 0, 7), std::domain_error);
  inst.nodes[1].x = 1e-7;
  CHECK_THROWS_AS(link_gain(inst, 0, 1), std::domain_error);
}

TEST_CASE("link gain is strictly antitone in distance") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const double alpha = 2.01 + 4.0 * unit(rng);
    const double d1 = 1e-3 + 10.0 * unit(rng);
    const double d2 = d1 * (1.0 + 1e-6 + unit(rng));
    const auto inst = make_instance({{0, 0}, {d1, 0}, {0, d2}}, {{0, 1}}, radio(1, 0, 1, alpha));
    CHECK(link_gain(inst, 0, 1) > link_gain(inst, 0, 2));
  }
}

TEST_CASE("sinr without interference is P g / N") {
  const auto inst = make_instance({{0, 0}, {1, 0}}, {{0, 1}}, radio(10, 0.001, 1));
  CHECK(sinr_at_receiver(inst, 0, {}) == doctest::Approx(1000.0).epsilon(1e-15));

  const auto far = make_instance({{0, 0}, {0.7, 0.3}}, {{0, 1}}, default_radio());
  const double d = std::hypot(0.7, 0.3);
  CHECK(sinr_at_receiver(far, 0, {}) ==
        far.radio.tx_power * std::pow(d, -4.0) / far.radio.noise);
}

TEST_CASE("sinr with one interferer two units from the receiver") {
  const auto inst = sinr16_pair(10.0);
  const LinkId other[] = {1};
  CHECK(sinr_at_receiver(inst, 0, other) == doctest::Approx(16.0).epsilon(1e-14));
  CHECK(sinr_at_receiver(inst, 0, other) == doctest::Approx(oracle_sinr(inst, 0, {1})));
}

TEST_CASE("sinr errors and half-duplex clash") {
  const auto inst = make_instance({{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 2}}, default_radio());
  const LinkId self[] = {0};
  CHECK_THROWS_AS(sinr_at_receiver(inst, 0, self), std::domain_error);
  const LinkId bogus[] = {9};
  CHECK_THROWS_AS(sinr_at_receiver(inst, 0, bogus), std::domain_error);
  const LinkId relay[] = {1};
  CHECK(sinr_at_receiver(inst, 0, relay) == 0.0);
}

TEST_CASE("interference only ever lowers sinr") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_instance(rng, 6, 4.0, false);
    std::vector<LinkId> small, large;
    for (LinkId k = 1; k < 6; ++k) {
      const bool in_small = rng() % 2 == 0;
      if (in_small) small.push_back(k);
      if (in_small || rng() % 2 == 0) large.push_back(k);
    }
    const double a = sinr_at_receiver(inst, 0, small);
    const double b = sinr_at_receiver(inst, 0, large);
    CHECK(a >= b);
    CHECK(a == doctest::Approx(oracle_sinr(inst, 0, small)).epsilon(1e-12));
    if (large.size() > small.size()) CHECK(a > b);
  }
}

TEST_CASE("decibel conversions") {
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(db_to_linear(0.0) == 1.0);
  // -90 dBm is 1e-12 W, i.e. 1e-9 mW.
  CHECK(dbm_to_mw(-90.0) == doctest::Approx(1e-9).epsilon(1e-12));
  CHECK_THROWS_AS(linear_to_db(0.0), std::domain_error);
  CHECK_THROWS_AS(linear_to_db(-3.0), std::domain_error);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = -200.0 + 400.0 * unit(rng);
    const double back = linear_to_db(db_to_linear(x));
    CHECK(std::abs(back - x) <= 1e-12 * std::max(1.0, std::abs(x)));
  }
}

TEST_CASE("default transmit power gives 20 dB margin at unit distance") {
  const double p = default_tx_power(10.0, 1e-9);
  CHECK(p == doctest::Approx(1e-6));
  const auto inst = make_instance({{0, 0}, {1, 0}}, {{0, 1}}, default_radio());
  CHECK(sinr_at_receiver(inst, 0, {}) == doctest::Approx(100.0 * inst.radio.beta));
}

TEST_CASE("instance validation") {
  const RadioParams r = default_radio();
  CHECK_THROWS_AS(make_instance({{0, 0}, {0, 0}}, {{0, 1}}, r), std::invalid_argument);
  CHECK_THROWS_AS(make_instance({{0, 0}, {1, 0}}, {{0, 0}}, r), std::invalid_argument);
  CHECK_THROWS_AS(make_instance({{0, 0}, {1, 0}}, {{0, 2}}, r), std::invalid_argument);
  CHECK_THROWS_AS(make_instance({{0, 0}, {1, 0}}, {}, r), std::invalid_argument);
  CHECK_THROWS_AS(make_instance({{0, 0}, {1e-7, 0}}, {{0, 1}}, r), std::invalid_argument);
  CHECK_THROWS_AS(make_instance({{0, 0}, {1, 0}}, {{0, 1}}, radio(10, 1e-9, 1e-6, 2.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_instance({{0, 0}, {1, 0}}, {{0, 1}}, radio(0.5, 1e-9, 1e-6)),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_instance({{0, 0}, {1, 0}}, {{0, 1}}, r, {0.0}), std::invalid_argument);
  CHECK_NOTHROW(make_instance({{0, 0}, {1, 0}}, {{0, 1}}, r));
}
