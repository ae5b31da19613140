#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sweetspot/core.hpp"
#include "sweetspot/rng.hpp"

using namespace sweetspot;
using core::RewardConfig;
using core::RewardMode;
using core::StepRecord;
using core::ZoneSchema;

namespace {

// Independent interval-lookup oracle: scans every zone [b_k, b_{k-1}) plus the
// closed top edge, unrelated to the threshold walk in the implementation.
double discretize_oracle(double s, const ZoneSchema& schema) {
  const int k = schema.tiers();
  for (int i = 1; i <= k; ++i) {
    const double lo = schema.boundaries[i];
    const double hi = schema.boundaries[i - 1];
    if ((s >= lo && s < hi) || (i == 1 && s == 1.0)) return schema.scores[i - 1];
  }
  return schema.scores[k - 1];
}

ZoneSchema random_schema(RngStream& rng) {
  const int k = 1 + rng.next_int(6);
  ZoneSchema schema;
  schema.boundaries.resize(k + 1);
  schema.scores.resize(k);
  schema.boundaries[0] = 1.0;
  schema.boundaries[k] = 0.0;
  for (int i = 1; i < k; ++i) {
    schema.boundaries[i] = rng.next_double();
  }
  std::sort(schema.boundaries.begin(), schema.boundaries.end(),
            std::greater<double>());
  for (int i = 1; i < k; ++i) {
    // collisions would violate strict monotonicity; nudge apart
    if (schema.boundaries[i] >= schema.boundaries[i - 1]) {
      schema.boundaries[i] = schema.boundaries[i - 1] / 2.0;
    }
  }
  double top = 1.0;
  for (int i = 0; i < k; ++i) {
    schema.scores[i] = top * (0.4 + 0.5 * rng.next_double());
    top = schema.scores[i];
  }
  schema.validate();
  return schema;
}

}  // namespace

TEST_CASE("aggregate_proximity is the step mean") {
  auto agg = [](std::vector<double> values) {
    std::vector<StepRecord> steps;
    for (double v : values) steps.push_back({v, core::StepKind::symbolic});
    return core::aggregate_proximity(steps);
  };
  CHECK(agg({1.0, 0.5, 0.0}) == doctest::Approx(0.5));
  CHECK(agg({0.7}) == doctest::Approx(0.7));
  CHECK(agg({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(0.25));
  CHECK_THROWS_AS(core::aggregate_proximity({}), std::invalid_argument);
  CHECK_THROWS_AS(agg({0.5, 1.5}), std::invalid_argument);
}

TEST_CASE("uniform presets") {
  const ZoneSchema k2 = ZoneSchema::uniform(2);
  CHECK(k2.boundaries == std::vector<double>{1.0, 0.5, 0.0});
  CHECK(k2.scores == std::vector<double>{1.0, 0.5});
  const ZoneSchema k4 = ZoneSchema::uniform(4);
  CHECK(k4.boundaries == std::vector<double>{1.0, 0.75, 0.5, 0.25, 0.0});
  CHECK(k4.scores == std::vector<double>{1.0, 0.75, 0.5, 0.25});
  CHECK(ZoneSchema::uniform(8).tiers() == 8);
  CHECK_THROWS_AS(ZoneSchema::uniform(0), std::invalid_argument);
}

TEST_CASE("schema validation rejects malformed inputs") {
  ZoneSchema schema = ZoneSchema::uniform(4);
  schema.boundaries[0] = 0.9;
  CHECK_THROWS_AS(schema.validate(), std::invalid_argument);
  schema = ZoneSchema::uniform(4);
  schema.scores[2] = schema.scores[1];
  CHECK_THROWS_AS(schema.validate(), std::invalid_argument);
  schema = ZoneSchema::uniform(4);
  schema.boundaries.pop_back();
  CHECK_THROWS_AS(schema.validate(), std::invalid_argument);
}

TEST_CASE("discretize on the 4-tier schema") {
  const ZoneSchema schema = ZoneSchema::uniform(4);
  CHECK(core::discretize(1.0, schema) == 1.0);
  CHECK(core::discretize(0.80, schema) == 1.0);
  CHECK(core::discretize(0.30, schema) == 0.5);
  CHECK(core::discretize(0.0, schema) == 0.25);
  CHECK_THROWS_AS(core::discretize(-0.1, schema), std::invalid_argument);
  CHECK_THROWS_AS(core::discretize(1.1, schema), std::invalid_argument);

  CHECK(core::discretize(0.80, schema) == discretize_oracle(0.80, schema));
  CHECK(core::discretize(0.30, schema) == discretize_oracle(0.30, schema));
  CHECK(core::discretize(0.0, schema) == discretize_oracle(0.0, schema));
}

TEST_CASE("discretize matches the interval oracle on random schemas") {
  RngStream rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const ZoneSchema schema = random_schema(rng);
    for (int i = 0; i < 50; ++i) {
      const double s = rng.next_double();
      CHECK(core::discretize(s, schema) == discretize_oracle(s, schema));
    }
    // boundaries themselves join the higher-scoring zone
    for (std::size_t i = 0; i < schema.boundaries.size(); ++i) {
      const double b = schema.boundaries[i];
      CHECK(core::discretize(b, schema) == discretize_oracle(b, schema));
    }
  }
}

TEST_CASE("monotone tiering") {
  RngStream rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const ZoneSchema schema = random_schema(rng);
    for (int i = 0; i < 30; ++i) {
      const double a = rng.next_double();
      const double b = rng.next_double();
      const double lo = std::min(a, b);
      const double hi = std::max(a, b);
      CHECK(core::discretize(hi, schema) >= core::discretize(lo, schema));
    }
  }
}

TEST_CASE("idempotent discretization when scores sit inside their zones") {
  // The shipped presets put each score on its zone's upper boundary, which
  // belongs to the zone above, so only the top tier is a fixed point there.
  const ZoneSchema preset = ZoneSchema::uniform(4);
  CHECK(core::discretize(preset.scores[0], preset) == preset.scores[0]);
  CHECK(core::discretize(core::discretize(0.8, preset), preset) ==
        core::discretize(0.8, preset));

  ZoneSchema interior;
  interior.boundaries = {1.0, 0.75, 0.5, 0.25, 0.0};
  interior.scores = {0.9, 0.6, 0.3, 0.1};
  interior.validate();
  bool premise = true;
  for (int k = 1; k <= interior.tiers(); ++k) {
    const double s = interior.scores[k - 1];
    const bool in_zone = (s >= interior.boundaries[k] && s < interior.boundaries[k - 1]) ||
                         (k == 1 && s == 1.0);
    premise = premise && in_zone;
  }
  REQUIRE(premise);
  RngStream rng(3);
  for (int i = 0; i < 500; ++i) {
    const double s = rng.next_double();
    const double once = core::discretize(s, interior);
    CHECK(core::discretize(once, interior) == once);
  }
}

TEST_CASE("compose_reward per mode") {
  RewardConfig config;
  config.alpha = 0.2;
  config.schema = ZoneSchema::uniform(4);

  config.mode = RewardMode::ssl;
  core::RewardRecord record = core::compose_reward(1, 0.80, config);
  CHECK(record.s_hat == 1.0);
  CHECK(record.reward == doctest::Approx(1.20).epsilon(1e-12));
  record = core::compose_reward(0, 0.0, config);
  CHECK(record.reward == 0.0);  // zero proximity earns no tier bonus
  CHECK(record.s_hat == 0.0);
  record = core::compose_reward(0, 0.001, config);
  CHECK(record.s_hat == 0.25);  // the lowest zone still covers small scores

  // identity schema: raw blockwise scores pass through
  RewardConfig identity = config;
  identity.schema.reset();
  record = core::compose_reward(0, 0.0, identity);
  CHECK(record.reward == 0.0);
  record = core::compose_reward(0, 0.37, identity);
  CHECK(record.s_hat == 0.37);

  config.mode = RewardMode::binary;
  record = core::compose_reward(1, 0.37, config);
  CHECK(record.reward == 1.0);
  CHECK(record.s_hat == 0.0);

  config.mode = RewardMode::continuous;
  record = core::compose_reward(0, 0.37, config);
  CHECK(record.reward == 0.37);
  CHECK(record.s_hat == 0.0);

  CHECK_THROWS_AS(core::compose_reward(2, 0.5, config), std::invalid_argument);
  CHECK_THROWS_AS(core::compose_reward(1, 1.5, config), std::invalid_argument);
  RewardConfig bad = config;
  bad.alpha = 0.0;
  CHECK_THROWS_AS(core::compose_reward(1, 0.5, bad), std::invalid_argument);
}

TEST_CASE("reward invariants") {
  RngStream rng(11);
  RewardConfig config;
  config.mode = RewardMode::ssl;
  config.alpha = 0.2;
  config.schema = ZoneSchema::uniform(4);
  const double s1 = config.schema->scores.front();
  REQUIRE(config.alpha * s1 < 1.0);

  double best_failed = 0.0;
  double worst_correct = 10.0;
  for (int i = 0; i < 2000; ++i) {
    const int c = rng.next_int(2);
    const double s = rng.next_double();
    const core::RewardRecord record = core::compose_reward(c, s, config);
    CHECK(record.reward >= 0.0);
    CHECK(record.reward <= 1.0 + config.alpha * s1);
    // exact reconstruction of the tier bonus
    CHECK(std::abs((record.reward - c) - config.alpha * record.s_hat) <= 1e-15);
    if (c == 1) worst_correct = std::min(worst_correct, record.reward);
    if (c == 0) best_failed = std::max(best_failed, record.reward);
  }
  // correctness dominance: alpha * s_1 < 1 keeps every correct trajectory above
  // every failed one
  CHECK(worst_correct > best_failed);
}
