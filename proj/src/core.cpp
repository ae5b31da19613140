#include "sweetspot/core.hpp"

#include <cmath>
#include <stdexcept>

namespace sweetspot::core {

void ZoneSchema::validate() const {
  const int k = tiers();
  if (k < 1) {
    throw std::invalid_argument("ZoneSchema: at least one tier required");
  }
  if (boundaries.size() != scores.size() + 1) {
    throw std::invalid_argument("ZoneSchema: boundaries must have K + 1 entries");
  }
  if (boundaries.front() != 1.0 || boundaries.back() != 0.0) {
    throw std::invalid_argument("ZoneSchema: boundaries must run from 1 to 0");
  }
  for (std::size_t i = 1; i < boundaries.size(); ++i) {
    if (!(boundaries[i - 1] > boundaries[i])) {
      throw std::invalid_argument("ZoneSchema: boundaries must strictly decrease");
    }
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] < 0.0 || scores[i] > 1.0) {
      throw std::invalid_argument("ZoneSchema: scores must lie in [0, 1]");
    }
    if (i > 0 && !(scores[i - 1] > scores[i])) {
      throw std::invalid_argument("ZoneSchema: scores must strictly decrease");
    }
  }
}

ZoneSchema ZoneSchema::uniform(int tiers) {
  if (tiers < 1) {
    throw std::invalid_argument("ZoneSchema::uniform: tiers must be >= 1");
  }
  ZoneSchema schema;
  schema.boundaries.resize(tiers + 1);
  schema.scores.resize(tiers);
  for (int k = 0; k <= tiers; ++k) {
    schema.boundaries[k] = static_cast<double>(tiers - k) / tiers;
  }
  for (int k = 1; k <= tiers; ++k) {
    schema.scores[k - 1] = schema.boundaries[k - 1];
  }
  schema.validate();
  return schema;
}

ZoneSchema ZoneSchema::sigma_levels() {
  ZoneSchema schema;
  schema.boundaries = {1.0, std::exp(-0.5), std::exp(-2.0), std::exp(-4.5), 0.0};
  schema.scores = {1.0, 0.75, 0.5, 0.25};
  schema.validate();
  return schema;
}

void RewardConfig::validate() const {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("RewardConfig: alpha must be > 0");
  }
  if (schema) schema->validate();
}

double aggregate_proximity(std::span<const StepRecord> steps) {
  if (steps.empty()) {
    throw std::invalid_argument("aggregate_proximity: empty step list");
  }
  double sum = 0.0;
  for (const StepRecord& step : steps) {
    if (step.proximity < 0.0 || step.proximity > 1.0) {
      throw std::invalid_argument("aggregate_proximity: proximity outside [0, 1]");
    }
    sum += step.proximity;
  }
  return sum / static_cast<double>(steps.size());
}

double discretize(double score, const ZoneSchema& schema) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw std::invalid_argument("discretize: score outside [0, 1]");
  }
  const int k = schema.tiers();
  for (int i = 1; i < k; ++i) {
    if (score >= schema.boundaries[i]) return schema.scores[i - 1];
  }
  return schema.scores[k - 1];
}

RewardRecord compose_reward(int correct, double s_raw, const RewardConfig& config) {
  if (correct != 0 && correct != 1) {
    throw std::invalid_argument("compose_reward: correct must be 0 or 1");
  }
  if (!(s_raw >= 0.0 && s_raw <= 1.0)) {
    throw std::invalid_argument("compose_reward: raw score outside [0, 1]");
  }
  config.validate();

  RewardRecord record;
  record.correct = correct;
  record.s_raw = s_raw;
  switch (config.mode) {
    case RewardMode::binary:
      record.s_hat = 0.0;
      record.reward = correct;
      break;
    case RewardMode::continuous:
      record.s_hat = 0.0;
      record.reward = s_raw;
      break;
    case RewardMode::ssl:
      // Zero raw proximity carries no tier bonus under any schema; the lowest
      // zone's score applies only to scores strictly inside it.
      if (s_raw == 0.0) {
        record.s_hat = 0.0;
      } else {
        record.s_hat = config.schema ? discretize(s_raw, *config.schema) : s_raw;
      }
      record.reward = correct + config.alpha * record.s_hat;
      break;
  }
  return record;
}

}  // namespace sweetspot::core
