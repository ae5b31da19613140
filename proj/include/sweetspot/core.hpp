#pragma once

#include <optional>
#include <span>
#include <vector>

namespace sweetspot::core {

enum class RewardMode { binary, continuous, ssl };

// Ordered proximity zones. Boundaries run from b_0 = 1 down to b_K = 0 and
// tier scores decrease from the top zone outward. Zone k covers
// [boundaries[k], boundaries[k-1]), with the top zone closed at 1.
struct ZoneSchema {
  std::vector<double> boundaries;  // size K + 1
  std::vector<double> scores;      // size K

  int tiers() const { return static_cast<int>(scores.size()); }
  void validate() const;

  // K uniform zones, each score equal to the upper boundary of its zone.
  // uniform(4) is the default training schema; 2 and 8 are the ablation
  // presets.
  static ZoneSchema uniform(int tiers);

  // Gaussian-field zones bounded at the 1/2/3-sigma field levels with scores
  // 1.0 / 0.75 / 0.50 / 0.25.
  static ZoneSchema sigma_levels();
};

enum class StepKind { grounding, symbolic };

struct StepRecord {
  double proximity = 0.0;  // in [0, 1]
  StepKind kind = StepKind::symbolic;
};

struct Trajectory {
  std::vector<StepRecord> steps;  // non-empty
  int correct = 0;                // verifier bit
};

struct RewardConfig {
  RewardMode mode = RewardMode::ssl;
  double alpha = 0.2;
  // Discretization schema for ssl mode. Empty means identity: the raw score
  // is already tiered (grid tasks) and passes through unchanged.
  std::optional<ZoneSchema> schema = ZoneSchema::uniform(4);

  void validate() const;
};

struct RewardRecord {
  int correct = 0;
  double s_raw = 0.0;
  double s_hat = 0.0;
  double reward = 0.0;
};

// Mean of the per-step proximities. Throws std::invalid_argument on an empty
// step list or an out-of-range proximity.
double aggregate_proximity(std::span<const StepRecord> steps);

// Maps a score in [0, 1] to its zone's tier value. A score exactly on a
// boundary joins the higher-scoring zone; the lowest zone covers [0, b_{K-1}).
double discretize(double score, const ZoneSchema& schema);

// binary: reward = correct. continuous: reward = raw score, undiscretized.
// ssl: reward = correct + alpha * discretized score, where a raw score of
// exactly zero (a failed proximity signal) earns no tier bonus.
RewardRecord compose_reward(int correct, double s_raw, const RewardConfig& config);

}  // namespace sweetspot::core
