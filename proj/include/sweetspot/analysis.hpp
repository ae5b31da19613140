#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sweetspot/core.hpp"
#include "sweetspot/envs.hpp"
#include "sweetspot/grpo.hpp"

namespace sweetspot::analysis {

// Per-trajectory population used by the estimator studies: verifier bit,
// raw score, and the trajectory score function.
struct SampleSet {
  std::vector<int> correct;
  std::vector<double> s;
  std::vector<std::vector<double>> ell;

  std::size_t size() const { return correct.size(); }
  std::size_t dim() const { return ell.empty() ? 0 : ell.front().size(); }
  void validate() const;
};

using RewardFn = std::function<double(int correct, double s)>;

RewardFn make_reward_fn(const core::RewardConfig& config);

// Unit direction of the empirical binary gradient E[(C - mean(C)) ell].
// Throws std::runtime_error when that gradient is degenerate.
std::vector<double> binary_direction(const SampleSet& samples);

// Empirical covariance between the raw score and the projected score function.
double alignment_cov(const SampleSet& samples, std::span<const double> u);

struct SnrEstimate {
  double snr = 0.0;
  double half_width = 0.0;  // bootstrap percentile half-width
  double mean = 0.0;        // mean of the projected estimator across batches
  double stdev = 0.0;
  bool infinite = false;    // zero variance across batches
};

// Monte Carlo projected signal-to-noise ratio of the group-centered gradient
// estimator: batches of batch_size are resampled from the set, projected onto
// u, and |mean| / stdev is reported across batches.
SnrEstimate projected_snr(const SampleSet& samples, const RewardFn& reward,
                          std::span<const double> u, int batch_size,
                          int num_batches, std::uint64_t seed);

struct VarianceEstimate {
  double variance = 0.0;
  double half_width = 0.0;
};

// Variance across resampled batches of the same projected estimator.
VarianceEstimate gradient_variance(const SampleSet& samples, const RewardFn& reward,
                                   std::span<const double> u, int batch_size,
                                   int num_batches, std::uint64_t seed);

enum class OrderingVerdict { consistent, violated, not_applicable };

struct OrderingReport {
  double sr_a = 0.0, sr_b = 0.0;
  double mu_s_a = 0.0, mu_s_b = 0.0;
  double j_a = 0.0, j_b = 0.0;
  OrderingVerdict verdict = OrderingVerdict::not_applicable;
};

const char* to_string(OrderingVerdict verdict);

// Checks the equal-success-rate ordering identity: with SR_A = SR_B exactly,
// the sign of J_A - J_B must match the sign of mu_A - mu_B.
OrderingReport ordering_check(const SampleSet& a, const SampleSet& b, double alpha);

// Fraction of trajectories with raw score above 0.7 but failed verification.
double hacking_ratio(std::span<const double> s_raw, std::span<const int> correct);

struct SnrReport {
  std::vector<double> u;
  double snr_binary = 0.0, hw_binary = 0.0;
  double snr_continuous = 0.0, hw_continuous = 0.0;
  double snr_ssl = 0.0, hw_ssl = 0.0;
  double alignment = 0.0;
  int batch_size = 0;
  int num_batches = 0;
  std::size_t samples = 0;
};

// Full comparison on one sample set: binary direction, alignment covariance,
// and projected SNR under all three reward modes.
SnrReport snr_report(const SampleSet& samples, const core::RewardConfig& ssl_config,
                     int batch_size, int num_batches, std::uint64_t seed);

void write_snr_report(std::ostream& out, const SnrReport& report);

// Sample dump format: one record per line, "C S ell_0 ... ell_{d-1}".
SampleSet read_samples(std::istream& in);
void write_samples(std::ostream& out, const SampleSet& samples);

SampleSet collect_click_samples(const envs::ClickPolicy& policy,
                                const gui::BoundingBox& target, int count,
                                std::uint64_t seed);
SampleSet collect_maze_samples(const envs::MazePolicy& policy,
                               const grid::MazeSpec& maze, int max_steps, int count,
                               std::uint64_t seed);

struct SweepCell {
  core::RewardMode mode = core::RewardMode::binary;
  long budget = 0;
  std::uint64_t seed = 0;
  double success_rate = 0.0;
};

// Trains each (mode, budget, seed) cell with total rollouts capped at the
// budget and records the final evaluated success rate.
std::vector<SweepCell> efficiency_sweep(const grpo::EnvSetup& setup,
                                        const core::RewardConfig& base_reward,
                                        const grpo::GrpoConfig& base_config,
                                        std::span<const core::RewardMode> modes,
                                        std::span<const long> budgets,
                                        std::span<const std::uint64_t> seeds);

void write_sweep_csv(std::ostream& out, std::span<const SweepCell> cells);

struct AblationCell {
  int tiers = 0;
  std::uint64_t seed = 0;
  double success_rate = 0.0;
};

// Trains ssl mode with the uniform preset schema for each zone count.
std::vector<AblationCell> zone_ablation(const grpo::EnvSetup& setup,
                                        const core::RewardConfig& base_reward,
                                        const grpo::GrpoConfig& base_config,
                                        std::span<const int> tier_counts,
                                        std::span<const std::uint64_t> seeds);

void write_ablation_csv(std::ostream& out, std::span<const AblationCell> cells);

}  // namespace sweetspot::analysis
