#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sweetspot/core.hpp"
#include "sweetspot/envs.hpp"

namespace sweetspot::grpo {

struct GrpoConfig {
  int group_size = 8;
  double clip_epsilon = 0.2;
  double kl_coeff = 0.1;
  double learning_rate = 0.1;
  int iterations = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

template <typename Rollout>
struct GroupBatch {
  std::vector<Rollout> rollouts;
  std::vector<double> rewards;
  std::vector<double> advantages;
};

// Group-relative advantages: rewards centered by the group mean.
std::vector<double> group_advantages(std::span<const double> rewards);

namespace detail {

inline void check_finite(double value, const char* what, std::size_t index) {
  if (!std::isfinite(value)) {
    throw std::runtime_error(std::string("grpo: non-finite ") + what +
                             " at rollout " + std::to_string(index));
  }
}

}  // namespace detail

// Ascent gradient of the clipped surrogate minus the KL penalty. With
// policy == old_policy every ratio is 1 and this reduces to the group-mean of
// advantage-weighted score functions.
template <typename Policy, typename Rollout>
std::vector<double> grpo_gradient(const GroupBatch<Rollout>& batch,
                                  const Policy& policy, const Policy& old_policy,
                                  const Policy& ref_policy, const GrpoConfig& config) {
  config.validate();
  const std::size_t n = batch.rollouts.size();
  if (n < 2 || batch.advantages.size() != n) {
    throw std::invalid_argument("grpo_gradient: batch needs >= 2 rollouts with advantages");
  }
  std::vector<double> gradient(policy.params().size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double lp = policy.log_prob(batch.rollouts[i]);
    const double lp_old = old_policy.log_prob(batch.rollouts[i]);
    const double lp_ref = ref_policy.log_prob(batch.rollouts[i]);
    detail::check_finite(lp, "log-prob", i);
    detail::check_finite(lp_old, "old log-prob", i);
    detail::check_finite(lp_ref, "reference log-prob", i);

    const double ratio = std::exp(lp - lp_old);
    const double advantage = batch.advantages[i];
    const double clipped =
        std::clamp(ratio, 1.0 - config.clip_epsilon, 1.0 + config.clip_epsilon);
    const bool unclipped_active = ratio * advantage <= clipped * advantage;
    const bool inside_clip = ratio > 1.0 - config.clip_epsilon &&
                             ratio < 1.0 + config.clip_epsilon;
    const double surrogate_coeff =
        (unclipped_active || inside_clip) ? ratio * advantage : 0.0;

    // KL penalty uses the non-negative estimator r - 1 - log r with
    // r = pi_ref / pi_theta; its gradient (1 - r) * score vanishes at the
    // reference policy.
    const double ref_ratio = std::exp(lp_ref - lp);
    const std::vector<double> score = policy.score_gradient(batch.rollouts[i]);
    const double coeff = surrogate_coeff - config.kl_coeff * (1.0 - ref_ratio);
    for (std::size_t k = 0; k < gradient.size(); ++k) {
      gradient[k] += coeff * score[k];
    }
  }
  for (double& g : gradient) g /= static_cast<double>(n);
  return gradient;
}

// Scalar value of the same objective, for finite-difference checks.
template <typename Policy, typename Rollout>
double grpo_surrogate(const GroupBatch<Rollout>& batch, const Policy& policy,
                      const Policy& old_policy, const Policy& ref_policy,
                      const GrpoConfig& config) {
  const std::size_t n = batch.rollouts.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lp = policy.log_prob(batch.rollouts[i]);
    const double lp_old = old_policy.log_prob(batch.rollouts[i]);
    const double lp_ref = ref_policy.log_prob(batch.rollouts[i]);
    const double ratio = std::exp(lp - lp_old);
    const double clipped =
        std::clamp(ratio, 1.0 - config.clip_epsilon, 1.0 + config.clip_epsilon);
    const double advantage = batch.advantages[i];
    total += std::min(ratio * advantage, clipped * advantage);
    const double ref_ratio = std::exp(lp_ref - lp);
    total -= config.kl_coeff * (ref_ratio - 1.0 - std::log(ref_ratio));
  }
  return total / static_cast<double>(n);
}

// Non-negative per-sample KL estimate to the reference policy,
// mean(r - 1 - log r) with r the reference/policy likelihood ratio.
template <typename Policy, typename Rollout>
double kl_estimate(std::span<const Rollout> rollouts, const Policy& policy,
                   const Policy& ref_policy) {
  double total = 0.0;
  for (const Rollout& rollout : rollouts) {
    const double delta = ref_policy.log_prob(rollout) - policy.log_prob(rollout);
    total += std::exp(delta) - 1.0 - delta;
  }
  return rollouts.empty() ? 0.0 : total / static_cast<double>(rollouts.size());
}

struct MetricsRow {
  int iteration = 0;
  double success_rate = 0.0;
  double mean_s_raw = 0.0;
  double mean_reward = 0.0;
  double grad_norm = 0.0;
  double kl_to_ref = 0.0;
};

struct TrainingMetrics {
  std::vector<MetricsRow> rows;
};

void write_metrics_csv(std::ostream& out, const TrainingMetrics& metrics);

enum class EnvKind { maze, click };

struct EnvSetup {
  EnvKind kind = EnvKind::maze;

  // maze env
  int maze_height = 9;
  int maze_width = 9;
  int pool_size = 1;
  int max_steps = 0;  // 0 -> 4 * H * W

  // click env
  gui::BoundingBox screen{0.0, 0.0, 200.0, 100.0};
  gui::BoundingBox target{80.0, 40.0, 120.0, 60.0};
  double init_mean_x = 60.0;
  double init_mean_y = 35.0;
  double init_std = 30.0;

  int eval_episodes = 200;

  void validate() const;
};

struct TrainHooks {
  std::function<void(int, const GroupBatch<envs::MazeRollout>&)> on_maze_batch;
  std::function<void(int, const GroupBatch<envs::ClickRollout>&)> on_click_batch;
};

struct TrainResult {
  EnvKind kind = EnvKind::maze;
  TrainingMetrics metrics;
  double final_success = 0.0;
  double final_offset_norm = 0.0;  // click env only
  std::optional<envs::MazePolicy> maze_policy;
  std::optional<envs::MazePolicy> maze_initial;
  std::optional<envs::ClickPolicy> click_policy;
  std::optional<envs::ClickPolicy> click_initial;
  std::vector<grid::MazeSpec> maze_pool;
};

// One gradient step per sampled group, old policy snapshotted each batch,
// reference fixed at initialization. Fully deterministic per seed; the
// sampled trajectories do not depend on the reward mode.
TrainResult train(const EnvSetup& setup, const core::RewardConfig& reward,
                  const GrpoConfig& config, const TrainHooks& hooks = {});

double evaluate_maze_success(const envs::MazePolicy& policy,
                             const std::vector<grid::MazeSpec>& pool, int max_steps,
                             int episodes, std::uint64_t seed);

struct ClickEval {
  double success_rate = 0.0;
  double mean_offset_norm = 0.0;
};

ClickEval evaluate_click(const envs::ClickPolicy& policy,
                         const gui::BoundingBox& target, int episodes,
                         std::uint64_t seed);

}  // namespace sweetspot::grpo
