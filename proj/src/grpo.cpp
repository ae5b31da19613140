#include "sweetspot/grpo.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "sweetspot/text.hpp"

namespace sweetspot::grpo {

namespace {

constexpr std::uint64_t kTagRollout = 1;
constexpr std::uint64_t kTagTask = 2;
constexpr std::uint64_t kTagEval = 3;
constexpr std::uint64_t kTagPool = 4;

template <typename Policy, typename Rollout, typename RollFn>
TrainingMetrics run_loop(Policy& policy, const Policy& ref_policy,
                         const std::function<double(int, double)>& reward_fn,
                         const GrpoConfig& config, int task_count, RollFn roll,
                         const std::function<void(int, const GroupBatch<Rollout>&)>& hook) {
  TrainingMetrics metrics;
  RngStream task_rng(config.seed, stream_id(kTagTask, 0));
  const int n = config.group_size;

  auto run_batch = [&](int iteration, bool update) {
    const int task = task_count == 1 ? 0 : task_rng.next_int(task_count);
    GroupBatch<Rollout> batch;
    batch.rollouts.reserve(n);
    for (int i = 0; i < n; ++i) {
      RngStream rng(config.seed,
                    stream_id(kTagRollout,
                              static_cast<std::uint64_t>(iteration) * n + i));
      batch.rollouts.push_back(roll(policy, task, rng));
    }
    batch.rewards.reserve(n);
    for (const Rollout& rollout : batch.rollouts) {
      batch.rewards.push_back(reward_fn(rollout.correct, rollout.s_raw));
    }
    batch.advantages = group_advantages(batch.rewards);

    MetricsRow row;
    row.iteration = iteration;
    for (std::size_t i = 0; i < batch.rollouts.size(); ++i) {
      row.success_rate += batch.rollouts[i].correct;
      row.mean_s_raw += batch.rollouts[i].s_raw;
      row.mean_reward += batch.rewards[i];
    }
    row.success_rate /= n;
    row.mean_s_raw /= n;
    row.mean_reward /= n;
    row.kl_to_ref = kl_estimate<Policy, Rollout>(batch.rollouts, policy, ref_policy);

    if (update) {
      const Policy old_policy = policy;
      const std::vector<double> gradient =
          grpo_gradient(batch, policy, old_policy, ref_policy, config);
      double norm_sq = 0.0;
      for (const double g : gradient) norm_sq += g * g;
      row.grad_norm = std::sqrt(norm_sq);
      auto&& params = policy.params();
      for (std::size_t k = 0; k < gradient.size(); ++k) {
        params[k] += config.learning_rate * gradient[k];
      }
    }
    if (hook) hook(iteration, batch);
    metrics.rows.push_back(row);
  };

  if (config.iterations == 0) {
    run_batch(0, false);
  }
  for (int iteration = 1; iteration <= config.iterations; ++iteration) {
    run_batch(iteration, true);
  }
  return metrics;
}

}  // namespace

void GrpoConfig::validate() const {
  if (group_size < 2) throw std::invalid_argument("GrpoConfig: group_size must be >= 2");
  if (!(clip_epsilon > 0.0 && clip_epsilon < 1.0)) {
    throw std::invalid_argument("GrpoConfig: clip_epsilon must lie in (0, 1)");
  }
  if (kl_coeff < 0.0) throw std::invalid_argument("GrpoConfig: kl_coeff must be >= 0");
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("GrpoConfig: learning_rate must be > 0");
  }
  if (iterations < 0) throw std::invalid_argument("GrpoConfig: iterations must be >= 0");
}

void EnvSetup::validate() const {
  if (kind == EnvKind::maze) {
    if (pool_size < 1) throw std::invalid_argument("EnvSetup: pool_size must be >= 1");
    if (max_steps < 0) throw std::invalid_argument("EnvSetup: max_steps must be >= 0");
  } else {
    screen.validate();
    target.validate();
    if (!(init_std > 0.0)) throw std::invalid_argument("EnvSetup: init_std must be > 0");
  }
  if (eval_episodes < 1) {
    throw std::invalid_argument("EnvSetup: eval_episodes must be >= 1");
  }
}

std::vector<double> group_advantages(std::span<const double> rewards) {
  if (rewards.size() < 2) {
    throw std::invalid_argument("group_advantages: need at least two rewards");
  }
  // Center shifted rewards so identical rewards yield exactly zero advantages.
  const double shift = rewards.front();
  double mean = 0.0;
  for (const double r : rewards) mean += r - shift;
  mean /= static_cast<double>(rewards.size());
  std::vector<double> advantages(rewards.size());
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    advantages[i] = (rewards[i] - shift) - mean;
  }
  return advantages;
}

void write_metrics_csv(std::ostream& out, const TrainingMetrics& metrics) {
  out << "iteration,success_rate,mean_S_raw,mean_reward,grad_norm,kl_to_ref\n";
  for (const MetricsRow& row : metrics.rows) {
    out << fmt(row.iteration) << ',' << fmt(row.success_rate) << ','
        << fmt(row.mean_s_raw) << ',' << fmt(row.mean_reward) << ','
        << fmt(row.grad_norm) << ',' << fmt(row.kl_to_ref) << '\n';
  }
}

TrainResult train(const EnvSetup& setup, const core::RewardConfig& reward,
                  const GrpoConfig& config, const TrainHooks& hooks) {
  setup.validate();
  reward.validate();
  config.validate();

  TrainResult result;
  result.kind = setup.kind;

  if (setup.kind == EnvKind::maze) {
    const int max_steps =
        setup.max_steps > 0 ? setup.max_steps : 4 * setup.maze_height * setup.maze_width;
    // One carved layout per run; pool entries beyond the first vary the
    // start/goal endpoints so every task shares the policy's cell table.
    RngStream pool_rng(config.seed, stream_id(kTagPool, 0));
    const grid::MazeSpec base = envs::generate_maze(
        setup.maze_height, setup.maze_width, pool_rng.next_u64());
    std::vector<grid::Cell> nodes;
    for (int r = 0; r < base.walls.height; r += 2) {
      for (int c = 0; c < base.walls.width; c += 2) {
        if (base.walls.at(r, c) == 0) nodes.push_back({r, c});
      }
    }
    std::vector<grid::MazeSpec> pool;
    std::vector<grid::Path> references;
    pool.reserve(setup.pool_size);
    pool.push_back(base);
    references.push_back(envs::bfs_shortest_path(base));
    for (int i = 1; i < setup.pool_size; ++i) {
      grid::MazeSpec variant = base;
      do {
        variant.start = nodes[pool_rng.next_int(static_cast<int>(nodes.size()))];
        variant.goal = nodes[pool_rng.next_int(static_cast<int>(nodes.size()))];
      } while (variant.start == variant.goal);
      pool.push_back(variant);
      references.push_back(envs::bfs_shortest_path(variant));
    }

    envs::MazePolicy policy = envs::MazePolicy::uniform(pool.front());
    const envs::MazePolicy ref_policy = policy;
    result.maze_initial = policy;

    auto reward_fn = [&reward](int correct, double s_raw) {
      return core::compose_reward(correct, s_raw, reward).reward;
    };
    auto roll = [&](const envs::MazePolicy& p, int task, RngStream& rng) {
      envs::MazeRollout rollout =
          envs::rollout_maze(p, pool[task], max_steps, rng, &references[task]);
      if (rollout.correct != grid::maze_verify(rollout.path, pool[task])) {
        throw std::logic_error("train: rollout correctness out of sync with verifier");
      }
      return rollout;
    };
    result.metrics = run_loop<envs::MazePolicy, envs::MazeRollout>(
        policy, ref_policy, reward_fn, config, setup.pool_size, roll,
        hooks.on_maze_batch);
    result.final_success = evaluate_maze_success(policy, pool, max_steps,
                                                 setup.eval_episodes, config.seed);
    result.maze_policy = std::move(policy);
    result.maze_pool = std::move(pool);
  } else {
    envs::ClickPolicy policy = envs::ClickPolicy::at(
        setup.init_mean_x, setup.init_mean_y, setup.init_std, setup.screen);
    const envs::ClickPolicy ref_policy = policy;
    result.click_initial = policy;

    auto reward_fn = [&reward](int correct, double s_raw) {
      return core::compose_reward(correct, s_raw, reward).reward;
    };
    auto roll = [&](const envs::ClickPolicy& p, int, RngStream& rng) {
      return envs::rollout_click(p, setup.target, rng);
    };
    result.metrics = run_loop<envs::ClickPolicy, envs::ClickRollout>(
        policy, ref_policy, reward_fn, config, 1, roll, hooks.on_click_batch);
    const ClickEval eval =
        evaluate_click(policy, setup.target, setup.eval_episodes, config.seed);
    result.final_success = eval.success_rate;
    result.final_offset_norm = eval.mean_offset_norm;
    result.click_policy = std::move(policy);
  }
  return result;
}

double evaluate_maze_success(const envs::MazePolicy& policy,
                             const std::vector<grid::MazeSpec>& pool, int max_steps,
                             int episodes, std::uint64_t seed) {
  if (pool.empty() || episodes < 1) {
    throw std::invalid_argument("evaluate_maze_success: empty pool or episodes < 1");
  }
  std::vector<grid::Path> references;
  references.reserve(pool.size());
  for (const grid::MazeSpec& maze : pool) {
    references.push_back(envs::bfs_shortest_path(maze));
  }
  double successes = 0.0;
  for (int i = 0; i < episodes; ++i) {
    const std::size_t task = static_cast<std::size_t>(i) % pool.size();
    RngStream rng(seed, stream_id(kTagEval, i));
    successes += envs::rollout_maze(policy, pool[task], max_steps, rng,
                                    &references[task])
                     .correct;
  }
  return successes / episodes;
}

ClickEval evaluate_click(const envs::ClickPolicy& policy,
                         const gui::BoundingBox& target, int episodes,
                         std::uint64_t seed) {
  if (episodes < 1) {
    throw std::invalid_argument("evaluate_click: episodes must be >= 1");
  }
  std::vector<envs::ClickRollout> rollouts;
  rollouts.reserve(episodes);
  for (int i = 0; i < episodes; ++i) {
    RngStream rng(seed, stream_id(kTagEval, i));
    rollouts.push_back(envs::rollout_click(policy, target, rng));
  }
  ClickEval eval;
  for (const envs::ClickRollout& rollout : rollouts) {
    eval.success_rate += rollout.correct;
  }
  eval.success_rate /= episodes;
  const gui::BoundingBox targets[1] = {target};
  eval.mean_offset_norm = envs::offset_stats(rollouts, targets).mean_norm;
  return eval;
}

}  // namespace sweetspot::grpo
