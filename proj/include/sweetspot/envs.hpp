#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sweetspot/core.hpp"
#include "sweetspot/grid.hpp"
#include "sweetspot/gui.hpp"
#include "sweetspot/rng.hpp"

namespace sweetspot::envs {

// Move order is fixed everywhere: up, down, left, right.
inline constexpr std::array<grid::Cell, 4> kMoves = {
    grid::Cell{-1, 0}, grid::Cell{1, 0}, grid::Cell{0, -1}, grid::Cell{0, 1}};

struct MazeRollout {
  core::Trajectory trajectory;
  double s_raw = 0.0;
  int correct = 0;
  double log_prob = 0.0;
  std::vector<double> score_gradient;
  grid::Path path;                   // visited open cells, starts at start
  std::vector<int> decision_cells;   // flat cell index where each move was taken
  std::vector<int> actions;          // sampled move per decision
};

// Tabular softmax policy: four logits per open maze cell.
struct MazePolicy {
  int height = 0;
  int width = 0;
  std::vector<int> cell_offset;  // flat cell -> logit base index, -1 for walls
  std::vector<double> logits;

  static MazePolicy uniform(const grid::MazeSpec& maze);

  std::size_t param_count() const { return logits.size(); }
  std::vector<double>& params() { return logits; }
  const std::vector<double>& params() const { return logits; }

  int offset_at(int row, int col) const { return cell_offset[static_cast<std::size_t>(row) * width + col]; }
  std::array<double, 4> action_probs(int row, int col) const;

  double log_prob(const MazeRollout& rollout) const;
  std::vector<double> score_gradient(const MazeRollout& rollout) const;
};

struct ClickRollout {
  core::Trajectory trajectory;
  double s_raw = 0.0;
  int correct = 0;
  double log_prob = 0.0;
  std::vector<double> score_gradient;
  gui::Point sample;   // pre-clamp Gaussian draw; gradients use this
  gui::Point emitted;  // clamped to screen; scoring uses this
};

// Axis-aligned Gaussian click policy over (mean, log_std). The optimization
// vector stores the mean in units of kMeanScale pixels so its gradients match
// the O(1) log-std gradients and one fixed learning rate serves all four
// coordinates.
struct ClickPolicy {
  static constexpr double kMeanScale = 20.0;

  std::array<double, 4> values{};  // mean_x/kMeanScale, mean_y/kMeanScale, log_stds
  gui::BoundingBox screen;

  static ClickPolicy at(double mean_x, double mean_y, double stddev,
                        const gui::BoundingBox& screen);

  std::size_t param_count() const { return values.size(); }
  std::span<double> params() { return values; }
  std::span<const double> params() const { return values; }

  double mean_x() const { return kMeanScale * values[0]; }
  double mean_y() const { return kMeanScale * values[1]; }
  void set_mean(double x, double y);
  double std_x() const;
  double std_y() const;

  double log_prob(const ClickRollout& rollout) const;
  std::vector<double> score_gradient(const ClickRollout& rollout) const;
};

// Perfect maze carved by seeded depth-first backtracking on odd dimensions
// >= 5. Start is the top-left open cell, goal the bottom-right one.
grid::MazeSpec generate_maze(int height, int width, std::uint64_t seed);

// Shortest path by breadth-first search; ties broken by the fixed move order.
// Throws std::runtime_error when the goal is unreachable.
grid::Path bfs_shortest_path(const grid::MazeSpec& maze);

// Samples moves until the goal is reached, an illegal move ends the episode,
// or max_steps runs out. Raw score compares the emitted path's occupancy
// against the reference path (BFS unless a precomputed one is supplied).
MazeRollout rollout_maze(const MazePolicy& policy, const grid::MazeSpec& maze,
                         int max_steps, RngStream& rng,
                         const grid::Path* reference = nullptr);

struct MazeScore {
  double s_raw = 0.0;
  int correct = 0;
};

// Offline scoring of a predicted path against a maze's BFS reference.
MazeScore score_maze_path(const grid::Path& pred, const grid::MazeSpec& maze);

// Single Gaussian click against the target box; the emitted point is clamped
// to the screen, gradients use the unclamped sample.
ClickRollout rollout_click(const ClickPolicy& policy, const gui::BoundingBox& target,
                           RngStream& rng);

struct OffsetStats {
  double mean_norm = 0.0;
  double mean_dx = 0.0;
  double mean_dy = 0.0;
  double cov_xx = 0.0;
  double cov_xy = 0.0;
  double cov_yy = 0.0;
  std::size_t count = 0;
  double hist_lo = 0.0;
  double hist_hi = 0.0;
  std::vector<long> hist_dx;
  std::vector<long> hist_dy;
};

// Offsets of emitted points from their target centers, with marginal
// histograms. Targets must be a single box or one per rollout.
OffsetStats offset_stats(std::span<const ClickRollout> rollouts,
                         std::span<const gui::BoundingBox> targets,
                         int histogram_bins = 41);

}  // namespace sweetspot::envs
