#include "sweetspot/envs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace sweetspot::envs {

namespace {

constexpr double kHalfLog2Pi = 0.9189385332046727;  // log(2*pi)/2

double softmax_log_prob(std::span<const double> logits, int action,
                        std::array<double, 4>* probs_out) {
  double max_logit = logits[0];
  for (int j = 1; j < 4; ++j) max_logit = std::max(max_logit, logits[j]);
  std::array<double, 4> exps;
  double sum = 0.0;
  for (int j = 0; j < 4; ++j) {
    exps[j] = std::exp(logits[j] - max_logit);
    sum += exps[j];
  }
  if (probs_out) {
    for (int j = 0; j < 4; ++j) (*probs_out)[j] = exps[j] / sum;
  }
  return logits[action] - max_logit - std::log(sum);
}

}  // namespace

MazePolicy MazePolicy::uniform(const grid::MazeSpec& maze) {
  maze.validate();
  MazePolicy policy;
  policy.height = maze.walls.height;
  policy.width = maze.walls.width;
  policy.cell_offset.assign(maze.walls.cells.size(), -1);
  int open = 0;
  for (std::size_t i = 0; i < maze.walls.cells.size(); ++i) {
    if (maze.walls.cells[i] == 0) policy.cell_offset[i] = 4 * open++;
  }
  policy.logits.assign(static_cast<std::size_t>(4) * open, 0.0);
  return policy;
}

std::array<double, 4> MazePolicy::action_probs(int row, int col) const {
  const int base = offset_at(row, col);
  std::array<double, 4> probs;
  softmax_log_prob(std::span<const double>(logits).subspan(base, 4), 0, &probs);
  return probs;
}

double MazePolicy::log_prob(const MazeRollout& rollout) const {
  double total = 0.0;
  for (std::size_t t = 0; t < rollout.actions.size(); ++t) {
    const int base = cell_offset[rollout.decision_cells[t]];
    total += softmax_log_prob(std::span<const double>(logits).subspan(base, 4),
                              rollout.actions[t], nullptr);
  }
  return total;
}

std::vector<double> MazePolicy::score_gradient(const MazeRollout& rollout) const {
  std::vector<double> grad(logits.size(), 0.0);
  for (std::size_t t = 0; t < rollout.actions.size(); ++t) {
    const int base = cell_offset[rollout.decision_cells[t]];
    std::array<double, 4> probs;
    softmax_log_prob(std::span<const double>(logits).subspan(base, 4),
                     rollout.actions[t], &probs);
    for (int j = 0; j < 4; ++j) {
      grad[base + j] += (j == rollout.actions[t] ? 1.0 : 0.0) - probs[j];
    }
  }
  return grad;
}

ClickPolicy ClickPolicy::at(double mean_x, double mean_y, double stddev,
                            const gui::BoundingBox& screen) {
  screen.validate();
  if (!(stddev > 0.0)) {
    throw std::invalid_argument("ClickPolicy: stddev must be > 0");
  }
  ClickPolicy policy;
  policy.values = {mean_x / kMeanScale, mean_y / kMeanScale, std::log(stddev),
                   std::log(stddev)};
  policy.screen = screen;
  return policy;
}

void ClickPolicy::set_mean(double x, double y) {
  values[0] = x / kMeanScale;
  values[1] = y / kMeanScale;
}

double ClickPolicy::std_x() const { return std::exp(values[2]); }
double ClickPolicy::std_y() const { return std::exp(values[3]); }

double ClickPolicy::log_prob(const ClickRollout& rollout) const {
  const double zx = (rollout.sample.x - mean_x()) / std_x();
  const double zy = (rollout.sample.y - mean_y()) / std_y();
  return -0.5 * zx * zx - values[2] - kHalfLog2Pi +
         -0.5 * zy * zy - values[3] - kHalfLog2Pi;
}

std::vector<double> ClickPolicy::score_gradient(const ClickRollout& rollout) const {
  const double sx = std_x();
  const double sy = std_y();
  const double zx = (rollout.sample.x - mean_x()) / sx;
  const double zy = (rollout.sample.y - mean_y()) / sy;
  return {kMeanScale * zx / sx, kMeanScale * zy / sy, zx * zx - 1.0, zy * zy - 1.0};
}

grid::MazeSpec generate_maze(int height, int width, std::uint64_t seed) {
  if (height < 5 || width < 5 || height % 2 == 0 || width % 2 == 0) {
    throw std::invalid_argument("generate_maze: dimensions must be odd and >= 5");
  }
  grid::MazeSpec maze;
  maze.walls = grid::Grid::filled(height, width, 1);

  const int node_rows = (height + 1) / 2;
  const int node_cols = (width + 1) / 2;
  std::vector<char> visited(static_cast<std::size_t>(node_rows) * node_cols, 0);
  auto node_index = [&](int r, int c) { return r * node_cols + c; };

  RngStream rng(seed, stream_id(0x4D41ull, 0));  // maze carving stream
  std::vector<std::pair<int, int>> stack;
  stack.emplace_back(0, 0);
  visited[0] = 1;
  maze.walls.at(0, 0) = 0;

  while (!stack.empty()) {
    const auto [nr, nc] = stack.back();
    std::array<int, 4> order = {0, 1, 2, 3};
    for (int i = 3; i > 0; --i) {
      std::swap(order[i], order[rng.next_int(i + 1)]);
    }
    bool advanced = false;
    for (const int dir : order) {
      const int tr = nr + kMoves[dir].row;
      const int tc = nc + kMoves[dir].col;
      if (tr < 0 || tr >= node_rows || tc < 0 || tc >= node_cols) continue;
      if (visited[node_index(tr, tc)]) continue;
      visited[node_index(tr, tc)] = 1;
      maze.walls.at(2 * tr, 2 * tc) = 0;
      maze.walls.at(nr + tr, nc + tc) = 0;  // corridor between the two nodes
      stack.emplace_back(tr, tc);
      advanced = true;
      break;
    }
    if (!advanced) stack.pop_back();
  }

  maze.start = {0, 0};
  maze.goal = {height - 1, width - 1};
  maze.validate();
  return maze;
}

grid::Path bfs_shortest_path(const grid::MazeSpec& maze) {
  maze.validate();
  const int height = maze.walls.height;
  const int width = maze.walls.width;
  std::vector<int> parent(static_cast<std::size_t>(height) * width, -1);
  auto flat = [&](const grid::Cell& cell) { return cell.row * width + cell.col; };

  std::deque<grid::Cell> queue;
  queue.push_back(maze.start);
  parent[flat(maze.start)] = flat(maze.start);

  while (!queue.empty()) {
    const grid::Cell cur = queue.front();
    queue.pop_front();
    if (cur == maze.goal) break;
    for (const grid::Cell& move : kMoves) {
      const grid::Cell next{cur.row + move.row, cur.col + move.col};
      if (!maze.walls.in_bounds(next.row, next.col)) continue;
      if (maze.walls.at(next.row, next.col) != 0) continue;
      if (parent[flat(next)] >= 0) continue;
      parent[flat(next)] = flat(cur);
      queue.push_back(next);
    }
  }
  if (parent[flat(maze.goal)] < 0) {
    throw std::runtime_error("bfs_shortest_path: goal unreachable");
  }

  grid::Path path;
  grid::Cell cur = maze.goal;
  while (!(cur == maze.start)) {
    path.push_back(cur);
    const int p = parent[flat(cur)];
    cur = {p / width, p % width};
  }
  path.push_back(maze.start);
  std::reverse(path.begin(), path.end());
  return path;
}

MazeRollout rollout_maze(const MazePolicy& policy, const grid::MazeSpec& maze,
                         int max_steps, RngStream& rng,
                         const grid::Path* reference) {
  if (max_steps < 1) {
    throw std::invalid_argument("rollout_maze: max_steps must be >= 1");
  }
  const grid::Path ref_path = reference ? *reference : bfs_shortest_path(maze);
  const grid::Grid ref_occupancy =
      grid::path_to_occupancy(ref_path, maze.walls.height, maze.walls.width);

  MazeRollout rollout;
  grid::Cell pos = maze.start;
  rollout.path.push_back(pos);

  for (int step = 0; step < max_steps; ++step) {
    const auto probs = policy.action_probs(pos.row, pos.col);
    const double u = rng.next_double();
    int action = 3;
    double cdf = 0.0;
    for (int j = 0; j < 4; ++j) {
      cdf += probs[j];
      if (u < cdf) {
        action = j;
        break;
      }
    }
    rollout.decision_cells.push_back(pos.row * policy.width + pos.col);
    rollout.actions.push_back(action);

    const grid::Cell next{pos.row + kMoves[action].row, pos.col + kMoves[action].col};
    const bool legal = maze.walls.in_bounds(next.row, next.col) &&
                       maze.walls.at(next.row, next.col) == 0;
    const bool on_reference = legal && ref_occupancy.at(next.row, next.col) == 1;
    rollout.trajectory.steps.push_back(
        {on_reference ? 1.0 : 0.0, core::StepKind::symbolic});

    if (!legal) break;  // illegal move ends the episode at the last open cell
    rollout.path.push_back(next);
    pos = next;
    if (pos == maze.goal) break;
  }

  rollout.correct = grid::maze_verify(rollout.path, maze);
  rollout.trajectory.correct = rollout.correct;
  rollout.s_raw = grid::blockwise_score(
      grid::path_to_occupancy(rollout.path, maze.walls.height, maze.walls.width),
      ref_occupancy);
  rollout.log_prob = policy.log_prob(rollout);
  rollout.score_gradient = policy.score_gradient(rollout);
  return rollout;
}

MazeScore score_maze_path(const grid::Path& pred, const grid::MazeSpec& maze) {
  const grid::Path ref_path = bfs_shortest_path(maze);
  const grid::Grid pred_occ =
      grid::path_to_occupancy(pred, maze.walls.height, maze.walls.width);
  const grid::Grid ref_occ =
      grid::path_to_occupancy(ref_path, maze.walls.height, maze.walls.width);
  return {grid::blockwise_score(pred_occ, ref_occ), grid::maze_verify(pred, maze)};
}

ClickRollout rollout_click(const ClickPolicy& policy, const gui::BoundingBox& target,
                           RngStream& rng) {
  target.validate();
  ClickRollout rollout;
  const double zx = rng.next_normal();
  const double zy = rng.next_normal();
  rollout.sample = {policy.mean_x() + policy.std_x() * zx,
                    policy.mean_y() + policy.std_y() * zy};
  rollout.emitted = {std::clamp(rollout.sample.x, policy.screen.x1, policy.screen.x2),
                     std::clamp(rollout.sample.y, policy.screen.y1, policy.screen.y2)};
  rollout.s_raw = gui::field_value(rollout.emitted, target);
  rollout.correct = gui::grounding_verify(rollout.emitted, target);
  rollout.trajectory.steps.push_back({rollout.s_raw, core::StepKind::grounding});
  rollout.trajectory.correct = rollout.correct;
  rollout.log_prob = policy.log_prob(rollout);
  rollout.score_gradient = policy.score_gradient(rollout);
  return rollout;
}

OffsetStats offset_stats(std::span<const ClickRollout> rollouts,
                         std::span<const gui::BoundingBox> targets,
                         int histogram_bins) {
  if (rollouts.empty()) {
    throw std::invalid_argument("offset_stats: no rollouts");
  }
  if (targets.size() != 1 && targets.size() != rollouts.size()) {
    throw std::invalid_argument("offset_stats: need one target or one per rollout");
  }
  if (histogram_bins < 1) {
    throw std::invalid_argument("offset_stats: histogram_bins must be >= 1");
  }

  const std::size_t n = rollouts.size();
  std::vector<double> dx(n), dy(n);
  OffsetStats stats;
  stats.count = n;
  double max_abs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const gui::Point c = targets[targets.size() == 1 ? 0 : i].center();
    dx[i] = rollouts[i].emitted.x - c.x;
    dy[i] = rollouts[i].emitted.y - c.y;
    stats.mean_dx += dx[i];
    stats.mean_dy += dy[i];
    stats.mean_norm += std::sqrt(dx[i] * dx[i] + dy[i] * dy[i]);
    max_abs = std::max({max_abs, std::abs(dx[i]), std::abs(dy[i])});
  }
  stats.mean_dx /= static_cast<double>(n);
  stats.mean_dy /= static_cast<double>(n);
  stats.mean_norm /= static_cast<double>(n);

  if (n > 1) {
    for (std::size_t i = 0; i < n; ++i) {
      const double ex = dx[i] - stats.mean_dx;
      const double ey = dy[i] - stats.mean_dy;
      stats.cov_xx += ex * ex;
      stats.cov_xy += ex * ey;
      stats.cov_yy += ey * ey;
    }
    stats.cov_xx /= static_cast<double>(n - 1);
    stats.cov_xy /= static_cast<double>(n - 1);
    stats.cov_yy /= static_cast<double>(n - 1);
  }

  stats.hist_hi = max_abs > 0.0 ? max_abs : 1.0;
  stats.hist_lo = -stats.hist_hi;
  stats.hist_dx.assign(histogram_bins, 0);
  stats.hist_dy.assign(histogram_bins, 0);
  const double span = stats.hist_hi - stats.hist_lo;
  auto bin_of = [&](double v) {
    const int b = static_cast<int>((v - stats.hist_lo) / span * histogram_bins);
    return std::clamp(b, 0, histogram_bins - 1);
  };
  for (std::size_t i = 0; i < n; ++i) {
    ++stats.hist_dx[bin_of(dx[i])];
    ++stats.hist_dy[bin_of(dy[i])];
  }
  return stats;
}

}  // namespace sweetspot::envs
