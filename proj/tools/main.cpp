// Command-line front end: scoring, verification, GRPO training, and the
// statistics harness, all with deterministic seeding.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sweetspot/analysis.hpp"
#include "sweetspot/core.hpp"
#include "sweetspot/envs.hpp"
#include "sweetspot/grid.hpp"
#include "sweetspot/grpo.hpp"
#include "sweetspot/gui.hpp"
#include "sweetspot/io.hpp"
#include "sweetspot/manifest.hpp"
#include "sweetspot/text.hpp"

namespace fs = std::filesystem;
using namespace sweetspot;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitUnreadable = 2;
constexpr int kExitMalformed = 3;
constexpr int kExitRuntime = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot read file: " + path);
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write file: " + path.string());
  return out;
}

std::vector<double> parse_reals(const std::string& text, std::size_t count,
                                const std::string& flag) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw UsageError(flag + ": expected comma-separated reals, got '" + text + "'");
    }
  }
  if (values.size() != count) {
    throw UsageError(flag + ": expected " + std::to_string(count) + " values");
  }
  return values;
}

gui::BoundingBox parse_box(const std::string& text, const std::string& flag) {
  const auto v = parse_reals(text, 4, flag);
  gui::BoundingBox box{v[0], v[1], v[2], v[3]};
  try {
    box.validate();
  } catch (const std::exception& e) {
    throw UsageError(flag + ": " + e.what());
  }
  return box;
}

core::RewardMode parse_mode(const std::string& text) {
  if (text == "binary") return core::RewardMode::binary;
  if (text == "continuous") return core::RewardMode::continuous;
  if (text == "ssl") return core::RewardMode::ssl;
  throw UsageError("unknown reward mode: " + text);
}

std::vector<std::uint64_t> seed_list(std::uint64_t seed0, int count) {
  std::vector<std::uint64_t> seeds(count);
  for (int i = 0; i < count; ++i) seeds[i] = seed0 + static_cast<std::uint64_t>(i);
  return seeds;
}

std::string join_args(int argc, char** argv) {
  std::string joined;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) joined += ' ';
    joined += argv[i];
  }
  return joined;
}

// Shared knobs of the two training environments. Zone count 0 means the env
// default: identity discretization for the maze, sigma-level zones for clicks.
struct TrainFlags {
  std::string env = "maze";
  std::string reward = "ssl";
  double alpha = 0.2;
  int zones = 0;
  std::uint64_t seed = 0;
  int iters = -1;
  int group = 8;
  double lr = 0.0;
  double kl = -1.0;
  int maze_size = 9;
  int pool = 1;
  int max_steps = 0;
  std::string screen = "0,0,200,100";
  std::string target = "80,40,120,60";
  std::string init_mean = "60,35";
  double init_std = 30.0;
  int eval_episodes = 0;
};

void add_train_flags(CLI::App* cmd, TrainFlags& flags) {
  cmd->add_option("--env", flags.env, "Environment: maze|click");
  cmd->add_option("--reward", flags.reward, "Reward mode: binary|continuous|ssl");
  cmd->add_option("--alpha", flags.alpha, "Tier bonus coefficient (> 0)");
  cmd->add_option("--zones", flags.zones, "Zone count K (0 = env default)");
  cmd->add_option("--seed", flags.seed, "Root seed");
  cmd->add_option("--iters", flags.iters, "Training iterations");
  cmd->add_option("--group", flags.group, "Rollouts per group");
  cmd->add_option("--lr", flags.lr, "Learning rate (0 = env default)");
  cmd->add_option("--kl", flags.kl, "KL penalty coefficient (-1 = env default)");
  cmd->add_option("--maze-size", flags.maze_size, "Odd maze side length");
  cmd->add_option("--pool", flags.pool, "Number of mazes in the task pool");
  cmd->add_option("--max-steps", flags.max_steps, "Max moves per maze episode");
  cmd->add_option("--screen", flags.screen, "Click screen as x1,y1,x2,y2");
  cmd->add_option("--target", flags.target, "Click target box as x1,y1,x2,y2");
  cmd->add_option("--init-mean", flags.init_mean, "Initial click mean as x,y");
  cmd->add_option("--init-std", flags.init_std, "Initial click stddev");
  cmd->add_option("--eval-episodes", flags.eval_episodes, "Final evaluation episodes");
}

grpo::EnvSetup make_setup(const TrainFlags& flags) {
  grpo::EnvSetup setup;
  if (flags.env == "maze") {
    setup.kind = grpo::EnvKind::maze;
    setup.maze_height = flags.maze_size;
    setup.maze_width = flags.maze_size;
    setup.pool_size = flags.pool;
    setup.max_steps = flags.max_steps;
    setup.eval_episodes = flags.eval_episodes > 0 ? flags.eval_episodes : 200;
  } else if (flags.env == "click") {
    setup.kind = grpo::EnvKind::click;
    setup.screen = parse_box(flags.screen, "--screen");
    setup.target = parse_box(flags.target, "--target");
    const auto mean = parse_reals(flags.init_mean, 2, "--init-mean");
    setup.init_mean_x = mean[0];
    setup.init_mean_y = mean[1];
    setup.init_std = flags.init_std;
    setup.eval_episodes = flags.eval_episodes > 0 ? flags.eval_episodes : 500;
  } else {
    throw UsageError("unknown env: " + flags.env);
  }
  return setup;
}

core::RewardConfig make_reward(const TrainFlags& flags) {
  core::RewardConfig reward;
  reward.mode = parse_mode(flags.reward);
  reward.alpha = flags.alpha;
  if (flags.zones > 0) {
    reward.schema = core::ZoneSchema::uniform(flags.zones);
  } else if (flags.env == "click") {
    reward.schema = core::ZoneSchema::sigma_levels();
  } else {
    reward.schema.reset();  // grid scores are already tiered
  }
  try {
    reward.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return reward;
}

grpo::GrpoConfig make_grpo(const TrainFlags& flags) {
  grpo::GrpoConfig config;
  config.group_size = flags.group;
  config.seed = flags.seed;
  if (flags.env == "maze") {
    config.iterations = flags.iters >= 0 ? flags.iters : 2000;
    config.learning_rate = flags.lr > 0.0 ? flags.lr : 70.0;
    config.kl_coeff = flags.kl >= 0.0 ? flags.kl : 0.0;
  } else {
    config.iterations = flags.iters >= 0 ? flags.iters : 1000;
    config.learning_rate = flags.lr > 0.0 ? flags.lr : 0.3;
    config.kl_coeff = flags.kl >= 0.0 ? flags.kl : 0.0;
  }
  try {
    config.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return config;
}

// Scoped manifest: records start time at construction and writes the record,
// including failures, when finalized.
class ManifestWriter {
 public:
  ManifestWriter(fs::path out_dir, std::string command, std::string command_line,
                 std::uint64_t seed)
      : path_(out_dir / "manifest.txt") {
    fs::create_directories(out_dir);
    manifest_.command = std::move(command);
    manifest_.command_line = std::move(command_line);
    manifest_.seed = seed;
    manifest_.started = iso_timestamp_utc();
  }

  void config(const std::string& key, const std::string& value) {
    manifest_.config.emplace_back(key, value);
  }
  void output(const fs::path& file) { manifest_.outputs.push_back(file.string()); }

  void finish_ok() {
    manifest_.finished = iso_timestamp_utc();
    manifest_.status = "ok";
    write_manifest(path_, manifest_);
  }
  void finish_error(const std::string& message) {
    manifest_.finished = iso_timestamp_utc();
    manifest_.status = "error";
    manifest_.error = message;
    write_manifest(path_, manifest_);
  }

 private:
  fs::path path_;
  RunManifest manifest_;
};

void record_train_config(ManifestWriter& manifest, const TrainFlags& flags) {
  manifest.config("env", flags.env);
  manifest.config("reward", flags.reward);
  manifest.config("alpha", fmt(flags.alpha));
  manifest.config("zones", fmt(flags.zones));
  manifest.config("iters", fmt(flags.iters));
  manifest.config("group", fmt(flags.group));
  manifest.config("lr", fmt(flags.lr));
  if (flags.env == "maze") {
    manifest.config("maze_size", fmt(flags.maze_size));
    manifest.config("pool", fmt(flags.pool));
    manifest.config("max_steps", fmt(flags.max_steps));
  } else {
    manifest.config("screen", flags.screen);
    manifest.config("target", flags.target);
    manifest.config("init_mean", flags.init_mean);
    manifest.config("init_std", fmt(flags.init_std));
  }
  manifest.config("eval_episodes", fmt(flags.eval_episodes));
}

int cmd_score_gui(const std::string& pred, const std::string& bbox,
                  const std::string& input, double sigma) {
  const gui::FieldParams params{sigma};
  auto emit = [&](const gui::Point& p, const gui::BoundingBox& box) {
    std::cout << fmt(gui::field_value(p, box, params)) << ' '
              << fmt(gui::gui_zone_score(p, box, params)) << ' '
              << fmt(gui::grounding_verify(p, box)) << '\n';
  };
  if (!input.empty()) {
    auto in = open_input(input);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line.front() == '#') continue;
      const std::size_t bar = line.find('|');
      if (bar == std::string::npos) throw ParseError(line_no, "expected 'x y | x1 y1 x2 y2'");
      std::istringstream left(line.substr(0, bar));
      std::istringstream right(line.substr(bar + 1));
      gui::Point p;
      gui::BoundingBox box;
      if (!(left >> p.x >> p.y) ||
          !(right >> box.x1 >> box.y1 >> box.x2 >> box.y2)) {
        throw ParseError(line_no, "expected 'x y | x1 y1 x2 y2'");
      }
      emit(p, box);
    }
    return 0;
  }
  if (pred.empty() || bbox.empty()) {
    throw UsageError("score gui needs --pred and --bbox, or --input");
  }
  const auto xy = parse_reals(pred, 2, "--pred");
  emit({xy[0], xy[1]}, parse_box(bbox, "--bbox"));
  return 0;
}

int cmd_score_grid(const std::string& task, const std::string& pred_file,
                   const std::string& ref_file, int zones) {
  if (task != "maze" && task != "sudoku" && task != "arc") {
    throw UsageError("unknown task: " + task);
  }
  grid::TaskScore score;
  if (task == "maze") {
    auto pred_in = open_input(pred_file);
    auto maze_in = open_input(ref_file);
    const grid::Path path = grid::read_path(pred_in);
    const grid::MazeSpec maze = grid::read_maze(maze_in);
    const envs::MazeScore maze_score = envs::score_maze_path(path, maze);
    score = {maze_score.s_raw, maze_score.correct};
  } else {
    auto pred_in = open_input(pred_file);
    auto ref_in = open_input(ref_file);
    const grid::Grid pred = grid::read_grid(pred_in);
    const grid::Grid ref = grid::read_grid(ref_in);
    const grid::Task kind = task == "sudoku" ? grid::Task::sudoku : grid::Task::arc;
    score = grid_task_score(pred, ref, kind);
  }
  double tier = score.s_raw;
  if (zones > 0 && score.s_raw > 0.0) {
    tier = core::discretize(score.s_raw, core::ZoneSchema::uniform(zones));
  }
  std::cout << fmt(score.s_raw) << ' ' << fmt(tier) << ' ' << fmt(score.correct)
            << '\n';
  return 0;
}

int cmd_verify(const std::string& task, const std::string& path_file,
               const std::string& maze_file, const std::string& grid_file,
               const std::string& pred_file, const std::string& ref_file) {
  int verdict = 0;
  if (task == "maze") {
    if (path_file.empty() || maze_file.empty()) {
      throw UsageError("verify --task maze needs --path and --maze");
    }
    auto path_in = open_input(path_file);
    auto maze_in = open_input(maze_file);
    verdict = grid::maze_verify(grid::read_path(path_in), grid::read_maze(maze_in));
  } else if (task == "sudoku") {
    if (grid_file.empty()) throw UsageError("verify --task sudoku needs --grid");
    auto in = open_input(grid_file);
    verdict = grid::sudoku_verify(grid::read_grid(in));
  } else if (task == "arc") {
    if (pred_file.empty() || ref_file.empty()) {
      throw UsageError("verify --task arc needs --pred and --ref");
    }
    auto pred_in = open_input(pred_file);
    auto ref_in = open_input(ref_file);
    verdict = grid::arc_verify(grid::read_grid(pred_in), grid::read_grid(ref_in));
  } else {
    throw UsageError("unknown task: " + task);
  }
  std::cout << fmt(verdict) << '\n';
  return 0;  // the verdict is data, not a failure
}

int cmd_train(const TrainFlags& flags, const std::string& out_dir,
              bool dump_rollouts, const std::string& command_line) {
  ManifestWriter manifest(out_dir, "train", command_line, flags.seed);
  record_train_config(manifest, flags);
  try {
    const grpo::EnvSetup setup = make_setup(flags);
    const core::RewardConfig reward = make_reward(flags);
    const grpo::GrpoConfig config = make_grpo(flags);

    const grpo::TrainResult result = grpo::train(setup, reward, config);

    const fs::path metrics_path = fs::path(out_dir) / "metrics.csv";
    {
      auto out = open_output(metrics_path);
      grpo::write_metrics_csv(out, result.metrics);
    }
    manifest.output(metrics_path);

    if (dump_rollouts) {
      const fs::path rollouts_path = fs::path(out_dir) / "rollouts.rec";
      analysis::SampleSet samples;
      if (result.kind == grpo::EnvKind::click) {
        samples = analysis::collect_click_samples(*result.click_policy, setup.target,
                                                  setup.eval_episodes, config.seed);
      } else {
        const int max_steps = setup.max_steps > 0
                                  ? setup.max_steps
                                  : 4 * setup.maze_height * setup.maze_width;
        samples = analysis::collect_maze_samples(*result.maze_policy,
                                                 result.maze_pool.front(), max_steps,
                                                 setup.eval_episodes, config.seed);
      }
      auto out = open_output(rollouts_path);
      analysis::write_samples(out, samples);
      manifest.output(rollouts_path);
    }

    std::cout << "final_success_rate " << fmt(result.final_success) << '\n';
    if (result.kind == grpo::EnvKind::click) {
      std::cout << "mean_offset_norm " << fmt(result.final_offset_norm) << '\n';
    }
    manifest.finish_ok();
    return 0;
  } catch (const std::exception& e) {
    manifest.finish_error(e.what());
    throw;
  }
}

int cmd_analyze_snr(const std::string& samples_file, double alpha, int zones,
                    int batch_size, int num_batches, std::uint64_t seed,
                    const std::string& out_dir, const std::string& command_line) {
  auto in = open_input(samples_file);
  const analysis::SampleSet samples = analysis::read_samples(in);
  core::RewardConfig config;
  config.alpha = alpha;
  if (zones > 0) {
    config.schema = core::ZoneSchema::uniform(zones);
  } else {
    config.schema = core::ZoneSchema::sigma_levels();
  }
  const analysis::SnrReport report =
      analysis::snr_report(samples, config, batch_size, num_batches, seed);
  analysis::write_snr_report(std::cout, report);
  if (!out_dir.empty()) {
    ManifestWriter manifest(out_dir, "analyze snr", command_line, seed);
    manifest.config("samples", samples_file);
    manifest.config("alpha", fmt(alpha));
    manifest.config("zones", fmt(zones));
    manifest.config("N", fmt(batch_size));
    manifest.config("batches", fmt(num_batches));
    const fs::path report_path = fs::path(out_dir) / "snr.txt";
    auto out = open_output(report_path);
    analysis::write_snr_report(out, report);
    manifest.output(report_path);
    manifest.finish_ok();
  }
  return 0;
}

int cmd_analyze_variance(const std::string& samples_file, double alpha, int zones,
                         int batch_size, int num_batches, std::uint64_t seed,
                         const std::string& out_dir, const std::string& command_line) {
  auto in = open_input(samples_file);
  const analysis::SampleSet samples = analysis::read_samples(in);
  core::RewardConfig ssl_config;
  ssl_config.alpha = alpha;
  ssl_config.schema = zones > 0 ? core::ZoneSchema::uniform(zones)
                                : core::ZoneSchema::sigma_levels();
  const std::vector<double> u = analysis::binary_direction(samples);

  std::ostringstream report;
  double values[3] = {0.0, 0.0, 0.0};
  const char* names[3] = {"binary", "continuous", "ssl"};
  const core::RewardMode modes[3] = {core::RewardMode::binary,
                                     core::RewardMode::continuous,
                                     core::RewardMode::ssl};
  for (int m = 0; m < 3; ++m) {
    core::RewardConfig config = ssl_config;
    config.mode = modes[m];
    const analysis::VarianceEstimate estimate = analysis::gradient_variance(
        samples, analysis::make_reward_fn(config), u, batch_size, num_batches, seed);
    values[m] = estimate.variance;
    report << "var_" << names[m] << ' ' << fmt(estimate.variance) << '\n';
    report << "hw_" << names[m] << ' ' << fmt(estimate.half_width) << '\n';
  }
  if (values[2] > 0.0) {
    report << "ratio_continuous_over_ssl " << fmt(values[1] / values[2]) << '\n';
  }
  std::cout << report.str();
  if (!out_dir.empty()) {
    ManifestWriter manifest(out_dir, "analyze variance", command_line, seed);
    manifest.config("samples", samples_file);
    const fs::path report_path = fs::path(out_dir) / "variance.txt";
    auto out = open_output(report_path);
    out << report.str();
    manifest.output(report_path);
    manifest.finish_ok();
  }
  return 0;
}

int cmd_analyze_ordering(const std::string& a_file, const std::string& b_file,
                         double alpha) {
  auto a_in = open_input(a_file);
  auto b_in = open_input(b_file);
  const analysis::OrderingReport report = analysis::ordering_check(
      analysis::read_samples(a_in), analysis::read_samples(b_in), alpha);
  std::cout << "sr_a " << fmt(report.sr_a) << '\n'
            << "sr_b " << fmt(report.sr_b) << '\n'
            << "mu_s_a " << fmt(report.mu_s_a) << '\n'
            << "mu_s_b " << fmt(report.mu_s_b) << '\n'
            << "j_a " << fmt(report.j_a) << '\n'
            << "j_b " << fmt(report.j_b) << '\n'
            << "verdict " << analysis::to_string(report.verdict) << '\n';
  return 0;
}

int cmd_analyze_sweep(const TrainFlags& flags, const std::string& modes_text,
                      const std::string& budgets_text, int seed_count,
                      const std::string& out_dir, const std::string& command_line) {
  if (out_dir.empty()) throw UsageError("analyze sweep needs --out");
  ManifestWriter manifest(out_dir, "analyze sweep", command_line, flags.seed);
  record_train_config(manifest, flags);
  manifest.config("modes", modes_text);
  manifest.config("budgets", budgets_text);
  manifest.config("seeds", fmt(seed_count));
  try {
    std::vector<core::RewardMode> modes;
    std::stringstream mode_stream(modes_text);
    std::string token;
    while (std::getline(mode_stream, token, ',')) modes.push_back(parse_mode(token));

    std::vector<long> budgets;
    std::stringstream budget_stream(budgets_text);
    while (std::getline(budget_stream, token, ',')) budgets.push_back(std::stol(token));

    const auto seeds = seed_list(flags.seed, seed_count);
    const auto cells =
        analysis::efficiency_sweep(make_setup(flags), make_reward(flags),
                                   make_grpo(flags), modes, budgets, seeds);
    const fs::path csv_path = fs::path(out_dir) / "sweep.csv";
    auto out = open_output(csv_path);
    analysis::write_sweep_csv(out, cells);
    manifest.output(csv_path);
    manifest.finish_ok();
    std::cout << "rows " << fmt(static_cast<long long>(cells.size())) << '\n';
    return 0;
  } catch (const std::exception& e) {
    manifest.finish_error(e.what());
    throw;
  }
}

int cmd_analyze_ablation(const TrainFlags& flags, const std::string& k_text,
                         int seed_count, const std::string& out_dir,
                         const std::string& command_line) {
  if (out_dir.empty()) throw UsageError("analyze ablation needs --out");
  ManifestWriter manifest(out_dir, "analyze ablation", command_line, flags.seed);
  record_train_config(manifest, flags);
  manifest.config("k", k_text);
  manifest.config("seeds", fmt(seed_count));
  try {
    std::vector<int> tiers;
    std::stringstream k_stream(k_text);
    std::string token;
    while (std::getline(k_stream, token, ',')) tiers.push_back(std::stoi(token));

    const auto seeds = seed_list(flags.seed, seed_count);
    const auto cells = analysis::zone_ablation(make_setup(flags), make_reward(flags),
                                               make_grpo(flags), tiers, seeds);
    const fs::path csv_path = fs::path(out_dir) / "ablation.csv";
    auto out = open_output(csv_path);
    analysis::write_ablation_csv(out, cells);
    manifest.output(csv_path);
    manifest.finish_ok();
    std::cout << "rows " << fmt(static_cast<long long>(cells.size())) << '\n';
    return 0;
  } catch (const std::exception& e) {
    manifest.finish_error(e.what());
    throw;
  }
}

int cmd_analyze_offsets(const TrainFlags& flags, const std::string& out_dir,
                        const std::string& command_line) {
  if (out_dir.empty()) throw UsageError("analyze offsets needs --out");
  if (flags.env != "click") throw UsageError("analyze offsets requires --env click");
  ManifestWriter manifest(out_dir, "analyze offsets", command_line, flags.seed);
  record_train_config(manifest, flags);
  try {
    const grpo::EnvSetup setup = make_setup(flags);
    const grpo::TrainResult result =
        grpo::train(setup, make_reward(flags), make_grpo(flags));

    std::vector<envs::ClickRollout> rollouts;
    rollouts.reserve(setup.eval_episodes);
    for (int i = 0; i < setup.eval_episodes; ++i) {
      RngStream rng(flags.seed, stream_id(3, i));
      rollouts.push_back(envs::rollout_click(*result.click_policy, setup.target, rng));
    }
    const gui::BoundingBox targets[1] = {setup.target};
    const envs::OffsetStats stats = envs::offset_stats(rollouts, targets);

    const fs::path csv_path = fs::path(out_dir) / "offsets.csv";
    {
      auto out = open_output(csv_path);
      out << "bin_center,count_dx,count_dy\n";
      const double width =
          (stats.hist_hi - stats.hist_lo) / static_cast<double>(stats.hist_dx.size());
      for (std::size_t b = 0; b < stats.hist_dx.size(); ++b) {
        const double center = stats.hist_lo + width * (static_cast<double>(b) + 0.5);
        out << fmt(center) << ',' << fmt(static_cast<long long>(stats.hist_dx[b]))
            << ',' << fmt(static_cast<long long>(stats.hist_dy[b])) << '\n';
      }
    }
    manifest.output(csv_path);

    const fs::path summary_path = fs::path(out_dir) / "offsets_summary.txt";
    {
      auto out = open_output(summary_path);
      out << "mean_norm " << fmt(stats.mean_norm) << '\n'
          << "mean_dx " << fmt(stats.mean_dx) << '\n'
          << "mean_dy " << fmt(stats.mean_dy) << '\n'
          << "cov_xx " << fmt(stats.cov_xx) << '\n'
          << "cov_xy " << fmt(stats.cov_xy) << '\n'
          << "cov_yy " << fmt(stats.cov_yy) << '\n'
          << "count " << fmt(static_cast<long long>(stats.count)) << '\n';
    }
    manifest.output(summary_path);
    manifest.finish_ok();
    std::cout << "mean_offset_norm " << fmt(stats.mean_norm) << '\n';
    return 0;
  } catch (const std::exception& e) {
    manifest.finish_error(e.what());
    throw;
  }
}

int cmd_analyze_hacking(const std::string& samples_file) {
  auto in = open_input(samples_file);
  const analysis::SampleSet samples = analysis::read_samples(in);
  std::cout << "hacking_ratio " << fmt(analysis::hacking_ratio(samples.s, samples.correct))
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tiered proximity rewards, desk-scale GRPO environments, and the "
               "statistics harness around them"};
  app.require_subcommand(1);
  const std::string command_line = join_args(argc, argv);

  // score
  auto* score = app.add_subcommand("score", "Score predictions");
  score->require_subcommand(1);
  auto* score_gui = score->add_subcommand("gui", "Gaussian-field point scoring");
  std::string sg_pred, sg_bbox, sg_input;
  double sg_sigma = 1.0 / 3.0;
  score_gui->add_option("--pred", sg_pred, "Predicted point as x,y");
  score_gui->add_option("--bbox", sg_bbox, "Target box as x1,y1,x2,y2");
  score_gui->add_option("--sigma", sg_sigma, "Field width");
  score_gui->add_option("--input", sg_input, "Record file: 'x y | x1 y1 x2 y2' lines");

  auto* score_grid = score->add_subcommand("grid", "Blockwise grid scoring");
  std::string gr_task, gr_pred, gr_ref;
  int gr_zones = 0;
  score_grid->add_option("--task", gr_task, "maze|sudoku|arc")->required();
  score_grid->add_option("--pred", gr_pred, "Prediction file (path file for maze)")
      ->required();
  score_grid->add_option("--ref", gr_ref, "Reference file (maze file for maze)")
      ->required();
  score_grid->add_option("--zones", gr_zones, "Apply a K-zone schema to the raw score");

  // verify
  auto* verify = app.add_subcommand("verify", "Run a task verifier; prints 0 or 1");
  std::string v_task, v_path, v_maze, v_grid, v_pred, v_ref;
  verify->add_option("--task", v_task, "maze|sudoku|arc")->required();
  verify->add_option("--path", v_path, "Path file (maze)");
  verify->add_option("--maze", v_maze, "Maze file (maze)");
  verify->add_option("--grid", v_grid, "Grid file (sudoku)");
  verify->add_option("--pred", v_pred, "Prediction grid (arc)");
  verify->add_option("--ref", v_ref, "Reference grid (arc)");

  // train
  auto* train = app.add_subcommand("train", "GRPO training with a pluggable reward");
  TrainFlags train_flags;
  add_train_flags(train, train_flags);
  std::string train_out;
  bool train_dump = false;
  train->add_option("--out", train_out, "Output directory")->required();
  train->add_flag("--dump-rollouts", train_dump,
                  "Write final-policy rollouts as a sample dump");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Estimator studies and sweeps");
  analyze->require_subcommand(1);

  auto* a_snr = analyze->add_subcommand("snr", "Projected SNR per reward mode");
  std::string snr_samples, snr_out;
  double snr_alpha = 0.2;
  int snr_zones = 0, snr_batch = 64, snr_batches = 1000;
  std::uint64_t snr_seed = 0;
  a_snr->add_option("--samples", snr_samples, "Sample dump file")->required();
  a_snr->add_option("--alpha", snr_alpha, "Tier bonus coefficient");
  a_snr->add_option("--zones", snr_zones, "Zone count (0 = sigma levels)");
  a_snr->add_option("--N", snr_batch, "Resampled batch size");
  a_snr->add_option("--batches", snr_batches, "Number of resampled batches");
  a_snr->add_option("--seed", snr_seed, "Resampling seed");
  a_snr->add_option("--out", snr_out, "Output directory");

  auto* a_var = analyze->add_subcommand("variance", "Gradient variance per reward mode");
  std::string var_samples, var_out;
  double var_alpha = 0.2;
  int var_zones = 0, var_batch = 64, var_batches = 1000;
  std::uint64_t var_seed = 0;
  a_var->add_option("--samples", var_samples, "Sample dump file")->required();
  a_var->add_option("--alpha", var_alpha, "Tier bonus coefficient");
  a_var->add_option("--zones", var_zones, "Zone count (0 = sigma levels)");
  a_var->add_option("--N", var_batch, "Resampled batch size");
  a_var->add_option("--batches", var_batches, "Number of resampled batches");
  a_var->add_option("--seed", var_seed, "Resampling seed");
  a_var->add_option("--out", var_out, "Output directory");

  auto* a_ord = analyze->add_subcommand("ordering", "Equal-success ordering identity");
  std::string ord_a, ord_b;
  double ord_alpha = 0.2;
  a_ord->add_option("--a", ord_a, "Sample dump A")->required();
  a_ord->add_option("--b", ord_b, "Sample dump B")->required();
  a_ord->add_option("--alpha", ord_alpha, "Tier bonus coefficient");

  auto* a_sweep = analyze->add_subcommand("sweep", "Sample-efficiency sweep");
  TrainFlags sweep_flags;
  add_train_flags(a_sweep, sweep_flags);
  std::string sweep_modes = "binary,ssl", sweep_budgets = "6400,16000", sweep_out;
  int sweep_seeds = 10;
  a_sweep->add_option("--modes", sweep_modes, "Comma-separated reward modes");
  a_sweep->add_option("--budgets", sweep_budgets, "Comma-separated rollout budgets");
  a_sweep->add_option("--seeds", sweep_seeds, "Number of seeds (seed, seed+1, ...)");
  a_sweep->add_option("--out", sweep_out, "Output directory")->required();

  auto* a_abl = analyze->add_subcommand("ablation", "Zone-granularity ablation");
  TrainFlags abl_flags;
  abl_flags.env = "click";
  add_train_flags(a_abl, abl_flags);
  std::string abl_k = "2,4,8", abl_out;
  int abl_seeds = 10;
  a_abl->add_option("--k", abl_k, "Comma-separated zone counts");
  a_abl->add_option("--seeds", abl_seeds, "Number of seeds (seed, seed+1, ...)");
  a_abl->add_option("--out", abl_out, "Output directory")->required();

  auto* a_off = analyze->add_subcommand("offsets", "Click offset distribution");
  TrainFlags off_flags;
  off_flags.env = "click";
  add_train_flags(a_off, off_flags);
  std::string off_out;
  a_off->add_option("--out", off_out, "Output directory")->required();

  auto* a_hack = analyze->add_subcommand("hacking", "High-score failure ratio");
  std::string hack_samples;
  a_hack->add_option("--samples", hack_samples, "Sample dump file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (score_gui->parsed()) return cmd_score_gui(sg_pred, sg_bbox, sg_input, sg_sigma);
    if (score_grid->parsed()) return cmd_score_grid(gr_task, gr_pred, gr_ref, gr_zones);
    if (verify->parsed()) return cmd_verify(v_task, v_path, v_maze, v_grid, v_pred, v_ref);
    if (train->parsed()) return cmd_train(train_flags, train_out, train_dump, command_line);
    if (a_snr->parsed()) {
      return cmd_analyze_snr(snr_samples, snr_alpha, snr_zones, snr_batch, snr_batches,
                             snr_seed, snr_out, command_line);
    }
    if (a_var->parsed()) {
      return cmd_analyze_variance(var_samples, var_alpha, var_zones, var_batch,
                                  var_batches, var_seed, var_out, command_line);
    }
    if (a_ord->parsed()) return cmd_analyze_ordering(ord_a, ord_b, ord_alpha);
    if (a_sweep->parsed()) {
      return cmd_analyze_sweep(sweep_flags, sweep_modes, sweep_budgets, sweep_seeds,
                               sweep_out, command_line);
    }
    if (a_abl->parsed()) {
      return cmd_analyze_ablation(abl_flags, abl_k, abl_seeds, abl_out, command_line);
    }
    if (a_off->parsed()) return cmd_analyze_offsets(off_flags, off_out, command_line);
    if (a_hack->parsed()) return cmd_analyze_hacking(hack_samples);
    std::cerr << "no command selected\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUnreadable;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
