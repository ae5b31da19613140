#include "sweetspot/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sweetspot/io.hpp"
#include "sweetspot/parallel.hpp"
#include "sweetspot/rng.hpp"
#include "sweetspot/text.hpp"

namespace sweetspot::analysis {

namespace {

constexpr std::uint64_t kTagBatch = 10;
constexpr std::uint64_t kTagBootstrap = 11;
constexpr std::uint64_t kTagCollect = 12;
constexpr int kBootstrapReps = 200;

double mean_of(std::span<const double> values) {
  double sum = 0.0;
  for (const double v : values) sum += v;
  return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

double sample_stdev(std::span<const double> values, double mean) {
  if (values.size() < 2) return 0.0;
  double sum_sq = 0.0;
  for (const double v : values) sum_sq += (v - mean) * (v - mean);
  return std::sqrt(sum_sq / static_cast<double>(values.size() - 1));
}

double sample_variance(std::span<const double> values, double mean) {
  const double sd = sample_stdev(values, mean);
  return sd * sd;
}

double percentile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

// Projections of the group-centered estimator for resampled batches; shared
// by the SNR and variance estimators.
std::vector<double> batch_projections(const SampleSet& samples, const RewardFn& reward,
                                      std::span<const double> u, int batch_size,
                                      int num_batches, std::uint64_t seed) {
  samples.validate();
  if (u.size() != samples.dim()) {
    throw std::invalid_argument("batch_projections: direction dimension mismatch");
  }
  if (batch_size < 2 || static_cast<std::size_t>(batch_size) > samples.size()) {
    throw std::invalid_argument("batch_projections: batch size outside [2, samples]");
  }
  if (num_batches < 30) {
    throw std::invalid_argument("batch_projections: need at least 30 batches");
  }

  const std::size_t n = samples.size();
  std::vector<double> projected_score(n);
  std::vector<double> rewards(n);
  for (std::size_t i = 0; i < n; ++i) {
    double dot = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) dot += samples.ell[i][k] * u[k];
    projected_score[i] = dot;
    rewards[i] = reward(samples.correct[i], samples.s[i]);
  }

  std::vector<double> projections(num_batches, 0.0);
  parallel_for(static_cast<std::size_t>(num_batches), [&](std::size_t b) {
    RngStream rng(seed, stream_id(kTagBatch, b));
    std::vector<int> idx(batch_size);
    for (int j = 0; j < batch_size; ++j) {
      idx[j] = rng.next_int(static_cast<int>(n));
    }
    // shifted centering keeps constant rewards at exactly zero advantage
    const double shift = rewards[idx[0]];
    double reward_mean = 0.0;
    for (int j = 0; j < batch_size; ++j) reward_mean += rewards[idx[j]] - shift;
    reward_mean /= batch_size;
    double value = 0.0;
    for (int j = 0; j < batch_size; ++j) {
      value += ((rewards[idx[j]] - shift) - reward_mean) * projected_score[idx[j]];
    }
    projections[b] = value / batch_size;
  });
  return projections;
}

double bootstrap_half_width(std::span<const double> projections, std::uint64_t seed,
                            const std::function<double(std::span<const double>)>& stat) {
  std::vector<double> replicates(kBootstrapReps);
  parallel_for(kBootstrapReps, [&](std::size_t r) {
    RngStream rng(seed, stream_id(kTagBootstrap, r));
    std::vector<double> resampled(projections.size());
    for (std::size_t i = 0; i < projections.size(); ++i) {
      resampled[i] = projections[rng.next_int(static_cast<int>(projections.size()))];
    }
    replicates[r] = stat(resampled);
  });
  return (percentile(replicates, 0.975) - percentile(replicates, 0.025)) / 2.0;
}

}  // namespace

void SampleSet::validate() const {
  if (correct.empty() || correct.size() != s.size() || s.size() != ell.size()) {
    throw std::invalid_argument("SampleSet: non-empty equal-length fields required");
  }
  const std::size_t d = ell.front().size();
  for (std::size_t i = 0; i < size(); ++i) {
    if (correct[i] != 0 && correct[i] != 1) {
      throw std::invalid_argument("SampleSet: correctness must be 0 or 1");
    }
    if (!std::isfinite(s[i])) {
      throw std::invalid_argument("SampleSet: non-finite score");
    }
    if (ell[i].size() != d) {
      throw std::invalid_argument("SampleSet: ragged score-function vectors");
    }
    for (const double v : ell[i]) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("SampleSet: non-finite score function");
      }
    }
  }
}

RewardFn make_reward_fn(const core::RewardConfig& config) {
  config.validate();
  return [config](int correct, double s) {
    return core::compose_reward(correct, s, config).reward;
  };
}

std::vector<double> binary_direction(const SampleSet& samples) {
  samples.validate();
  const std::size_t n = samples.size();
  const std::size_t d = samples.dim();
  double c_mean = 0.0;
  for (const int c : samples.correct) c_mean += c;
  c_mean /= static_cast<double>(n);

  std::vector<double> g(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = samples.correct[i] - c_mean;
    for (std::size_t k = 0; k < d; ++k) g[k] += w * samples.ell[i][k];
  }
  double norm = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    g[k] /= static_cast<double>(n);
    norm += g[k] * g[k];
  }
  norm = std::sqrt(norm);
  if (norm < 1e-12) {
    throw std::runtime_error("binary_direction: degenerate binary gradient");
  }
  for (double& v : g) v /= norm;
  return g;
}

double alignment_cov(const SampleSet& samples, std::span<const double> u) {
  samples.validate();
  if (u.size() != samples.dim()) {
    throw std::invalid_argument("alignment_cov: direction dimension mismatch");
  }
  const std::size_t n = samples.size();
  if (n < 2) return 0.0;
  double s_mean = 0.0;
  double t_mean = 0.0;
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    double dot = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) dot += samples.ell[i][k] * u[k];
    t[i] = dot;
    s_mean += samples.s[i];
    t_mean += dot;
  }
  s_mean /= static_cast<double>(n);
  t_mean /= static_cast<double>(n);
  double cov = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cov += (samples.s[i] - s_mean) * (t[i] - t_mean);
  }
  return cov / static_cast<double>(n - 1);
}

SnrEstimate projected_snr(const SampleSet& samples, const RewardFn& reward,
                          std::span<const double> u, int batch_size, int num_batches,
                          std::uint64_t seed) {
  const std::vector<double> projections =
      batch_projections(samples, reward, u, batch_size, num_batches, seed);
  SnrEstimate estimate;
  estimate.mean = mean_of(projections);
  estimate.stdev = sample_stdev(projections, estimate.mean);
  if (estimate.stdev == 0.0) {
    // Degenerate batches: a constant reward centers to zero signal, anything
    // else is the infinite-SNR sentinel.
    if (estimate.mean == 0.0) return estimate;
    estimate.infinite = true;
    estimate.snr = std::numeric_limits<double>::infinity();
    return estimate;
  }
  estimate.snr = std::abs(estimate.mean) / estimate.stdev;
  estimate.half_width =
      bootstrap_half_width(projections, seed, [](std::span<const double> vals) {
        const double m = mean_of(vals);
        const double sd = sample_stdev(vals, m);
        return sd == 0.0 ? 0.0 : std::abs(m) / sd;
      });
  return estimate;
}

VarianceEstimate gradient_variance(const SampleSet& samples, const RewardFn& reward,
                                   std::span<const double> u, int batch_size,
                                   int num_batches, std::uint64_t seed) {
  const std::vector<double> projections =
      batch_projections(samples, reward, u, batch_size, num_batches, seed);
  VarianceEstimate estimate;
  const double mean = mean_of(projections);
  estimate.variance = sample_variance(projections, mean);
  estimate.half_width =
      bootstrap_half_width(projections, seed, [](std::span<const double> vals) {
        return sample_variance(vals, mean_of(vals));
      });
  return estimate;
}

const char* to_string(OrderingVerdict verdict) {
  switch (verdict) {
    case OrderingVerdict::consistent: return "consistent";
    case OrderingVerdict::violated: return "violated";
    case OrderingVerdict::not_applicable: return "not-applicable";
  }
  return "unknown";
}

OrderingReport ordering_check(const SampleSet& a, const SampleSet& b, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("ordering_check: alpha must be > 0");
  }
  auto summarize = [](const SampleSet& set, double& sr, double& mu) {
    set.validate();
    sr = 0.0;
    mu = 0.0;
    for (std::size_t i = 0; i < set.size(); ++i) {
      sr += set.correct[i];
      mu += set.s[i];
    }
    sr /= static_cast<double>(set.size());
    mu /= static_cast<double>(set.size());
  };

  OrderingReport report;
  summarize(a, report.sr_a, report.mu_s_a);
  summarize(b, report.sr_b, report.mu_s_b);
  report.j_a = report.sr_a + alpha * report.mu_s_a;
  report.j_b = report.sr_b + alpha * report.mu_s_b;

  if (report.sr_a != report.sr_b) {
    report.verdict = OrderingVerdict::not_applicable;
    return report;
  }
  // With equal success rates J_A - J_B collapses to alpha * (mu_A - mu_B).
  const double j_diff = (report.sr_a - report.sr_b) + alpha * (report.mu_s_a - report.mu_s_b);
  const double mu_diff = report.mu_s_a - report.mu_s_b;
  auto sign = [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); };
  report.verdict = sign(j_diff) == sign(mu_diff) ? OrderingVerdict::consistent
                                                 : OrderingVerdict::violated;
  return report;
}

double hacking_ratio(std::span<const double> s_raw, std::span<const int> correct) {
  if (s_raw.size() != correct.size()) {
    throw std::invalid_argument("hacking_ratio: length mismatch");
  }
  if (s_raw.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < s_raw.size(); ++i) {
    if (s_raw[i] > 0.7 && correct[i] == 0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(s_raw.size());
}

SnrReport snr_report(const SampleSet& samples, const core::RewardConfig& ssl_config,
                     int batch_size, int num_batches, std::uint64_t seed) {
  SnrReport report;
  report.u = binary_direction(samples);
  report.alignment = alignment_cov(samples, report.u);
  report.batch_size = batch_size;
  report.num_batches = num_batches;
  report.samples = samples.size();

  core::RewardConfig binary_config = ssl_config;
  binary_config.mode = core::RewardMode::binary;
  core::RewardConfig continuous_config = ssl_config;
  continuous_config.mode = core::RewardMode::continuous;
  core::RewardConfig ssl_mode_config = ssl_config;
  ssl_mode_config.mode = core::RewardMode::ssl;

  const SnrEstimate binary = projected_snr(samples, make_reward_fn(binary_config),
                                           report.u, batch_size, num_batches, seed);
  const SnrEstimate continuous =
      projected_snr(samples, make_reward_fn(continuous_config), report.u, batch_size,
                    num_batches, seed);
  const SnrEstimate ssl = projected_snr(samples, make_reward_fn(ssl_mode_config),
                                        report.u, batch_size, num_batches, seed);
  report.snr_binary = binary.snr;
  report.hw_binary = binary.half_width;
  report.snr_continuous = continuous.snr;
  report.hw_continuous = continuous.half_width;
  report.snr_ssl = ssl.snr;
  report.hw_ssl = ssl.half_width;
  return report;
}

void write_snr_report(std::ostream& out, const SnrReport& report) {
  out << "samples " << fmt(static_cast<long long>(report.samples)) << '\n';
  out << "batch_size " << fmt(report.batch_size) << '\n';
  out << "num_batches " << fmt(report.num_batches) << '\n';
  out << "alignment_cov " << fmt(report.alignment) << '\n';
  out << "snr_binary " << fmt(report.snr_binary) << '\n';
  out << "hw_binary " << fmt(report.hw_binary) << '\n';
  out << "snr_continuous " << fmt(report.snr_continuous) << '\n';
  out << "hw_continuous " << fmt(report.hw_continuous) << '\n';
  out << "snr_ssl " << fmt(report.snr_ssl) << '\n';
  out << "hw_ssl " << fmt(report.hw_ssl) << '\n';
  out << "u";
  for (const double v : report.u) out << ' ' << fmt(v);
  out << '\n';
}

SampleSet read_samples(std::istream& in) {
  SampleSet samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    std::istringstream row(line);
    int c = 0;
    double s = 0.0;
    if (!(row >> c >> s)) {
      throw ParseError(line_no, "expected 'C S ell...'");
    }
    std::vector<double> ell;
    double v = 0.0;
    while (row >> v) ell.push_back(v);
    if (!row.eof()) throw ParseError(line_no, "trailing garbage");
    if (ell.empty()) throw ParseError(line_no, "missing score-function entries");
    samples.correct.push_back(c);
    samples.s.push_back(s);
    samples.ell.push_back(std::move(ell));
  }
  if (samples.correct.empty()) throw ParseError(line_no ? line_no : 1, "no samples");
  samples.validate();
  return samples;
}

void write_samples(std::ostream& out, const SampleSet& samples) {
  samples.validate();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out << fmt(samples.correct[i]) << ' ' << fmt(samples.s[i]);
    for (const double v : samples.ell[i]) out << ' ' << fmt(v);
    out << '\n';
  }
}

SampleSet collect_click_samples(const envs::ClickPolicy& policy,
                                const gui::BoundingBox& target, int count,
                                std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("collect_click_samples: count < 1");
  SampleSet samples;
  for (int i = 0; i < count; ++i) {
    RngStream rng(seed, stream_id(kTagCollect, i));
    envs::ClickRollout rollout = envs::rollout_click(policy, target, rng);
    samples.correct.push_back(rollout.correct);
    samples.s.push_back(rollout.s_raw);
    samples.ell.push_back(std::move(rollout.score_gradient));
  }
  return samples;
}

SampleSet collect_maze_samples(const envs::MazePolicy& policy,
                               const grid::MazeSpec& maze, int max_steps, int count,
                               std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("collect_maze_samples: count < 1");
  const grid::Path reference = envs::bfs_shortest_path(maze);
  SampleSet samples;
  for (int i = 0; i < count; ++i) {
    RngStream rng(seed, stream_id(kTagCollect, i));
    envs::MazeRollout rollout =
        envs::rollout_maze(policy, maze, max_steps, rng, &reference);
    samples.correct.push_back(rollout.correct);
    samples.s.push_back(rollout.s_raw);
    samples.ell.push_back(std::move(rollout.score_gradient));
  }
  return samples;
}

std::vector<SweepCell> efficiency_sweep(const grpo::EnvSetup& setup,
                                        const core::RewardConfig& base_reward,
                                        const grpo::GrpoConfig& base_config,
                                        std::span<const core::RewardMode> modes,
                                        std::span<const long> budgets,
                                        std::span<const std::uint64_t> seeds) {
  if (modes.empty() || budgets.empty() || seeds.empty()) {
    throw std::invalid_argument("efficiency_sweep: empty mode/budget/seed list");
  }
  std::vector<SweepCell> cells;
  for (const core::RewardMode mode : modes) {
    for (const long budget : budgets) {
      for (const std::uint64_t seed : seeds) {
        cells.push_back({mode, budget, seed, 0.0});
      }
    }
  }
  parallel_for(cells.size(), [&](std::size_t i) {
    SweepCell& cell = cells[i];
    core::RewardConfig reward = base_reward;
    reward.mode = cell.mode;
    grpo::GrpoConfig config = base_config;
    config.seed = cell.seed;
    config.iterations = static_cast<int>(cell.budget / config.group_size);
    cell.success_rate = grpo::train(setup, reward, config).final_success;
  });
  return cells;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepCell> cells) {
  out << "mode,budget,seed,success_rate\n";
  for (const SweepCell& cell : cells) {
    const char* mode = cell.mode == core::RewardMode::binary       ? "binary"
                       : cell.mode == core::RewardMode::continuous ? "continuous"
                                                                   : "ssl";
    out << mode << ',' << fmt(static_cast<long long>(cell.budget)) << ','
        << fmt(cell.seed) << ',' << fmt(cell.success_rate) << '\n';
  }
}

std::vector<AblationCell> zone_ablation(const grpo::EnvSetup& setup,
                                        const core::RewardConfig& base_reward,
                                        const grpo::GrpoConfig& base_config,
                                        std::span<const int> tier_counts,
                                        std::span<const std::uint64_t> seeds) {
  if (tier_counts.empty() || seeds.empty()) {
    throw std::invalid_argument("zone_ablation: empty tier/seed list");
  }
  for (const int tiers : tier_counts) {
    if (tiers < 1) throw std::invalid_argument("zone_ablation: no preset for K < 1");
  }
  std::vector<AblationCell> cells;
  for (const int tiers : tier_counts) {
    for (const std::uint64_t seed : seeds) {
      cells.push_back({tiers, seed, 0.0});
    }
  }
  parallel_for(cells.size(), [&](std::size_t i) {
    AblationCell& cell = cells[i];
    core::RewardConfig reward = base_reward;
    reward.mode = core::RewardMode::ssl;
    reward.schema = core::ZoneSchema::uniform(cell.tiers);
    grpo::GrpoConfig config = base_config;
    config.seed = cell.seed;
    cell.success_rate = grpo::train(setup, reward, config).final_success;
  });
  return cells;
}

void write_ablation_csv(std::ostream& out, std::span<const AblationCell> cells) {
  out << "K,seed,success_rate\n";
  for (const AblationCell& cell : cells) {
    out << fmt(cell.tiers) << ',' << fmt(cell.seed) << ',' << fmt(cell.success_rate)
        << '\n';
  }
}

}  // namespace sweetspot::analysis
