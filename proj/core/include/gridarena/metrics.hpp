#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "gridarena/score_table.hpp"

namespace gridarena {

// ---------------------------------------------------------------------------
// Rank-based statistics
// ---------------------------------------------------------------------------

enum class RankStatistic { Dcg10, TimeToTop10, BestRank };

std::string to_string(RankStatistic s);
RankStatistic parse_rank_statistic(const std::string& name);

/// Number of ranks counted as "top 10%": floor(N / 10).
constexpr std::size_t top10_cutoff(std::size_t grid_size) noexcept { return grid_size / 10; }

/// Discounted count of top-10% hits: sum over l of [rank_l <= N/10] / log2(l + 1).
double dcg10(std::span<const std::size_t> ranks, std::size_t grid_size);

struct AltStatistics {
  std::optional<std::size_t> time_to_top10;  // 1-based pull index of the first hit
  std::size_t best_rank = 0;
};

AltStatistics alt_statistics(std::span<const std::size_t> ranks, std::size_t grid_size);

/// The statistic oriented higher-is-better. Lower-is-better statistics are
/// negated; a run that never reaches the top 10% scores -(L + 1).
double statistic_value(RankStatistic stat, std::span<const std::size_t> ranks,
                       std::size_t grid_size);

/// Monte Carlo estimate of P(s(ranks) > s(random)), where each random
/// sequence is L distinct ranks drawn without replacement from [1, N].
/// Draw j uses its own stream derived from (seed, j). Ties count as losses.
double p_better_than_random(std::span<const std::size_t> ranks, std::size_t grid_size,
                            RankStatistic stat, std::size_t draws, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Score-based statistics
// ---------------------------------------------------------------------------

/// Expected best-validation test score of random search with budget L:
/// the (1 - L/N)^(l-1)-weighted average of test scores in validation order.
double expected_random_best(std::span<const OrderedArm> validation_order, std::size_t budget);

/// True when r_grid and r_rand agree to within 1e-12 relative; the sandwich
/// has no width and the normalized score is undefined.
bool degenerate_sandwich(double r_rand, double r_grid) noexcept;

/// 100 (r* - r_rand) / (r_grid - r_rand); nullopt on a degenerate sandwich.
std::optional<double> normalized_score(double r_star, double r_rand, double r_grid);

struct Experiment {
  double r_star = 0.0;
  double r_rand = 0.0;
  double r_grid = 0.0;

  bool degenerate() const noexcept { return degenerate_sandwich(r_rand, r_grid); }
};

/// 100 sum(r* - r_rand) / sum(r_grid - r_rand), skipping degenerate
/// experiments. Throws UndefinedAggregateError when all are degenerate.
double improvement_degree(std::span<const Experiment> experiments);

/// (mean p * 100 - 50) + mean improvement / 2, p as probabilities in [0, 1].
double overall(const std::array<double, 3>& p_by_m, const std::array<double, 3>& imp_by_m);
/// Same formula over any number of budgets.
double overall(std::span<const double> p_by_m, std::span<const double> imp_by_m);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;  // sample standard deviation / sqrt(n); 0 when n < 2
  std::size_t n = 0;
};

MeanSe mean_se(std::span<const double> values);

// ---------------------------------------------------------------------------
// Winner inversion
// ---------------------------------------------------------------------------

/// (engine, model, context) -> mean r*.
using ScoreGrid = std::map<std::tuple<std::string, std::string, std::string>, double>;

struct InversionTriple {
  std::string context;
  std::string model_a, model_b;    // model_a < model_b
  std::string engine_a, engine_b;  // engine_a < engine_b
  bool tie = false;
  bool inverted = false;
};

struct InversionReport {
  std::size_t triples = 0;
  std::size_t inversions = 0;
  std::size_t ties = 0;
  double rate = 0.0;
  std::vector<InversionTriple> inverting;
};

/// Over every (model pair, engine pair, context) with all four scores present,
/// the fraction whose better model differs between the two engines. Triples
/// with a tie under either engine count in the denominator only.
/// Throws ConfigError with fewer than two engines or two models.
InversionReport winner_inversion(const ScoreGrid& scores);
double winner_inversion_rate(const ScoreGrid& scores);

}  // namespace gridarena
