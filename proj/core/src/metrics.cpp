#include "gridarena/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gridarena/error.hpp"
#include "gridarena/rng.hpp"

namespace gridarena {

std::string to_string(RankStatistic s) {
  switch (s) {
    case RankStatistic::Dcg10: return "dcg10";
    case RankStatistic::TimeToTop10: return "time_to_top10";
    case RankStatistic::BestRank: return "best_rank";
  }
  return "unknown";
}

RankStatistic parse_rank_statistic(const std::string& name) {
  if (name == "dcg10") return RankStatistic::Dcg10;
  if (name == "time_to_top10") return RankStatistic::TimeToTop10;
  if (name == "best_rank") return RankStatistic::BestRank;
  throw ConfigError("unknown rank statistic '" + name + "'");
}

namespace {

void check_ranks(std::span<const std::size_t> ranks, std::size_t n) {
  for (auto r : ranks)
    if (r < 1 || r > n)
      throw RangeError("rank " + std::to_string(r) + " outside [1, " + std::to_string(n) + "]");
}

double dcg10_unchecked(std::span<const std::size_t> ranks, std::size_t cutoff) {
  double s = 0.0;
  for (std::size_t l = 0; l < ranks.size(); ++l)
    if (ranks[l] <= cutoff) s += 1.0 / std::log2(static_cast<double>(l + 2));
  return s;
}

double value_unchecked(RankStatistic stat, std::span<const std::size_t> ranks,
                       std::size_t grid_size) {
  const std::size_t cutoff = top10_cutoff(grid_size);
  switch (stat) {
    case RankStatistic::Dcg10: return dcg10_unchecked(ranks, cutoff);
    case RankStatistic::TimeToTop10: {
      for (std::size_t l = 0; l < ranks.size(); ++l)
        if (ranks[l] <= cutoff) return -static_cast<double>(l + 1);
      return -static_cast<double>(ranks.size() + 1);
    }
    case RankStatistic::BestRank:
      return -static_cast<double>(*std::min_element(ranks.begin(), ranks.end()));
  }
  return 0.0;
}

}  // namespace

double dcg10(std::span<const std::size_t> ranks, std::size_t grid_size) {
  check_ranks(ranks, grid_size);
  return dcg10_unchecked(ranks, top10_cutoff(grid_size));
}

AltStatistics alt_statistics(std::span<const std::size_t> ranks, std::size_t grid_size) {
  check_ranks(ranks, grid_size);
  if (ranks.empty()) throw ConfigError("rank list is empty");
  AltStatistics out;
  const std::size_t cutoff = top10_cutoff(grid_size);
  for (std::size_t l = 0; l < ranks.size(); ++l) {
    if (ranks[l] <= cutoff) {
      out.time_to_top10 = l + 1;
      break;
    }
  }
  out.best_rank = *std::min_element(ranks.begin(), ranks.end());
  return out;
}

double statistic_value(RankStatistic stat, std::span<const std::size_t> ranks,
                       std::size_t grid_size) {
  check_ranks(ranks, grid_size);
  if (ranks.empty()) throw ConfigError("rank list is empty");
  return value_unchecked(stat, ranks, grid_size);
}

double p_better_than_random(std::span<const std::size_t> ranks, std::size_t grid_size,
                            RankStatistic stat, std::size_t draws, std::uint64_t seed) {
  if (draws == 0) throw ConfigError("draw count must be positive");
  const std::size_t budget = ranks.size();
  if (budget == 0) throw ConfigError("rank list is empty");
  if (budget > grid_size)
    throw ConfigError("budget " + std::to_string(budget) + " exceeds grid size " +
                      std::to_string(grid_size));
  const double engine_value = statistic_value(stat, ranks, grid_size);

  // Partial Fisher-Yates on a persistent permutation, undone after each draw.
  std::vector<std::size_t> perm(grid_size);
  std::iota(perm.begin(), perm.end(), std::size_t{1});
  std::vector<std::size_t> swaps(budget);
  std::size_t wins = 0;
  for (std::size_t j = 0; j < draws; ++j) {
    Rng rng(derive_seed({seed, j}));
    for (std::size_t l = 0; l < budget; ++l) {
      const std::size_t pick = l + static_cast<std::size_t>(rng.below(grid_size - l));
      std::swap(perm[l], perm[pick]);
      swaps[l] = pick;
    }
    const double random_value =
        value_unchecked(stat, std::span<const std::size_t>(perm.data(), budget), grid_size);
    if (engine_value > random_value) ++wins;
    for (std::size_t l = budget; l-- > 0;) std::swap(perm[l], perm[swaps[l]]);
  }
  return static_cast<double>(wins) / static_cast<double>(draws);
}

double expected_random_best(std::span<const OrderedArm> order, std::size_t budget) {
  const std::size_t n = order.size();
  if (n == 0) throw ConfigError("empty validation order");
  if (budget < 1 || budget > n)
    throw ConfigError("budget " + std::to_string(budget) + " outside [1, " + std::to_string(n) +
                      "]");
  const double q = 1.0 - static_cast<double>(budget) / static_cast<double>(n);
  double weight = 1.0;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t l = 0; l < n && weight > 0.0; ++l) {
    num += weight * order[l].test;
    den += weight;
    weight *= q;
  }
  return num / den;
}

bool degenerate_sandwich(double r_rand, double r_grid) noexcept {
  const double scale = std::max({1.0, std::abs(r_rand), std::abs(r_grid)});
  return std::abs(r_grid - r_rand) <= 1e-12 * scale;
}

std::optional<double> normalized_score(double r_star, double r_rand, double r_grid) {
  if (degenerate_sandwich(r_rand, r_grid)) return std::nullopt;
  return 100.0 * ((r_star - r_rand) / (r_grid - r_rand));
}

double improvement_degree(std::span<const Experiment> experiments) {
  double num = 0.0;
  double den = 0.0;
  std::size_t used = 0;
  for (const auto& e : experiments) {
    if (e.degenerate()) continue;
    num += e.r_star - e.r_rand;
    den += e.r_grid - e.r_rand;
    ++used;
  }
  if (used == 0 || den == 0.0)
    throw UndefinedAggregateError("improvement degree undefined: every experiment has r_grid == r_rand");
  return 100.0 * (num / den);
}

double overall(std::span<const double> p_by_m, std::span<const double> imp_by_m) {
  if (p_by_m.empty() || imp_by_m.empty()) throw ConfigError("overall needs at least one budget");
  const double p = std::accumulate(p_by_m.begin(), p_by_m.end(), 0.0) /
                   static_cast<double>(p_by_m.size());
  const double imp = std::accumulate(imp_by_m.begin(), imp_by_m.end(), 0.0) /
                     static_cast<double>(imp_by_m.size());
  return (p * 100.0 - 50.0) + imp / 2.0;
}

double overall(const std::array<double, 3>& p_by_m, const std::array<double, 3>& imp_by_m) {
  return overall(std::span<const double>(p_by_m), std::span<const double>(imp_by_m));
}

MeanSe mean_se(std::span<const double> values) {
  MeanSe out;
  out.n = values.size();
  if (values.empty()) return out;
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(out.n);
  if (out.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    const double sd = std::sqrt(ss / static_cast<double>(out.n - 1));
    out.se = sd / std::sqrt(static_cast<double>(out.n));
  }
  return out;
}

InversionReport winner_inversion(const ScoreGrid& scores) {
  std::set<std::string> engines, models, contexts;
  for (const auto& [key, _] : scores) {
    engines.insert(std::get<0>(key));
    models.insert(std::get<1>(key));
    contexts.insert(std::get<2>(key));
  }
  if (engines.size() < 2) throw ConfigError("winner inversion needs at least two engines");
  if (models.size() < 2) throw ConfigError("winner inversion needs at least two models");

  auto lookup = [&](const std::string& e, const std::string& m,
                    const std::string& c) -> std::optional<double> {
    const auto it = scores.find({e, m, c});
    if (it == scores.end()) return std::nullopt;
    return it->second;
  };
  auto sign = [](double x) { return (x > 0.0) - (x < 0.0); };

  InversionReport rep;
  const std::vector<std::string> ev(engines.begin(), engines.end());
  const std::vector<std::string> mv(models.begin(), models.end());
  for (const auto& ctx : contexts) {
    for (std::size_t ma = 0; ma < mv.size(); ++ma)
      for (std::size_t mb = ma + 1; mb < mv.size(); ++mb)
        for (std::size_t ea = 0; ea < ev.size(); ++ea)
          for (std::size_t eb = ea + 1; eb < ev.size(); ++eb) {
            const auto a1 = lookup(ev[ea], mv[ma], ctx), a2 = lookup(ev[ea], mv[mb], ctx);
            const auto b1 = lookup(ev[eb], mv[ma], ctx), b2 = lookup(ev[eb], mv[mb], ctx);
            if (!a1 || !a2 || !b1 || !b2) continue;
            InversionTriple t{ctx, mv[ma], mv[mb], ev[ea], ev[eb]};
            const int under_a = sign(*a1 - *a2);
            const int under_b = sign(*b1 - *b2);
            ++rep.triples;
            if (under_a == 0 || under_b == 0) {
              t.tie = true;
              ++rep.ties;
            } else if (under_a != under_b) {
              t.inverted = true;
              ++rep.inversions;
              rep.inverting.push_back(std::move(t));
            }
          }
  }
  rep.rate = rep.triples == 0 ? 0.0
                              : static_cast<double>(rep.inversions) /
                                    static_cast<double>(rep.triples);
  return rep;
}

double winner_inversion_rate(const ScoreGrid& scores) { return winner_inversion(scores).rate; }

}  // namespace gridarena
