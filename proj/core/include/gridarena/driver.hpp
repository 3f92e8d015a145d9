#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gridarena/engines.hpp"
#include "gridarena/score_table.hpp"

namespace gridarena {

/// How L_m = m * sqrt(N) is turned into an integer.
enum class BudgetRule {
  RoundScaled,  // round(m * sqrt(N))
  ScaledRound,  // m * round(sqrt(N))
};

std::string to_string(BudgetRule rule);
BudgetRule parse_budget_rule(const std::string& name);

/// Trial budget for multiplier m on a grid of N arms, rounded to nearest and
/// clamped to [1, N].
std::size_t budget_for(std::size_t m, std::size_t grid_size,
                       BudgetRule rule = BudgetRule::RoundScaled);

/// The fold protocol of a run: a single fold, or the K-fold mean.
using Protocol = View;

struct Pull {
  ArmIndex arm;
  std::size_t linear = 0;
  double val = 0.0;         // served validation score
  bool duplicate = false;   // arm already pulled earlier in the run
  bool fallback = false;    // proposed by the driver after engine exhaustion
};

struct RunOptions {
  BudgetRule rule = BudgetRule::RoundScaled;
  /// Run with this many pulls instead of the m-derived budget. The m-derived
  /// (nominal) budget is still recorded and used as the random-search baseline.
  std::optional<std::size_t> budget_override;
};

/// The full trace of one engine run.
struct RunRecord {
  EngineConfig engine;
  std::string table_id;
  Protocol protocol = Protocol::cv();
  std::size_t m = 1;
  std::size_t budget = 0;          // pulls actually made
  std::size_t nominal_budget = 0;  // L_m for this m
  std::uint64_t seed = 0;
  std::vector<Pull> pulls;
  bool exhausted = false;
  /// Index into `pulls` of the first pull with the maximal served score.
  std::size_t best_pull = 0;
  /// Test score of the best pull under the run's view.
  double r_star = 0.0;
  /// Test rank of every pull under the run's view.
  std::vector<std::size_t> ranks;

  /// Stable key: <table>__<engine>__<protocol>__m<m>__s<seed>.
  std::string key() const;
};

/// The sequential loop: suggest, serve the validation score under `protocol`,
/// append to history, exactly L times.
RunRecord run(const EngineConfig& engine, const ScoreTable& table, const std::string& table_id,
              Protocol protocol, std::size_t m, std::uint64_t seed,
              const RunOptions& options = {});

/// Test ranks of the pulled arms under the record's protocol view.
std::vector<std::size_t> rank_sequence(const RunRecord& record, const ScoreTable& table);

/// Index of the first pull with the maximal validation score.
std::size_t best_validation_pull(const std::vector<Pull>& pulls);

/// One JSON object with a fixed field order, no trailing newline.
std::string to_json_line(const RunRecord& record);
RunRecord record_from_json(const nlohmann::json& j);

}  // namespace gridarena
