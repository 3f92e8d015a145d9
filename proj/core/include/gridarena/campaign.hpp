#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gridarena/driver.hpp"
#include "gridarena/engines.hpp"
#include "gridarena/landscape.hpp"
#include "gridarena/metrics.hpp"
#include "gridarena/score_table.hpp"

namespace gridarena {

namespace fs = std::filesystem;

/// GRIDARENA_SEED if set and numeric, otherwise `fallback`.
std::uint64_t env_seed_or(std::uint64_t fallback);

// ---------------------------------------------------------------------------
// Table generation
// ---------------------------------------------------------------------------

struct TableRecipe {
  std::string id;
  LandscapeSpec landscape;
  std::size_t folds = 10;
};

/// Landscape JSON plus "id" (default "synthetic") and "K" (default 10).
TableRecipe table_recipe_from_json(const nlohmann::json& j, std::uint64_t default_seed);

/// Writes <dir>/<id>.csv and <dir>/<id>.manifest.json; returns the CSV path.
fs::path generate_table(const TableRecipe& recipe, const fs::path& out_dir);

// ---------------------------------------------------------------------------
// Campaigns
// ---------------------------------------------------------------------------

struct TableSource {
  std::string id;
  std::string model;  // defaults to id
  std::string data;   // defaults to "default"
  std::optional<fs::path> path;
  std::optional<fs::path> manifest;
  std::optional<std::size_t> folds;
  bool minimize = false;
  std::optional<TableRecipe> recipe;
};

struct CampaignEngine {
  EngineConfig config;
  /// Pull every arm (budget N) instead of L_m.
  bool full_budget = false;
};

struct CampaignConfig {
  std::vector<TableSource> tables;
  std::vector<CampaignEngine> engines;
  std::vector<std::size_t> multipliers{1, 2, 3};
  std::vector<std::uint64_t> seeds;
  bool single_fold_all = true;
  bool cross_validated = true;
  BudgetRule budget_rule = BudgetRule::RoundScaled;
};

/// Relative table paths resolve against `base_dir`. Throws ConfigError.
CampaignConfig campaign_from_json(const nlohmann::json& j, const fs::path& base_dir,
                                  std::uint64_t default_seed);
CampaignConfig load_campaign(const fs::path& config_path);

struct RunSummary {
  std::size_t planned = 0;
  std::size_t written = 0;
  std::size_t skipped = 0;
};

/// Materializes tables under <out>/tables and writes one record file per
/// (table, engine, protocol, m, seed) under <out>/records. Existing record
/// files are skipped. Table load failures throw DataError naming the file.
RunSummary run_campaign(const CampaignConfig& config, const fs::path& out_dir, std::size_t jobs);

struct TableEntry {
  std::string id;
  std::string model;
  std::string data;
  ScoreTable table;
};

using TableSet = std::map<std::string, TableEntry>;

TableSet load_run_tables(const fs::path& run_dir);
/// All records under <run_dir>/records, sorted by key, with linear indices
/// resolved against their tables. Missing tables throw DataError.
std::vector<RunRecord> load_run_records(const fs::path& run_dir, const TableSet& tables);

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

struct EvalOptions {
  std::size_t draws = 100'000;
  std::uint64_t seed = 0;
  RankStatistic statistic = RankStatistic::Dcg10;
};

/// Per-run statistics. Rank-based fields are set for single-fold runs,
/// score-based fields for cross-validated runs.
struct RunMetrics {
  std::string key;
  std::string engine;
  std::string table;
  std::string protocol;
  std::size_t m = 0;
  std::uint64_t seed = 0;
  double r_star = 0.0;
  std::optional<double> statistic;
  std::optional<double> p;
  std::optional<double> r_rand;
  std::optional<double> r_grid;
  std::optional<double> r_tilde;
};

struct BudgetSummary {
  std::size_t m = 0;
  std::optional<MeanSe> p;
  std::optional<double> imp;
  double imp_se = 0.0;
  std::size_t experiments = 0;
};

struct EngineSummary {
  std::string engine;
  std::vector<BudgetSummary> by_m;
  std::optional<double> overall;
  std::vector<std::string> forte;
  /// model -> m -> improvement degree
  std::map<std::string, std::map<std::size_t, double>> by_model;
};

struct EvalReport {
  std::vector<RunMetrics> runs;
  std::vector<EngineSummary> engines;
};

/// Improvement degree at or above which a model joins an engine's forte list.
inline constexpr double kForteThreshold = 50.0;

EvalReport evaluate_runs(const TableSet& tables, const std::vector<RunRecord>& records,
                         const EvalOptions& options);
EvalReport evaluate_directory(const fs::path& run_dir, const EvalOptions& options);

nlohmann::ordered_json to_json(const EvalReport& report);
/// Header: engine,m,p_mean,p_se,imp,imp_se,overall
std::string report_csv(const EvalReport& report);
/// Long format: panel,engine,m,value,se
std::string plot_data_csv(const EvalReport& report);
/// metrics.json, report.csv and plot_data.csv under `out_dir`.
void write_eval_outputs(const EvalReport& report, const fs::path& out_dir);

// ---------------------------------------------------------------------------
// Winner-inversion comparison
// ---------------------------------------------------------------------------

enum class ContextGrouping {
  Data,        // one context per data label
  DataBudget,  // one context per (data label, m)
};

ContextGrouping parse_grouping(const std::string& name);

/// Mean r* per (engine, model, context), from cross-validated runs when any
/// exist and from all runs otherwise.
ScoreGrid score_grid(const TableSet& tables, const std::vector<RunRecord>& records,
                     ContextGrouping grouping);
InversionReport compare_directory(const fs::path& run_dir, ContextGrouping grouping);
nlohmann::ordered_json to_json(const InversionReport& report);

}  // namespace gridarena
