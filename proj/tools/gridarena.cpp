// gridarena: generate tables, run campaigns, evaluate and compare.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <nlohmann/json.hpp>

#include "gridarena/campaign.hpp"
#include "gridarena/error.hpp"
#include "gridarena/table_io.hpp"

namespace {

using namespace gridarena;

constexpr int kOk = 0;
constexpr int kConfigExit = 2;
constexpr int kDataExit = 3;

nlohmann::json read_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("'" + path.string() + "': " + e.what());
  }
}

int gen_table(const std::string& spec_path, const std::string& out) {
  const auto recipe = table_recipe_from_json(read_config(spec_path), env_seed_or(0));
  const auto csv = generate_table(recipe, out);
  std::cout << "wrote " << csv.string() << " (" << recipe.landscape.spec.size() << " arms x "
            << recipe.folds << " folds)\n";
  return kOk;
}

int run_cmd(const std::string& config_path, const std::string& out, std::size_t jobs) {
  const auto config = load_campaign(config_path);
  const auto s = run_campaign(config, out, jobs);
  std::cout << "runs planned " << s.planned << ", written " << s.written << ", skipped "
            << s.skipped << "\n";
  return kOk;
}

int eval_cmd(const std::string& in, const std::string& out, std::size_t draws,
             std::optional<std::uint64_t> seed) {
  EvalOptions opt;
  opt.draws = draws;
  opt.seed = seed ? *seed : env_seed_or(0);
  const auto report = evaluate_directory(in, opt);
  write_eval_outputs(report, out);
  std::cout << report_csv(report);
  return kOk;
}

int compare_cmd(const std::string& in, const std::string& context, const std::string& out) {
  const auto report = compare_directory(in, parse_grouping(context));
  const auto text = to_json(report).dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    fs::create_directories(fs::path(out).parent_path().empty() ? fs::path(".")
                                                               : fs::path(out).parent_path());
    write_file_atomic(out, text);
    std::cout << "winner_inversion_rate " << report.rate << " over " << report.triples
              << " triples\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid hyperparameter search benchmark harness"};
  app.require_subcommand(1);

  std::string spec_path, config_path, in_dir, out_dir, context = "data_m", compare_out;
  std::size_t jobs = 1, draws = 100'000;
  std::optional<std::uint64_t> seed;

  auto* gen = app.add_subcommand("gen-table", "Write a synthetic score table and its manifest");
  gen->add_option("--spec", spec_path, "Landscape JSON (plus optional id, K)")->required();
  gen->add_option("--out", out_dir, "Output directory")->required();

  auto* run = app.add_subcommand("run", "Execute a campaign, skipping finished runs");
  run->add_option("--config", config_path, "Campaign JSON")->required();
  run->add_option("--out", out_dir, "Run directory")->required();
  run->add_option("--jobs", jobs, "Parallel workers")->check(CLI::PositiveNumber);

  auto* eval = app.add_subcommand("eval", "Compute metrics and reports for a run directory");
  eval->add_option("--in", in_dir, "Run directory")->required();
  eval->add_option("--out", out_dir, "Report directory")->required();
  eval->add_option("--draws", draws, "Monte Carlo draws per run")->check(CLI::PositiveNumber);
  eval->add_option("--seed", seed, "Monte Carlo seed (default: GRIDARENA_SEED or 0)");

  auto* compare = app.add_subcommand("compare", "Winner-inversion rate across engines");
  compare->add_option("--in", in_dir, "Run directory")->required();
  compare->add_option("--context", context, "Context grouping: data or data_m")
      ->check(CLI::IsMember({"data", "data_m"}));
  compare->add_option("--out", compare_out, "Write the JSON report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigExit;
  }

  try {
    if (*gen) return gen_table(spec_path, out_dir);
    if (*run) return run_cmd(config_path, out_dir, jobs);
    if (*eval) return eval_cmd(in_dir, out_dir, draws, seed);
    return compare_cmd(in_dir, context, compare_out);
  } catch (const DataError& e) {
    std::cerr << "gridarena: data error: " << e.what() << "\n";
    return kDataExit;
  } catch (const Error& e) {
    std::cerr << "gridarena: " << e.what() << "\n";
    return kConfigExit;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "gridarena: " << e.what() << "\n";
    return kConfigExit;
  }
}
