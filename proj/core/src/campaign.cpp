#include "gridarena/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "gridarena/error.hpp"
#include "gridarena/rng.hpp"
#include "gridarena/table_io.hpp"

namespace gridarena {

namespace {

constexpr const char* kTablesDir = "tables";
constexpr const char* kRecordsDir = "records";
constexpr const char* kIndexFile = "index.json";

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void require_safe_id(const std::string& id, const std::string& what) {
  if (id.empty()) throw ConfigError(what + " id is empty");
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    if (!ok) throw ConfigError(what + " id '" + id + "' may only use [A-Za-z0-9._-]");
  }
  if (id.find("__") != std::string::npos)
    throw ConfigError(what + " id '" + id + "' must not contain '__'");
}

void make_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw ConfigError("cannot create directory '" + dir.string() + "'");
}

nlohmann::json read_json(const fs::path& path, bool config) {
  std::ifstream in(path);
  if (!in) {
    if (config) throw ConfigError("cannot open '" + path.string() + "'");
    throw DataError("cannot open '" + path.string() + "'");
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    if (config) throw ConfigError("'" + path.string() + "': " + e.what());
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

std::string opt_number(const std::optional<double>& x) { return x ? format_score(*x) : ""; }

}  // namespace

std::uint64_t env_seed_or(std::uint64_t fallback) {
  const char* raw = std::getenv("GRIDARENA_SEED");
  if (!raw || !*raw) return fallback;
  std::uint64_t v = 0;
  const std::string_view s(raw);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("GRIDARENA_SEED must be a non-negative integer");
  return v;
}

TableRecipe table_recipe_from_json(const nlohmann::json& j, std::uint64_t default_seed) {
  TableRecipe r;
  r.landscape = landscape_from_json(j, default_seed);
  try {
    r.id = j.value("id", std::string("synthetic"));
    r.folds = j.value("K", std::size_t{10});
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad table recipe: ") + e.what());
  }
  if (r.folds == 0) throw ConfigError("K must be at least 1");
  require_safe_id(r.id, "table");
  return r;
}

fs::path generate_table(const TableRecipe& recipe, const fs::path& out_dir) {
  const ScoreTable table = synth_table(recipe.landscape, recipe.folds);
  make_dirs(out_dir);
  const auto csv = out_dir / (recipe.id + ".csv");
  save_table(table, csv, TableFormat::Csv);
  save_manifest(table.spec(), out_dir / (recipe.id + ".manifest.json"));
  return csv;
}

CampaignConfig campaign_from_json(const nlohmann::json& j, const fs::path& base_dir,
                                  std::uint64_t default_seed) {
  if (!j.is_object()) throw ConfigError("campaign config must be a JSON object");
  CampaignConfig c;
  try {
    if (!j.contains("tables") || !j.at("tables").is_array() || j.at("tables").empty())
      throw ConfigError("campaign needs a non-empty 'tables' list");
    std::set<std::string> ids;
    for (const auto& t : j.at("tables")) {
      TableSource s;
      if (t.contains("landscape")) {
        nlohmann::json recipe = t.at("landscape");
        if (t.contains("id")) recipe["id"] = t.at("id");
        if (t.contains("K")) recipe["K"] = t.at("K");
        s.recipe = table_recipe_from_json(recipe, default_seed);
        s.id = s.recipe->id;
      } else if (t.contains("path")) {
        s.path = base_dir / t.at("path").get<std::string>();
        if (t.contains("manifest")) s.manifest = base_dir / t.at("manifest").get<std::string>();
        if (t.contains("K")) s.folds = t.at("K").get<std::size_t>();
        s.minimize = t.value("minimize", false);
        s.id = t.value("id", s.path->stem().string());
      } else {
        throw ConfigError("table entry needs 'landscape' or 'path'");
      }
      require_safe_id(s.id, "table");
      if (!ids.insert(s.id).second) throw ConfigError("duplicate table id '" + s.id + "'");
      s.model = t.value("model", s.id);
      s.data = t.value("data", std::string("default"));
      c.tables.push_back(std::move(s));
    }

    if (!j.contains("engines") || !j.at("engines").is_array() || j.at("engines").empty())
      throw ConfigError("campaign needs a non-empty 'engines' list");
    std::set<std::string> labels;
    for (const auto& e : j.at("engines")) {
      CampaignEngine ce;
      ce.config = engine_config_from_json(e);
      const auto budget = e.value("budget", std::string("nominal"));
      if (budget != "nominal" && budget != "full")
        throw ConfigError("engine budget must be 'nominal' or 'full'");
      ce.full_budget = budget == "full";
      require_safe_id(ce.config.label(), "engine");
      if (!labels.insert(ce.config.label()).second)
        throw ConfigError("duplicate engine name '" + ce.config.label() + "'");
      c.engines.push_back(std::move(ce));
    }

    if (j.contains("multipliers")) {
      c.multipliers = j.at("multipliers").get<std::vector<std::size_t>>();
      if (c.multipliers.empty()) throw ConfigError("'multipliers' is empty");
      for (auto m : c.multipliers)
        if (m < 1 || m > 3) throw ConfigError("multipliers must be drawn from {1, 2, 3}");
    }

    if (j.contains("seeds")) {
      const auto& s = j.at("seeds");
      if (s.is_array()) {
        c.seeds = s.get<std::vector<std::uint64_t>>();
      } else if (s.is_object()) {
        const auto start = s.value("start", default_seed);
        const auto count = s.at("count").get<std::size_t>();
        for (std::size_t i = 0; i < count; ++i) c.seeds.push_back(start + i);
      } else {
        throw ConfigError("'seeds' must be a list or {start, count}");
      }
    } else {
      c.seeds = {default_seed};
    }
    if (c.seeds.empty()) throw ConfigError("campaign needs at least one seed");

    if (j.contains("protocols")) {
      c.single_fold_all = c.cross_validated = false;
      for (const auto& p : j.at("protocols")) {
        const auto name = p.get<std::string>();
        if (name == "single_fold_all") c.single_fold_all = true;
        else if (name == "cross_validated") c.cross_validated = true;
        else throw ConfigError("unknown protocol '" + name + "'");
      }
      if (!c.single_fold_all && !c.cross_validated) throw ConfigError("'protocols' is empty");
    }
    if (j.contains("budget_rule"))
      c.budget_rule = parse_budget_rule(j.at("budget_rule").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad campaign config: ") + e.what());
  }
  return c;
}

CampaignConfig load_campaign(const fs::path& config_path) {
  return campaign_from_json(read_json(config_path, true), config_path.parent_path(),
                            env_seed_or(0));
}

namespace {

ScoreTable materialize(const TableSource& s) {
  if (s.recipe) return synth_table(s.recipe->landscape, s.recipe->folds);
  try {
    LoadOptions opt;
    if (s.manifest) opt.manifest = load_manifest(*s.manifest);
    opt.folds = s.folds;
    opt.minimize = s.minimize;
    return load_table(*s.path, opt);
  } catch (const Error& e) {
    throw DataError("cannot load table '" + s.path->string() + "': " + e.what());
  }
}

struct Task {
  const TableSource* source;
  const ScoreTable* table;
  const CampaignEngine* engine;
  View protocol;
  std::size_t m;
  std::uint64_t seed;
};

}  // namespace

RunSummary run_campaign(const CampaignConfig& config, const fs::path& out_dir, std::size_t jobs) {
  const fs::path tables_dir = out_dir / kTablesDir;
  const fs::path records_dir = out_dir / kRecordsDir;
  make_dirs(tables_dir);
  make_dirs(records_dir);

  std::vector<ScoreTable> tables;
  tables.reserve(config.tables.size());
  auto index = nlohmann::ordered_json::array();
  for (const auto& s : config.tables) {
    tables.push_back(materialize(s));
    save_table(tables.back(), tables_dir / (s.id + ".csv"), TableFormat::Csv);
    save_manifest(tables.back().spec(), tables_dir / (s.id + ".manifest.json"));
    nlohmann::ordered_json e;
    e["id"] = s.id;
    e["model"] = s.model;
    e["data"] = s.data;
    e["file"] = s.id + ".csv";
    e["manifest"] = s.id + ".manifest.json";
    e["K"] = tables.back().folds();
    index.push_back(std::move(e));
  }
  nlohmann::ordered_json index_doc;
  index_doc["tables"] = std::move(index);
  write_file_atomic(tables_dir / kIndexFile, index_doc.dump(2) + "\n");

  std::vector<Task> tasks;
  for (std::size_t t = 0; t < config.tables.size(); ++t) {
    std::vector<View> protocols;
    if (config.single_fold_all)
      for (std::size_t k = 1; k <= tables[t].folds(); ++k) protocols.push_back(View::fold(k));
    if (config.cross_validated) protocols.push_back(View::cv());
    for (const auto& e : config.engines)
      for (const auto& p : protocols)
        for (auto m : config.multipliers)
          for (auto seed : config.seeds)
            tasks.push_back({&config.tables[t], &tables[t], &e, p, m, seed});
  }

  RunSummary summary;
  summary.planned = tasks.size();
  std::atomic<std::size_t> next{0}, written{0}, skipped{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      {
        std::lock_guard lock(error_mutex);
        if (error) return;
      }
      const Task& task = tasks[i];
      try {
        RunOptions opt;
        opt.rule = config.budget_rule;
        if (task.engine->full_budget) opt.budget_override = task.table->size();
        // Key is known before running, so completed runs cost only a stat().
        RunRecord probe;
        probe.table_id = task.source->id;
        probe.engine = task.engine->config;
        probe.protocol = task.protocol;
        probe.m = task.m;
        probe.seed = task.seed;
        const fs::path file = records_dir / (probe.key() + ".jsonl");
        if (fs::exists(file)) {
          ++skipped;
          continue;
        }
        const RunRecord rec = run(task.engine->config, *task.table, task.source->id,
                                  task.protocol, task.m, task.seed, opt);
        write_file_atomic(file, to_json_line(rec) + "\n");
        ++written;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  const std::size_t n_workers = std::max<std::size_t>(1, std::min(jobs, tasks.size()));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  summary.written = written;
  summary.skipped = skipped;
  return summary;
}

TableSet load_run_tables(const fs::path& run_dir) {
  const fs::path dir = run_dir / kTablesDir;
  const auto doc = read_json(dir / kIndexFile, false);
  TableSet out;
  try {
    for (const auto& e : doc.at("tables")) {
      const auto id = e.at("id").get<std::string>();
      const auto file = dir / e.at("file").get<std::string>();
      LoadOptions opt;
      opt.manifest = load_manifest(dir / e.at("manifest").get<std::string>());
      opt.folds = e.at("K").get<std::size_t>();
      out.emplace(id, TableEntry{id, e.at("model").get<std::string>(),
                                 e.at("data").get<std::string>(), load_table(file, opt)});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad table index in '" + dir.string() + "': " + e.what());
  }
  return out;
}

std::vector<RunRecord> load_run_records(const fs::path& run_dir, const TableSet& tables) {
  const fs::path dir = run_dir / kRecordsDir;
  if (!fs::is_directory(dir)) throw DataError("no records directory in '" + run_dir.string() + "'");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<RunRecord> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("'" + f.string() + "': " + e.what());
      }
      RunRecord r = record_from_json(j);
      const auto it = tables.find(r.table_id);
      if (it == tables.end())
        throw DataError("record " + r.key() + " references missing table '" + r.table_id + "'");
      const auto& spec = it->second.table.spec();
      for (auto& p : r.pulls) p.linear = spec.to_linear(p.arm);
      out.push_back(std::move(r));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RunRecord& a, const RunRecord& b) { return a.key() < b.key(); });
  return out;
}

EvalReport evaluate_runs(const TableSet& tables, const std::vector<RunRecord>& records,
                         const EvalOptions& options) {
  if (options.draws == 0) throw ConfigError("draw count must be positive");
  EvalReport rep;

  struct Cell {
    std::vector<double> p;
    std::vector<Experiment> experiments;
    std::map<std::uint64_t, std::vector<Experiment>> by_seed;
  };
  std::map<std::string, std::map<std::size_t, Cell>> cells;
  std::map<std::string, std::map<std::string, std::map<std::size_t, std::vector<Experiment>>>>
      by_model;

  std::vector<const RunRecord*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const RunRecord* a, const RunRecord* b) { return a->key() < b->key(); });

  for (const RunRecord* rec : sorted) {
    const auto it = tables.find(rec->table_id);
    if (it == tables.end())
      throw DataError("record " + rec->key() + " references missing table '" + rec->table_id + "'");
    const TableEntry& entry = it->second;
    const ScoreTable& table = entry.table;
    table.check_view(rec->protocol);

    RunMetrics rm;
    rm.key = rec->key();
    rm.engine = rec->engine.label();
    rm.table = rec->table_id;
    rm.protocol = rec->protocol.name();
    rm.m = rec->m;
    rm.seed = rec->seed;
    const std::size_t best = best_validation_pull(rec->pulls);
    rm.r_star = table.test(rec->pulls[best].linear, rec->protocol);
    if (std::abs(rm.r_star - rec->r_star) > 1e-9 * std::max(1.0, std::abs(rm.r_star)))
      throw DataError("record " + rm.key + " does not match table '" + rec->table_id + "'");

    Cell& cell = cells[rm.engine][rm.m];
    if (!rec->protocol.is_cv()) {
      const auto ranks = rank_sequence(*rec, table);
      rm.statistic = statistic_value(options.statistic, ranks, table.size());
      rm.p = p_better_than_random(ranks, table.size(), options.statistic, options.draws,
                                  derive_seed({options.seed, fnv1a(rm.key)}));
      cell.p.push_back(*rm.p);
    } else {
      const auto order = table.validation_order(View::cv());
      const std::size_t baseline_budget = rec->nominal_budget;
      const Experiment e{rm.r_star, expected_random_best(order, baseline_budget),
                         order.front().test};
      rm.r_rand = e.r_rand;
      rm.r_grid = e.r_grid;
      rm.r_tilde = normalized_score(e.r_star, e.r_rand, e.r_grid);
      cell.experiments.push_back(e);
      cell.by_seed[rec->seed].push_back(e);
      by_model[rm.engine][entry.model][rm.m].push_back(e);
    }
    rep.runs.push_back(std::move(rm));
  }

  for (const auto& [engine, per_m] : cells) {
    EngineSummary es;
    es.engine = engine;
    std::vector<double> ps, imps;
    for (const auto& [m, cell] : per_m) {
      BudgetSummary bs;
      bs.m = m;
      if (!cell.p.empty()) bs.p = mean_se(cell.p);
      bs.experiments = cell.experiments.size();
      if (!cell.experiments.empty()) {
        try {
          bs.imp = improvement_degree(cell.experiments);
          std::vector<double> per_seed;
          for (const auto& [seed, ex] : cell.by_seed) {
            try {
              per_seed.push_back(improvement_degree(ex));
            } catch (const UndefinedAggregateError&) {
            }
          }
          bs.imp_se = mean_se(per_seed).se;
        } catch (const UndefinedAggregateError&) {
        }
      }
      if (bs.p && bs.imp) {
        ps.push_back(bs.p->mean);
        imps.push_back(*bs.imp);
      }
      es.by_m.push_back(std::move(bs));
    }
    if (!ps.empty()) es.overall = overall(ps, imps);

    for (const auto& [model, per_budget] : by_model[engine]) {
      bool forte = false;
      for (const auto& [m, ex] : per_budget) {
        try {
          const double imp = improvement_degree(ex);
          es.by_model[model][m] = imp;
          forte = forte || imp >= kForteThreshold;
        } catch (const UndefinedAggregateError&) {
        }
      }
      if (forte) es.forte.push_back(model);
    }
    rep.engines.push_back(std::move(es));
  }
  return rep;
}

EvalReport evaluate_directory(const fs::path& run_dir, const EvalOptions& options) {
  const TableSet tables = load_run_tables(run_dir);
  return evaluate_runs(tables, load_run_records(run_dir, tables), options);
}

nlohmann::ordered_json to_json(const EvalReport& report) {
  auto opt = [](const std::optional<double>& x) {
    return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr);
  };
  nlohmann::ordered_json doc;
  auto engines = nlohmann::ordered_json::array();
  for (const auto& e : report.engines) {
    nlohmann::ordered_json je;
    je["engine"] = e.engine;
    je["overall"] = opt(e.overall);
    je["forte"] = e.forte;
    auto budgets = nlohmann::ordered_json::array();
    for (const auto& b : e.by_m) {
      nlohmann::ordered_json jb;
      jb["m"] = b.m;
      jb["p_mean"] = b.p ? nlohmann::ordered_json(b.p->mean) : nlohmann::ordered_json(nullptr);
      jb["p_se"] = b.p ? nlohmann::ordered_json(b.p->se) : nlohmann::ordered_json(nullptr);
      jb["p_runs"] = b.p ? b.p->n : 0;
      jb["imp"] = opt(b.imp);
      jb["imp_se"] = b.imp ? nlohmann::ordered_json(b.imp_se) : nlohmann::ordered_json(nullptr);
      jb["experiments"] = b.experiments;
      budgets.push_back(std::move(jb));
    }
    je["budgets"] = std::move(budgets);
    nlohmann::ordered_json models = nlohmann::ordered_json::object();
    for (const auto& [model, per_m] : e.by_model) {
      nlohmann::ordered_json jm = nlohmann::ordered_json::object();
      for (const auto& [m, imp] : per_m) jm[std::to_string(m)] = imp;
      models[model] = std::move(jm);
    }
    je["improvement_by_model"] = std::move(models);
    engines.push_back(std::move(je));
  }
  doc["engines"] = std::move(engines);
  auto runs = nlohmann::ordered_json::array();
  for (const auto& r : report.runs) {
    nlohmann::ordered_json jr;
    jr["key"] = r.key;
    jr["engine"] = r.engine;
    jr["table"] = r.table;
    jr["protocol"] = r.protocol;
    jr["m"] = r.m;
    jr["seed"] = r.seed;
    jr["statistic"] = opt(r.statistic);
    jr["p_better_than_random"] = opt(r.p);
    jr["r_star"] = r.r_star;
    jr["r_rand"] = opt(r.r_rand);
    jr["r_grid"] = opt(r.r_grid);
    jr["r_tilde"] = opt(r.r_tilde);
    runs.push_back(std::move(jr));
  }
  doc["runs"] = std::move(runs);
  return doc;
}

std::string report_csv(const EvalReport& report) {
  std::ostringstream os;
  os << "engine,m,p_mean,p_se,imp,imp_se,overall\n";
  for (const auto& e : report.engines) {
    for (const auto& b : e.by_m) {
      os << e.engine << ',' << b.m << ',' << (b.p ? format_score(b.p->mean) : "") << ','
         << (b.p ? format_score(b.p->se) : "") << ',' << opt_number(b.imp) << ','
         << (b.imp ? format_score(b.imp_se) : "") << ',' << opt_number(e.overall) << '\n';
    }
  }
  return os.str();
}

std::string plot_data_csv(const EvalReport& report) {
  std::ostringstream os;
  os << "panel,engine,m,value,se\n";
  for (const auto& e : report.engines)
    for (const auto& b : e.by_m)
      if (b.p)
        os << "p_better_than_random," << e.engine << ',' << b.m << ',' << format_score(b.p->mean)
           << ',' << format_score(b.p->se) << '\n';
  for (const auto& e : report.engines)
    for (const auto& b : e.by_m)
      if (b.imp)
        os << "improvement_degree," << e.engine << ',' << b.m << ',' << format_score(*b.imp)
           << ',' << format_score(b.imp_se) << '\n';
  return os.str();
}

void write_eval_outputs(const EvalReport& report, const fs::path& out_dir) {
  make_dirs(out_dir);
  write_file_atomic(out_dir / "metrics.json", to_json(report).dump(2) + "\n");
  write_file_atomic(out_dir / "report.csv", report_csv(report));
  write_file_atomic(out_dir / "plot_data.csv", plot_data_csv(report));
}

ContextGrouping parse_grouping(const std::string& name) {
  if (name == "data") return ContextGrouping::Data;
  if (name == "data_m") return ContextGrouping::DataBudget;
  throw ConfigError("unknown grouping '" + name + "' (expected data or data_m)");
}

ScoreGrid score_grid(const TableSet& tables, const std::vector<RunRecord>& records,
                     ContextGrouping grouping) {
  const bool any_cv = std::any_of(records.begin(), records.end(),
                                  [](const RunRecord& r) { return r.protocol.is_cv(); });
  std::map<std::tuple<std::string, std::string, std::string>, std::pair<double, std::size_t>> acc;
  for (const auto& r : records) {
    if (any_cv && !r.protocol.is_cv()) continue;
    const auto it = tables.find(r.table_id);
    if (it == tables.end())
      throw DataError("record " + r.key() + " references missing table '" + r.table_id + "'");
    const auto& entry = it->second;
    const double r_star =
        entry.table.test(r.pulls[best_validation_pull(r.pulls)].linear, r.protocol);
    std::string context = entry.data;
    if (grouping == ContextGrouping::DataBudget) context += "/m" + std::to_string(r.m);
    auto& slot = acc[{r.engine.label(), entry.model, context}];
    slot.first += r_star;
    ++slot.second;
  }
  ScoreGrid grid;
  for (const auto& [key, sum] : acc) grid[key] = sum.first / static_cast<double>(sum.second);
  return grid;
}

InversionReport compare_directory(const fs::path& run_dir, ContextGrouping grouping) {
  const TableSet tables = load_run_tables(run_dir);
  return winner_inversion(score_grid(tables, load_run_records(run_dir, tables), grouping));
}

nlohmann::ordered_json to_json(const InversionReport& report) {
  nlohmann::ordered_json doc;
  doc["winner_inversion_rate"] = report.rate;
  doc["triples"] = report.triples;
  doc["inversions"] = report.inversions;
  doc["ties"] = report.ties;
  auto list = nlohmann::ordered_json::array();
  for (const auto& t : report.inverting) {
    nlohmann::ordered_json jt;
    jt["context"] = t.context;
    jt["models"] = {t.model_a, t.model_b};
    jt["engines"] = {t.engine_a, t.engine_b};
    list.push_back(std::move(jt));
  }
  doc["inverting"] = std::move(list);
  return doc;
}

}  // namespace gridarena
