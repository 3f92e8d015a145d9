#include "gridarena/driver.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "gridarena/error.hpp"
#include "gridarena/rng.hpp"

namespace gridarena {

std::string to_string(BudgetRule rule) {
  return rule == BudgetRule::RoundScaled ? "round_scaled" : "scaled_round";
}

BudgetRule parse_budget_rule(const std::string& name) {
  if (name == "round_scaled") return BudgetRule::RoundScaled;
  if (name == "scaled_round") return BudgetRule::ScaledRound;
  throw ConfigError("unknown budget rule '" + name + "'");
}

std::size_t budget_for(std::size_t m, std::size_t grid_size, BudgetRule rule) {
  if (grid_size == 0) throw ConfigError("grid size must be positive");
  const double root = std::sqrt(static_cast<double>(grid_size));
  const double raw = rule == BudgetRule::RoundScaled
                         ? std::round(static_cast<double>(m) * root)
                         : static_cast<double>(m) * std::round(root);
  const auto l = static_cast<std::size_t>(raw);
  return std::clamp<std::size_t>(l, 1, grid_size);
}

std::string RunRecord::key() const {
  return table_id + "__" + engine.label() + "__" + protocol.name() + "__m" + std::to_string(m) +
         "__s" + std::to_string(seed);
}

std::size_t best_validation_pull(const std::vector<Pull>& pulls) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < pulls.size(); ++i)
    if (pulls[i].val > pulls[best].val) best = i;
  return best;
}

std::vector<std::size_t> rank_sequence(const RunRecord& record, const ScoreTable& table) {
  const auto all = table.test_ranks(record.protocol);
  std::vector<std::size_t> out;
  out.reserve(record.pulls.size());
  for (const auto& p : record.pulls) out.push_back(all.at(p.linear));
  return out;
}

RunRecord run(const EngineConfig& engine, const ScoreTable& table, const std::string& table_id,
              Protocol protocol, std::size_t m, std::uint64_t seed, const RunOptions& options) {
  table.check_view(protocol);
  const GridSpec& spec = table.spec();

  RunRecord rec;
  rec.engine = engine;
  rec.table_id = table_id;
  rec.protocol = protocol;
  rec.m = m;
  rec.seed = seed;
  rec.nominal_budget = budget_for(m, spec.size(), options.rule);
  rec.budget = options.budget_override.value_or(rec.nominal_budget);
  if (rec.budget == 0) throw ConfigError("budget is zero");
  if (rec.budget > spec.size())
    throw ConfigError("budget " + std::to_string(rec.budget) + " exceeds grid size " +
                      std::to_string(spec.size()));

  auto eng = make_engine(engine, spec, rec.budget);
  Rng engine_rng(derive_seed({engine.seed, seed, 0x454e47}));
  Rng fallback_rng(derive_seed({engine.seed, seed, 0x464c42}));

  // The engine only ever sees this history; test scores stay on this side.
  History history;
  std::vector<bool> pulled(spec.size(), false);
  std::size_t n_pulled = 0;
  rec.pulls.reserve(rec.budget);

  while (rec.pulls.size() < rec.budget) {
    Pull p;
    if (auto arm = eng->suggest(history, engine_rng)) {
      p.linear = spec.to_linear(*arm);
      p.arm = std::move(*arm);
    } else {
      rec.exhausted = true;
      p.fallback = true;
      // Unpulled arms always remain: budget <= N and fewer than budget pulls so far.
      auto target = static_cast<std::size_t>(fallback_rng.below(spec.size() - n_pulled));
      for (std::size_t k = 0; k < spec.size(); ++k) {
        if (pulled[k]) continue;
        if (target-- == 0) {
          p.linear = k;
          break;
        }
      }
      p.arm = spec.from_linear(p.linear);
    }
    p.duplicate = pulled[p.linear];
    if (!p.duplicate) {
      pulled[p.linear] = true;
      ++n_pulled;
    }
    p.val = table.val(p.linear, protocol);
    history.append({p.arm, p.linear, p.val});
    rec.pulls.push_back(std::move(p));
  }

  rec.best_pull = best_validation_pull(rec.pulls);
  rec.r_star = table.test(rec.pulls[rec.best_pull].linear, protocol);
  rec.ranks = rank_sequence(rec, table);
  return rec;
}

std::string to_json_line(const RunRecord& r) {
  nlohmann::ordered_json j;
  j["key"] = r.key();
  j["table"] = r.table_id;
  j["engine"] = to_json(r.engine);
  j["protocol"] = r.protocol.name();
  j["m"] = r.m;
  j["budget"] = r.budget;
  j["nominal_budget"] = r.nominal_budget;
  j["seed"] = r.seed;
  auto pulls = nlohmann::ordered_json::array();
  for (const auto& p : r.pulls) {
    nlohmann::ordered_json e;
    e["arm"] = p.arm.coords;
    e["val"] = p.val;
    e["dup"] = p.duplicate;
    e["fallback"] = p.fallback;
    pulls.push_back(std::move(e));
  }
  j["pulls"] = std::move(pulls);
  j["exhausted"] = r.exhausted;
  j["best_pull"] = r.best_pull;
  j["r_star"] = r.r_star;
  j["ranks"] = r.ranks;
  return j.dump();
}

RunRecord record_from_json(const nlohmann::json& j) {
  RunRecord r;
  try {
    r.table_id = j.at("table").get<std::string>();
    r.engine = engine_config_from_json(j.at("engine"));
    r.protocol = View::parse(j.at("protocol").get<std::string>());
    r.m = j.at("m").get<std::size_t>();
    r.budget = j.at("budget").get<std::size_t>();
    r.nominal_budget = j.at("nominal_budget").get<std::size_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& e : j.at("pulls")) {
      Pull p;
      p.arm = ArmIndex(e.at("arm").get<std::vector<std::int32_t>>());
      p.val = e.at("val").get<double>();
      p.duplicate = e.at("dup").get<bool>();
      p.fallback = e.at("fallback").get<bool>();
      r.pulls.push_back(std::move(p));
    }
    r.exhausted = j.at("exhausted").get<bool>();
    r.best_pull = j.at("best_pull").get<std::size_t>();
    r.r_star = j.at("r_star").get<double>();
    r.ranks = j.at("ranks").get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad run record: ") + e.what());
  }
  if (r.pulls.size() != r.budget)
    throw DataError("run record " + r.key() + " has " + std::to_string(r.pulls.size()) +
                    " pulls, budget " + std::to_string(r.budget));
  return r;
}

}  // namespace gridarena
