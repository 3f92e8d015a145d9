// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gridarena/campaign.hpp"
#include "gridarena/driver.hpp"
#include "gridarena/landscape.hpp"
#include "gridarena/metrics.hpp"
#include "support.hpp"

using namespace gridarena;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

LandscapeSpec noiseless(std::vector<std::size_t> sizes, ObjectiveFamily family,
                        std::vector<double> center, std::uint64_t seed) {
  LandscapeSpec land;
  land.spec = GridSpec::from_sizes(sizes);
  land.objective.family = family;
  land.objective.center = std::move(center);
  land.seed = seed;
  return land;
}

// 1. Overall score from published per-budget values.
Outcome overall_reconstruction() {
  struct Row {
    const char* engine;
    std::array<double, 3> p, imp;
    double printed, expected;
  };
  const Row rows[] = {
      {"HEBO", {0.59, 0.69, 0.76}, {33, 63, 74}, 46, 46.0 + 1.0 / 3.0},
      {"BlendSearch", {0.62, 0.72, 0.79}, {24, 56, 64}, 45, 45.0},
      {"AX", {0.68, 0.74, 0.74}, {56, 50, 22}, 44, 43.0 + 1.0 / 3.0},
  };
  Outcome o;
  for (const auto& r : rows) {
    const double v = overall(r.p, r.imp);
    const bool ok = std::abs(v - r.printed) <= 1.0 && std::abs(v - r.expected) <= 1e-9;
    o.pass = o.pass && ok;
    o.detail += std::string(r.engine) + " " + fmt(v, 2) + " (printed " + fmt(r.printed, 0) + ") ";
  }
  return o;
}

// 2. Budget anchors.
Outcome budget_anchor() {
  const std::pair<std::size_t, std::size_t> anchors[] = {
      {63, 8}, {252, 16}, {315, 18}, {110, 10}, {135, 12}};
  Outcome o;
  for (auto [n, l] : anchors) {
    const auto got = budget_for(1, n);
    o.pass = o.pass && got == l;
    o.detail += std::to_string(n) + "->" + std::to_string(got) + " ";
  }
  return o;
}

// 3. Analytic random-search baseline against the independent-inclusion oracle.
Outcome rrand_oracle() {
  testsupport::Gen g(20240301);
  Outcome o;
  double worst = 0;
  std::size_t cases = 0;
  for (int t = 0; t < 20; ++t) {
    const auto spec = testsupport::random_spec(g, 3, 25, 500);
    const std::size_t folds = testsupport::uniform_int(g, 1, 10);
    const auto table = testsupport::random_table(g, spec, folds, t % 4 == 0);
    const auto view = t % 2 == 0 ? View::cv() : View::fold(folds);
    const auto val = testsupport::view_val(table, view);
    const auto test = testsupport::view_test(table, view);
    const auto order = table.validation_order(view);
    for (std::size_t m = 1; m <= 3; ++m) {
      const auto l = budget_for(m, table.size());
      const auto mc = testsupport::random_best_mc(val, test, l, 100'000, 1000 * t + m);
      const double analytic = expected_random_best(order, l);
      const double z = mc.se > 0 ? std::abs(analytic - mc.mean) / mc.se
                                 : (std::abs(analytic - mc.mean) < 1e-12 ? 0.0 : 1e9);
      worst = std::max(worst, z);
      ++cases;
      if (z > 4.0) o.pass = false;
    }
  }
  o.detail = std::to_string(cases) + " cases, max |z| = " + fmt(worst, 2) + " (limit 4)";
  return o;
}

// 4. Exhaustive dcg10 check against hand summation.
Outcome dcg_bruteforce() {
  double weight[6];
  for (int l = 1; l <= 5; ++l) weight[l] = 1.0 / std::log2(l + 1.0);
  std::size_t lists = 0, mismatches = 0;
  for (std::size_t n = 1; n <= 20; ++n) {
    const std::size_t cutoff = n / 10;
    for (std::size_t len = 1; len <= std::min<std::size_t>(5, n); ++len) {
      std::vector<std::size_t> r(len, 1);
      while (true) {
        double hand = 0;
        for (std::size_t l = 0; l < len; ++l)
          if (r[l] <= cutoff) hand += weight[l + 1];
        if (std::abs(dcg10(r, n) - hand) > 1e-12) ++mismatches;
        ++lists;
        std::size_t pos = len;
        while (pos > 0 && r[pos - 1] == n) r[--pos] = 1;
        if (pos == 0) break;
        ++r[pos - 1];
      }
    }
  }
  return {mismatches == 0,
          std::to_string(lists) + " rank lists, " + std::to_string(mismatches) + " mismatches"};
}

// 5. Calibration of p(better than random).
Outcome p_calibration() {
  Outcome o;
  const auto land = noiseless({10, 10}, ObjectiveFamily::Ridge, {}, 1);
  LandscapeSpec noisy = land;
  noisy.noise_sd = 0.05;
  const auto table = synth_table(noisy, 1);
  EngineConfig random;
  random.kind = EngineKind::Random;
  // Pooled over the three campaign budgets, as the per-engine p enters reports.
  std::vector<double> per_m;
  o.detail = "random p by m:";
  for (std::size_t m = 1; m <= 3; ++m) {
    std::vector<double> ps;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto rec = run(random, table, "cal", View::fold(1), m, seed);
      ps.push_back(p_better_than_random(rec.ranks, table.size(), RankStatistic::Dcg10, 10'000,
                                        derive_seed({seed, m})));
    }
    const auto ms = mean_se(ps);
    per_m.push_back(ms.mean);
    o.detail += " " + fmt(ms.mean, 3) + "+-" + fmt(ms.se, 3);
  }
  const double pooled = std::accumulate(per_m.begin(), per_m.end(), 0.0) / 3;
  const bool random_ok = pooled >= 0.45 && pooled <= 0.55;
  o.detail += ", mean " + fmt(pooled, 3) + " (need [0.45,0.55]); ";

  // Oracle engine: the L best validation arms, on noiseless tables whose
  // top-10% set has at least 10 arms.
  double worst = 1.0;
  const LandscapeSpec oracle_tables[] = {
      noiseless({10, 10}, ObjectiveFamily::SeparableBowl, {3, 8}, 1),
      noiseless({10, 10}, ObjectiveFamily::Ridge, {}, 2),
      noiseless({20, 6}, ObjectiveFamily::Plateau, {5, 2}, 3),
      noiseless({11, 10}, ObjectiveFamily::DeceptiveSpike, {8, 3}, 4),
  };
  for (const auto& l : oracle_tables) {
    const auto t = synth_table(l, 1);
    const auto order = t.validation_order(View::fold(1));
    const auto ranks_all = t.test_ranks(View::fold(1));
    const auto budget = budget_for(1, t.size());
    std::vector<std::size_t> ranks;
    for (std::size_t i = 0; i < budget; ++i) ranks.push_back(ranks_all[order[i].arm]);
    worst = std::min(worst, p_better_than_random(ranks, t.size(), RankStatistic::Dcg10, 10'000, 5));
  }
  const bool oracle_ok = worst >= 0.95;
  o.detail += "oracle engine min p = " + fmt(worst, 4) + " (need >= 0.95)";
  o.pass = random_ok && oracle_ok;
  return o;
}

// 6. Sandwich endpoints through the full campaign/eval pipeline.
Outcome sandwich_endpoints() {
  Outcome o;
  const auto dir = testsupport::scratch_dir("acceptance_sandwich");
  const nlohmann::json tables = {
      {{"id", "bowl"},
       {"landscape",
        {{"sizes", {9, 7}}, {"objective", {{"family", "bowl"}, {"center", {6, 2}}}}, {"seed", 1}}},
       {"K", 3}},
      {{"id", "ridge"},
       {"landscape", {{"sizes", {11, 10}}, {"objective", {{"family", "ridge"}}}, {"seed", 2}}},
       {"K", 3}}};
  const nlohmann::json sweep = {{"tables", tables},
                                {"engines", {{{"kind", "grid_sweep"}, {"budget", "full"}}}},
                                {"seeds", {0}},
                                {"protocols", {"cross_validated"}}};
  run_campaign(campaign_from_json(sweep, dir, 0), dir / "sweep", 1);
  EvalOptions opt;
  opt.draws = 1000;
  const auto sweep_rep = evaluate_directory(dir / "sweep", opt);
  bool exact = true;
  std::size_t n = 0;
  for (const auto& r : sweep_rep.runs) {
    exact = exact && r.r_tilde && *r.r_tilde == 100.0;
    ++n;
  }
  o.detail = "grid_sweep r~* = 100 in " + std::to_string(n) + " runs: " + (exact ? "yes" : "no");

  // Random search over 100 seeds on a noisy table.
  const nlohmann::json rnd = {
      {"tables",
       {{{"id", "noisy"},
         {"landscape",
          {{"sizes", {10, 10}},
           {"objective", {{"family", "bowl"}, {"center", {7, 4}}}},
           {"noise_sd", 0.1},
           {"seed", 3}}},
         {"K", 5}}}},
      {"engines", {{{"kind", "random"}}}},
      {"seeds", {{"start", 0}, {"count", 100}}},
      {"protocols", {"cross_validated"}}};
  run_campaign(campaign_from_json(rnd, dir, 0), dir / "random", 1);
  const auto rep = evaluate_directory(dir / "random", opt);
  bool within = true;
  for (const auto& b : rep.engines.at(0).by_m) {
    const bool ok = b.imp && std::abs(*b.imp) <= 3 * b.imp_se;
    within = within && ok;
    o.detail += "; m=" + std::to_string(b.m) + " imp " + fmt(b.imp.value_or(NAN), 2) + " se " +
                fmt(b.imp_se, 2);
  }
  o.pass = exact && within;
  return o;
}

// 7. Byte-identical records across repeats and job counts.
Outcome determinism() {
  const auto dir = testsupport::scratch_dir("acceptance_determinism");
  nlohmann::json engines = nlohmann::json::array();
  for (const char* k :
       {"random", "grid_sweep", "space_filling", "parzen", "gp_ei", "local_restart", "blended"})
    engines.push_back({{"kind", k}});
  const nlohmann::json cfg = {
      {"tables",
       {{{"id", "a"},
         {"landscape",
          {{"sizes", {9, 7}}, {"objective", {{"family", "plateau"}}}, {"noise_sd", 0.05}, {"seed", 4}}},
         {"K", 3}},
        {{"id", "b"},
         {"landscape",
          {{"sizes", {4, 3, 5}},
           {"objective", {{"family", "deceptive-spike"}}},
           {"noise_sd", 0.05},
           {"seed", 5}}},
         {"K", 2}}}},
      {"engines", engines},
      {"seeds", {0, 1}}};
  const auto c = campaign_from_json(cfg, dir, 0);
  run_campaign(c, dir / "first", 1);
  run_campaign(c, dir / "second", 1);
  run_campaign(c, dir / "parallel", 8);
  auto files = [](const fs::path& d) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(d / "records")) {
      std::ifstream in(e.path(), std::ios::binary);
      std::stringstream ss;
      ss << in.rdbuf();
      out[e.path().filename().string()] = ss.str();
    }
    return out;
  };
  const auto a = files(dir / "first");
  const bool same = a == files(dir / "second") && a == files(dir / "parallel");
  return {same && !a.empty(), std::to_string(a.size()) + " records compared across 2 runs and --jobs 1/8"};
}

// 8. Model-based engines on the noiseless 5x5 bowl.
Outcome engine_sanity() {
  Outcome o;
  const auto table = synth_table(noiseless({5, 5}, ObjectiveFamily::SeparableBowl, {2, 4}, 1), 1);
  std::size_t opt = 0;
  for (std::size_t a = 1; a < table.size(); ++a)
    if (table.test(a, std::size_t{1}) > table.test(opt, std::size_t{1})) opt = a;
  const auto budget = budget_for(2, table.size());
  for (auto [kind, need_hit] :
       {std::pair{EngineKind::GpEi, 0.9}, std::pair{EngineKind::Parzen, 0.6}}) {
    EngineConfig c;
    c.kind = kind;
    double p = 0, hits = 0;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const auto rec = run(c, table, "bowl", View::fold(1), 2, seed);
      p += p_better_than_random(rec.ranks, table.size(), RankStatistic::Dcg10, 100'000,
                                derive_seed({seed, 8}));
      hits += std::any_of(rec.pulls.begin(), rec.pulls.end(),
                          [&](const Pull& x) { return x.linear == opt; });
    }
    p /= 25;
    hits /= 25;
    const bool ok = p >= 0.6 && hits >= need_hit;
    o.pass = o.pass && ok;
    o.detail += to_string(kind) + ": p " + fmt(p, 3) + ", optimum hit " + fmt(100 * hits, 0) +
                "% (L=" + std::to_string(budget) + "); ";
  }
  return o;
}

// 9. Winner inversion against exhaustive enumeration.
Outcome inversion_oracle() {
  testsupport::Gen g(99);
  std::size_t mismatches = 0, nontrivial = 0;
  for (int inst = 0; inst < 50; ++inst) {
    ScoreGrid s;
    for (const char* e : {"e1", "e2", "e3"})
      for (const char* m : {"m1", "m2", "m3"})
        for (const char* c : {"c1", "c2"})
          s[{e, m, c}] = static_cast<double>(testsupport::uniform_int(g, 0, 5)) / 5;
    const auto oracle = testsupport::inversion_by_enumeration(s);
    const double expected =
        static_cast<double>(oracle.inverted) / static_cast<double>(oracle.total);
    if (winner_inversion_rate(s) != expected) ++mismatches;
    nontrivial += oracle.inverted > 0;
  }
  return {mismatches == 0, "50 instances, " + std::to_string(mismatches) + " mismatches, " +
                               std::to_string(nontrivial) + " with inversions"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"overall-score reconstruction", overall_reconstruction},
      {"budget anchors", budget_anchor},
      {"r_rand analytic vs Monte Carlo", rrand_oracle},
      {"dcg10 exhaustive", dcg_bruteforce},
      {"p calibration", p_calibration},
      {"sandwich endpoints", sandwich_endpoints},
      {"determinism", determinism},
      {"engine sanity", engine_sanity},
      {"inversion oracle", inversion_oracle},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
