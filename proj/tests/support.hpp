#pragma once

// Independent reference implementations and random generators for tests.
// Nothing here calls into the library's metric code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "gridarena/grid.hpp"
#include "gridarena/score_table.hpp"

namespace testsupport {

using gridarena::GridSpec;
using gridarena::ScoreTable;

// std::mt19937_64 on purpose: oracles must not share the library's RNG.
using Gen = std::mt19937_64;

inline std::size_t uniform_int(Gen& g, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(g);
}

inline GridSpec random_spec(Gen& g, std::size_t max_dims, std::size_t max_axis,
                            std::size_t max_size) {
  while (true) {
    std::vector<std::size_t> sizes(uniform_int(g, 1, max_dims));
    std::size_t n = 1;
    for (auto& s : sizes) {
      s = uniform_int(g, 1, max_axis);
      n *= s;
    }
    if (n <= max_size) return GridSpec::from_sizes(sizes);
  }
}

/// Scores on a coarse lattice when `coarse` so that ties actually occur.
inline ScoreTable random_table(Gen& g, const GridSpec& spec, std::size_t folds,
                               bool coarse = false) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t cells = spec.size() * folds;
  std::vector<double> val(cells), test(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    val[i] = coarse ? std::floor(u(g) * 8) / 8 : u(g);
    test[i] = coarse ? std::floor(u(g) * 8) / 8 : u(g);
  }
  return ScoreTable(spec, folds, std::move(val), std::move(test));
}

/// Test scores under a view, by direct averaging.
inline std::vector<double> view_test(const ScoreTable& t, gridarena::View v) {
  std::vector<double> out(t.size());
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (!v.is_cv()) {
      out[a] = t.test(a, v.fold_number());
    } else {
      double s = 0;
      for (std::size_t k = 1; k <= t.folds(); ++k) s += t.test(a, k);
      out[a] = s / static_cast<double>(t.folds());
    }
  }
  return out;
}

inline std::vector<double> view_val(const ScoreTable& t, gridarena::View v) {
  std::vector<double> out(t.size());
  for (std::size_t a = 0; a < t.size(); ++a) {
    if (!v.is_cv()) {
      out[a] = t.val(a, v.fold_number());
    } else {
      double s = 0;
      for (std::size_t k = 1; k <= t.folds(); ++k) s += t.val(a, k);
      out[a] = s / static_cast<double>(t.folds());
    }
  }
  return out;
}

/// Rank of each arm by counting how many arms beat it.
inline std::vector<std::size_t> count_ranks(const std::vector<double>& scores) {
  std::vector<std::size_t> r(scores.size());
  for (std::size_t a = 0; a < scores.size(); ++a) {
    std::size_t better = 0;
    for (std::size_t b = 0; b < scores.size(); ++b)
      if (scores[b] > scores[a] || (scores[b] == scores[a] && b < a)) ++better;
    r[a] = better + 1;
  }
  return r;
}

inline double dcg_by_definition(const std::vector<std::size_t>& ranks, std::size_t n) {
  double s = 0;
  for (std::size_t l = 0; l < ranks.size(); ++l)
    if (10 * ranks[l] <= n) s += 1.0 / std::log2(static_cast<double>(l) + 2.0);
  return s;
}

struct McEstimate {
  double mean = 0;
  double se = 0;
};

/// Random search as independent inclusion with probability L/N, empty sets
/// rejected. Arms are visited in descending validation order so the first
/// included arm is the best-validation one.
inline McEstimate random_best_mc(const std::vector<double>& val, const std::vector<double>& test,
                                 std::size_t budget, std::size_t samples, std::uint64_t seed) {
  std::vector<std::size_t> order(val.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return val[a] > val[b]; });
  const double p = static_cast<double>(budget) / static_cast<double>(val.size());
  Gen g(seed);
  std::bernoulli_distribution include(p);
  double sum = 0, sum2 = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    double v = 0;
    bool found = false;
    while (!found) {
      for (auto a : order) {
        if (include(g)) {
          v = test[a];
          found = true;
          break;
        }
      }
    }
    sum += v;
    sum2 += v * v;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum2 - n * mean * mean) / (n - 1));
  return {mean, std::sqrt(var / n)};
}

struct InversionCount {
  std::size_t total = 0;
  std::size_t inverted = 0;
  std::size_t tied = 0;
};

/// Ordered (model, model) x ordered (engine, engine) enumeration; each
/// unordered triple is visited four times.
inline InversionCount inversion_by_enumeration(
    const std::map<std::tuple<std::string, std::string, std::string>, double>& scores) {
  std::set<std::string> engines, models, contexts;
  for (const auto& [k, v] : scores) {
    engines.insert(std::get<0>(k));
    models.insert(std::get<1>(k));
    contexts.insert(std::get<2>(k));
  }
  InversionCount c;
  for (const auto& ctx : contexts)
    for (const auto& a : models)
      for (const auto& b : models) {
        if (a == b) continue;
        for (const auto& e : engines)
          for (const auto& f : engines) {
            if (e == f) continue;
            auto ea = scores.find({e, a, ctx}), eb = scores.find({e, b, ctx});
            auto fa = scores.find({f, a, ctx}), fb = scores.find({f, b, ctx});
            if (ea == scores.end() || eb == scores.end() || fa == scores.end() ||
                fb == scores.end())
              continue;
            ++c.total;
            const double d1 = ea->second - eb->second, d2 = fa->second - fb->second;
            if (d1 == 0 || d2 == 0) ++c.tied;
            else if ((d1 > 0) != (d2 > 0)) ++c.inverted;
          }
      }
  c.total /= 4;
  c.inverted /= 4;
  c.tied /= 4;
  return c;
}

/// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("gridarena_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace testsupport
