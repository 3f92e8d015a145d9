#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "gridarena/engines.hpp"
#include "gridarena/error.hpp"
#include "gridarena/gaussian_process.hpp"
#include "gridarena/landscape.hpp"
#include "support.hpp"

using namespace gridarena;

namespace {

EngineConfig config_of(EngineKind kind) {
  EngineConfig c;
  c.kind = kind;
  return c;
}

const EngineKind kAllKinds[] = {EngineKind::Random,       EngineKind::GridSweep,
                                EngineKind::SpaceFilling, EngineKind::Parzen,
                                EngineKind::GpEi,         EngineKind::LocalRestart,
                                EngineKind::Blended};

// Drives an engine directly against an objective, no driver involved.
std::vector<std::size_t> drive(const EngineConfig& c, const GridSpec& spec,
                               const std::vector<double>& f, std::size_t budget,
                               std::uint64_t seed) {
  auto engine = make_engine(c, spec, budget);
  Rng rng(seed);
  History h;
  std::vector<std::size_t> pulls;
  for (std::size_t l = 0; l < budget; ++l) {
    const auto arm = engine->suggest(h, rng);
    if (!arm) break;
    EXPECT_TRUE(spec.contains(*arm));
    const auto k = spec.to_linear(*arm);
    pulls.push_back(k);
    h.append({*arm, k, f[k]});
  }
  return pulls;
}

std::vector<double> bowl(const GridSpec& spec, std::vector<double> center) {
  Objective o;
  o.center = std::move(center);
  std::vector<double> f(spec.size());
  for (std::size_t k = 0; k < spec.size(); ++k) f[k] = o.evaluate(spec, k);
  return f;
}

TEST(Engines, RandomIsAPermutation) {
  const auto spec = GridSpec::from_sizes({2, 2});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto pulls = drive(config_of(EngineKind::Random), spec, {0, 0, 0, 0}, 4, seed);
    std::sort(pulls.begin(), pulls.end());
    EXPECT_EQ(pulls, (std::vector<std::size_t>{0, 1, 2, 3}));
  }
  auto engine = make_engine(config_of(EngineKind::Random), spec, 4);
  Rng rng(1);
  History h;
  for (std::size_t k = 0; k < 4; ++k) h.append({spec.from_linear(k), k, 0.0});
  EXPECT_FALSE(engine->suggest(h, rng).has_value());
}

TEST(Engines, GridSweepEnumeratesInOrder) {
  const auto spec = GridSpec::from_sizes({3, 4});
  const auto pulls = drive(config_of(EngineKind::GridSweep), spec, std::vector<double>(12), 12, 5);
  for (std::size_t k = 0; k < 12; ++k) EXPECT_EQ(pulls[k], k);
}

TEST(Engines, SpaceFillingSpreadsOut) {
  const auto spec = GridSpec::from_sizes({5, 5});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto pulls =
        drive(config_of(EngineKind::SpaceFilling), spec, std::vector<double>(25), 25, seed);
    std::set<std::size_t> distinct(pulls.begin(), pulls.end());
    EXPECT_EQ(distinct.size(), 25u);
    // The second pick is as far from the first as the grid allows.
    const auto a = spec.from_linear(pulls[0]), b = spec.from_linear(pulls[1]);
    const int far0 = std::max(a.coords[0] - 1, 5 - a.coords[0]);
    const int far1 = std::max(a.coords[1] - 1, 5 - a.coords[1]);
    EXPECT_EQ(std::abs(a.coords[0] - b.coords[0]), far0);
    EXPECT_EQ(std::abs(a.coords[1] - b.coords[1]), far1);
  }
}

TEST(Engines, DeterministicAndValid) {
  testsupport::Gen g(3);
  for (int trial = 0; trial < 6; ++trial) {
    const auto spec = testsupport::random_spec(g, 3, 6, 80);
    std::vector<double> f(spec.size());
    for (auto& x : f) x = std::uniform_real_distribution<double>(0, 1)(g);
    const std::size_t budget = std::min<std::size_t>(spec.size(), 15);
    for (auto kind : kAllKinds) {
      const auto a = drive(config_of(kind), spec, f, budget, 1234 + trial);
      const auto b = drive(config_of(kind), spec, f, budget, 1234 + trial);
      ASSERT_EQ(a, b) << to_string(kind);
      for (auto k : a) ASSERT_LT(k, spec.size());
    }
  }
}

TEST(Engines, WithoutReplacementKinds) {
  const auto spec = GridSpec::from_sizes({4, 3});
  const auto f = bowl(spec, {2, 2});
  for (auto kind : {EngineKind::Random, EngineKind::GridSweep, EngineKind::SpaceFilling}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto pulls = drive(config_of(kind), spec, f, 12, seed);
      EXPECT_EQ(std::set<std::size_t>(pulls.begin(), pulls.end()).size(), 12u);
    }
  }
}

TEST(Engines, LocalRestartClimbsToOptimum) {
  const auto spec = GridSpec::from_sizes({9, 9});
  const auto f = bowl(spec, {6, 3});
  const auto opt = spec.to_linear({6, 3});
  std::size_t hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto pulls = drive(config_of(EngineKind::LocalRestart), spec, f, 40, seed);
    hits += std::count(pulls.begin(), pulls.end(), opt) > 0;
  }
  EXPECT_GE(hits, 18u);
}

TEST(Engines, BlendedScheduleStartsGlobal) {
  // With global_every = 1 every proposal is a maximin pick.
  const auto spec = GridSpec::from_sizes({5, 5});
  auto blended = config_of(EngineKind::Blended);
  blended.global_every = 1;
  const auto f = bowl(spec, {3, 3});
  for (std::uint64_t seed = 0; seed < 5; ++seed)
    EXPECT_EQ(drive(blended, spec, f, 10, seed),
              drive(config_of(EngineKind::SpaceFilling), spec, f, 10, seed));
}

TEST(Engines, ParzenDegenerateScores) {
  const auto spec = GridSpec::from_sizes({6, 6});
  auto c = config_of(EngineKind::Parzen);
  c.warm_start = 2;
  const auto pulls = drive(c, spec, std::vector<double>(36, 0.5), 20, 8);
  ASSERT_EQ(pulls.size(), 20u);
  // Equal scores give no split, so proposals are fresh draws from the
  // smoothed prior and avoid already-pulled arms while any remain.
  EXPECT_EQ(std::set<std::size_t>(pulls.begin(), pulls.end()).size(), 20u);
}

TEST(Engines, ParzenConcentratesNearGoodArms) {
  const auto spec = GridSpec::from_sizes({10, 10});
  const auto f = bowl(spec, {8, 2});
  double near = 0;
  std::size_t total = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto pulls = drive(config_of(EngineKind::Parzen), spec, f, 30, seed);
    for (std::size_t l = 10; l < pulls.size(); ++l, ++total) {
      const auto a = spec.from_linear(pulls[l]);
      near += std::abs(a.coords[0] - 8) <= 3 && std::abs(a.coords[1] - 2) <= 3;
    }
  }
  // The patch clipped to the grid is 6x5: a uniform sampler lands there 30% of the time.
  EXPECT_GT(near / static_cast<double>(total), 0.5);
}

TEST(Engines, GpEiFindsBowlOptimum) {
  const auto spec = GridSpec::from_sizes({5, 5});
  const auto f = bowl(spec, {4, 2});
  const auto opt = static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
  std::size_t hits = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto c = config_of(EngineKind::GpEi);
    c.seed = seed;
    const auto pulls = drive(c, spec, f, 10, seed);
    hits += std::count(pulls.begin(), pulls.end(), opt) > 0;
  }
  EXPECT_GE(hits, 23u);
}

TEST(Engines, ConfigValidation) {
  auto c = config_of(EngineKind::Parzen);
  c.gamma = 1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = config_of(EngineKind::Blended);
  c.global_every = 0;
  EXPECT_THROW(make_engine(c, GridSpec::from_sizes({2}), 1), ConfigError);
  EXPECT_THROW(parse_engine_kind("hebo"), ConfigError);
  EXPECT_THROW(engine_config_from_json(nlohmann::json::parse(R"({"seed":1})")), ConfigError);
  EXPECT_THROW(engine_config_from_json(nlohmann::json::parse(R"({"kind":"parzen","gamma":"x"})")),
               ConfigError);
}

TEST(Engines, ConfigJsonRoundTrip) {
  for (auto kind : kAllKinds) {
    auto c = config_of(kind);
    c.seed = 42;
    c.name = "my_" + to_string(kind);
    const auto j = nlohmann::json::parse(to_json(c).dump());
    const auto back = engine_config_from_json(j);
    EXPECT_EQ(back.kind, kind);
    EXPECT_EQ(back.label(), c.label());
    EXPECT_EQ(back.seed, 42u);
    EXPECT_EQ(to_json(back).dump(), to_json(c).dump());
  }
}

TEST(Engines, DefaultWarmStart) {
  EXPECT_EQ(default_warm_start(1), 2u);
  EXPECT_EQ(default_warm_start(8), 2u);
  EXPECT_EQ(default_warm_start(9), 3u);
  EXPECT_EQ(default_warm_start(18), 5u);
}

TEST(GaussianProcess, InterpolatesWithTinyNoise) {
  testsupport::Gen g(17);
  std::uniform_real_distribution<double> u(0, 1);
  const std::size_t dims = 2, n = 12;
  std::vector<double> pts, y;
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(static_cast<double>(i % 4) / 3.0);
    pts.push_back(static_cast<double>(i / 4) / 2.0);
    y.push_back(u(g));
  }
  const GaussianProcess gp(pts, dims, y, {1.0 / 3.0, 0.5}, 1e-10);
  for (std::size_t i = 0; i < n; ++i) {
    const auto post = gp.predict(std::span<const double>(pts).subspan(i * dims, dims));
    EXPECT_NEAR(post.mean, y[i], 1e-6);
    EXPECT_LT(post.variance, 1e-6);
  }
  // Far away the posterior reverts to the prior.
  const double far[] = {50.0, 50.0};
  EXPECT_NEAR(gp.predict(far).variance,
              std::pow(std::sqrt([&] {
                         double m = 0, s = 0;
                         for (double v : y) m += v;
                         m /= n;
                         for (double v : y) s += (v - m) * (v - m);
                         return s / n;
                       }()),
                       2),
              1e-9);
}

TEST(GaussianProcess, NoiseFitPrefersNoiseForNoisyData) {
  testsupport::Gen g(23);
  std::normal_distribution<double> noise(0, 1);
  std::vector<double> pts, y_smooth, y_noisy;
  for (int i = 0; i < 20; ++i) {
    const double x = i / 19.0;
    pts.push_back(x);
    y_smooth.push_back(std::sin(3 * x));
    y_noisy.push_back(std::sin(3 * x) + noise(g));
  }
  const double ls = 1.0 / 19.0;
  const double smooth = GaussianProcess::fit_noise(pts, 1, y_smooth, {ls * 4}, 1e-8, 10, 91);
  const double noisy = GaussianProcess::fit_noise(pts, 1, y_noisy, {ls}, 1e-8, 10, 91);
  EXPECT_LT(smooth, 1e-3);
  EXPECT_GT(noisy, 0.1);
}

TEST(GaussianProcess, ExpectedImprovement) {
  EXPECT_DOUBLE_EQ(expected_improvement(1.0, 0.0, 0.5), 0.5);
  EXPECT_DOUBLE_EQ(expected_improvement(0.2, 0.0, 0.5), 0.0);
  // mean == best: EI = sd * phi(0)
  EXPECT_NEAR(expected_improvement(0.5, 2.0, 0.5), 2.0 / std::sqrt(2 * M_PI), 1e-12);
  EXPECT_GT(expected_improvement(0.0, 1.0, 0.5), expected_improvement(0.0, 0.5, 0.5));
}

}  // namespace
