#include "gridarena/engines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "gridarena/error.hpp"
#include "gridarena/gaussian_process.hpp"

namespace gridarena {

std::string to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::Random: return "random";
    case EngineKind::GridSweep: return "grid_sweep";
    case EngineKind::SpaceFilling: return "space_filling";
    case EngineKind::Parzen: return "parzen";
    case EngineKind::GpEi: return "gp_ei";
    case EngineKind::LocalRestart: return "local_restart";
    case EngineKind::Blended: return "blended";
  }
  return "unknown";
}

EngineKind parse_engine_kind(const std::string& name) {
  for (auto k : {EngineKind::Random, EngineKind::GridSweep, EngineKind::SpaceFilling,
                 EngineKind::Parzen, EngineKind::GpEi, EngineKind::LocalRestart,
                 EngineKind::Blended}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown engine kind '" + name + "'");
}

void EngineConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("parzen gamma must lie in (0, 1)");
  if (candidates == 0) throw ConfigError("parzen candidates must be positive");
  if (!(noise_min > 0.0) || !(noise_max >= noise_min) || noise_steps == 0)
    throw ConfigError("gp_ei noise grid needs 0 < noise_min <= noise_max, noise_steps >= 1");
  if (global_every == 0) throw ConfigError("blended global_every must be positive");
  if (maximin_candidates == 0) throw ConfigError("maximin_candidates must be positive");
  if (warm_start && *warm_start == 0) throw ConfigError("warm_start must be positive");
}

nlohmann::ordered_json to_json(const EngineConfig& c) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(c.kind);
  j["name"] = c.label();
  j["seed"] = c.seed;
  switch (c.kind) {
    case EngineKind::Parzen:
      j["warm_start"] = c.warm_start ? nlohmann::ordered_json(*c.warm_start) : nlohmann::ordered_json(nullptr);
      j["gamma"] = c.gamma;
      j["candidates"] = c.candidates;
      j["maximin_candidates"] = c.maximin_candidates;
      break;
    case EngineKind::GpEi:
      j["warm_start"] = c.warm_start ? nlohmann::ordered_json(*c.warm_start) : nlohmann::ordered_json(nullptr);
      j["noise_min"] = c.noise_min;
      j["noise_max"] = c.noise_max;
      j["noise_steps"] = c.noise_steps;
      j["maximin_candidates"] = c.maximin_candidates;
      break;
    case EngineKind::SpaceFilling:
      j["maximin_candidates"] = c.maximin_candidates;
      break;
    case EngineKind::Blended:
      j["global_every"] = c.global_every;
      j["maximin_candidates"] = c.maximin_candidates;
      break;
    case EngineKind::Random:
    case EngineKind::GridSweep:
    case EngineKind::LocalRestart:
      break;
  }
  return j;
}

EngineConfig engine_config_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("engine entry needs a 'kind'");
  EngineConfig c;
  try {
    c.kind = parse_engine_kind(j.at("kind").get<std::string>());
    c.name = j.value("name", std::string{});
    c.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("warm_start") && !j.at("warm_start").is_null())
      c.warm_start = j.at("warm_start").get<std::size_t>();
    c.gamma = j.value("gamma", c.gamma);
    c.candidates = j.value("candidates", c.candidates);
    c.noise_min = j.value("noise_min", c.noise_min);
    c.noise_max = j.value("noise_max", c.noise_max);
    c.noise_steps = j.value("noise_steps", c.noise_steps);
    c.global_every = j.value("global_every", c.global_every);
    c.maximin_candidates = j.value("maximin_candidates", c.maximin_candidates);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad engine entry: ") + e.what());
  }
  c.validate();
  return c;
}

std::size_t default_warm_start(std::size_t budget) {
  return std::max<std::size_t>(2, (budget + 3) / 4);
}

namespace {

std::vector<bool> pulled_mask(const GridSpec& spec, const History& history) {
  std::vector<bool> pulled(spec.size(), false);
  for (const auto& h : history) pulled[h.linear] = true;
  return pulled;
}

/// Uniform pick among unpulled arms; nullopt when none remain.
std::optional<std::size_t> random_unpulled(const std::vector<bool>& pulled, std::size_t n_pulled,
                                           Rng& rng) {
  const std::size_t n = pulled.size();
  if (n_pulled >= n) return std::nullopt;
  if (2 * n_pulled < n) {
    while (true) {
      const auto k = static_cast<std::size_t>(rng.below(n));
      if (!pulled[k]) return k;
    }
  }
  auto target = static_cast<std::size_t>(rng.below(n - n_pulled));
  for (std::size_t k = 0; k < n; ++k) {
    if (pulled[k]) continue;
    if (target-- == 0) return k;
  }
  return std::nullopt;
}

std::size_t count_pulled(const std::vector<bool>& pulled) {
  return static_cast<std::size_t>(std::count(pulled.begin(), pulled.end(), true));
}

class RandomEngine final : public Engine {
 public:
  explicit RandomEngine(GridSpec spec) : spec_(std::move(spec)) {}

  std::optional<ArmIndex> suggest(const History& history, Rng& rng) override {
    const auto pulled = pulled_mask(spec_, history);
    const auto k = random_unpulled(pulled, count_pulled(pulled), rng);
    if (!k) return std::nullopt;
    return spec_.from_linear(*k);
  }

 private:
  GridSpec spec_;
};

class GridSweepEngine final : public Engine {
 public:
  explicit GridSweepEngine(GridSpec spec) : spec_(std::move(spec)) {}

  std::optional<ArmIndex> suggest(const History& history, Rng&) override {
    const auto pulled = pulled_mask(spec_, history);
    while (cursor_ < spec_.size() && pulled[cursor_]) ++cursor_;
    if (cursor_ >= spec_.size()) return std::nullopt;
    return spec_.from_linear(cursor_++);
  }

 private:
  GridSpec spec_;
  std::size_t cursor_ = 0;
};

class SpaceFillingEngine final : public Engine {
 public:
  SpaceFillingEngine(GridSpec spec, std::size_t max_candidates)
      : spec_(std::move(spec)), max_candidates_(max_candidates) {}

  std::optional<ArmIndex> suggest(const History& history, Rng& rng) override {
    const auto k = maximin_pick(spec_, history, pulled_mask(spec_, history), rng, max_candidates_);
    if (!k) return std::nullopt;
    return spec_.from_linear(*k);
  }

 private:
  GridSpec spec_;
  std::size_t max_candidates_;
};

/// Tree-of-Parzen-style engine over independent per-axis categorical densities.
class ParzenEngine final : public Engine {
 public:
  ParzenEngine(GridSpec spec, const EngineConfig& c, std::size_t budget)
      : spec_(std::move(spec)),
        warm_(c.warm_start.value_or(default_warm_start(budget))),
        gamma_(c.gamma),
        candidates_(c.candidates),
        max_candidates_(c.maximin_candidates) {}

  std::optional<ArmIndex> suggest(const History& history, Rng& rng) override {
    const auto pulled = pulled_mask(spec_, history);
    if (history.size() < warm_) {
      if (auto k = maximin_pick(spec_, history, pulled, rng, max_candidates_))
        return spec_.from_linear(*k);
    }
    return spec_.from_linear(propose(history, pulled, rng));
  }

 private:
  using Density = std::vector<std::vector<double>>;  // [axis][value]

  Density smoothed(const History& history, const std::vector<std::size_t>& members) const {
    Density d(spec_.dims());
    for (std::size_t j = 0; j < spec_.dims(); ++j) {
      const std::size_t nj = spec_.axis_size(j);
      std::vector<double> counts(nj, 1.0);
      for (auto i : members) counts[static_cast<std::size_t>(history[i].arm.coords[j] - 1)] += 1.0;
      const double total = static_cast<double>(members.size() + nj);
      for (auto& x : counts) x /= total;
      d[j] = std::move(counts);
    }
    return d;
  }

  ArmIndex sample(const Density& d, Rng& rng) const {
    ArmIndex arm;
    arm.coords.resize(spec_.dims());
    for (std::size_t j = 0; j < spec_.dims(); ++j) {
      double u = rng.uniform();
      std::size_t v = 0;
      while (v + 1 < d[j].size() && u >= d[j][v]) u -= d[j][v++];
      arm.coords[j] = static_cast<std::int32_t>(v + 1);
    }
    return arm;
  }

  std::size_t propose(const History& history, const std::vector<bool>& pulled, Rng& rng) const {
    const std::size_t n = history.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return history[a].score > history[b].score;
    });

    const bool degenerate =
        n == 0 || history[order.front()].score == history[order.back()].score;
    std::vector<std::size_t> good, bad;
    if (!degenerate) {
      const auto n_good = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::ceil(gamma_ * static_cast<double>(n))));
      good.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_good));
      bad.assign(order.begin() + static_cast<std::ptrdiff_t>(n_good), order.end());
    }
    // With no usable split both densities are the add-one prior and every
    // candidate scores the same, so the first candidate drawn is proposed.
    const Density good_d = smoothed(history, good);
    const Density bad_d = smoothed(history, bad);

    auto log_ratio = [&](const ArmIndex& arm) {
      if (degenerate) return 0.0;
      double s = 0.0;
      for (std::size_t j = 0; j < spec_.dims(); ++j) {
        const auto v = static_cast<std::size_t>(arm.coords[j] - 1);
        s += std::log(good_d[j][v]) - std::log(bad_d[j][v]);
      }
      return s;
    };

    std::optional<std::size_t> best_fresh, best_any;
    double best_fresh_score = -std::numeric_limits<double>::infinity();
    double best_any_score = -std::numeric_limits<double>::infinity();
    constexpr std::size_t kMaxBatches = 16;
    for (std::size_t batch = 0; batch < kMaxBatches && !best_fresh; ++batch) {
      for (std::size_t c = 0; c < candidates_; ++c) {
        const ArmIndex arm = sample(good_d, rng);
        const std::size_t k = spec_.to_linear(arm);
        const double s = log_ratio(arm);
        if (s > best_any_score) {
          best_any_score = s;
          best_any = k;
        }
        if (!pulled[k] && s > best_fresh_score) {
          best_fresh_score = s;
          best_fresh = k;
        }
      }
    }
    return best_fresh ? *best_fresh : *best_any;
  }

  GridSpec spec_;
  std::size_t warm_;
  double gamma_;
  std::size_t candidates_;
  std::size_t max_candidates_;
};

/// GP surrogate with grid-step length scales and expected-improvement acquisition.
class GpEiEngine final : public Engine {
 public:
  GpEiEngine(GridSpec spec, const EngineConfig& c, std::size_t budget)
      : spec_(std::move(spec)),
        warm_(c.warm_start.value_or(default_warm_start(budget))),
        noise_min_(c.noise_min),
        noise_max_(c.noise_max),
        noise_steps_(c.noise_steps),
        max_candidates_(c.maximin_candidates) {
    for (std::size_t j = 0; j < spec_.dims(); ++j) {
      const std::size_t n = spec_.axis_size(j);
      length_scales_.push_back(n > 1 ? 1.0 / static_cast<double>(n - 1) : 0.0);
    }
  }

  std::optional<ArmIndex> suggest(const History& history, Rng& rng) override {
    const auto pulled = pulled_mask(spec_, history);
    if (history.size() < warm_) {
      const auto k = maximin_pick(spec_, history, pulled, rng, max_candidates_);
      if (!k) return std::nullopt;
      return spec_.from_linear(*k);
    }

    const std::size_t dims = spec_.dims();
    std::vector<double> points, targets;
    std::vector<bool> seen(spec_.size(), false);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& h : history) {
      best = std::max(best, h.score);
      if (seen[h.linear]) continue;
      seen[h.linear] = true;
      for (std::size_t j = 0; j < dims; ++j) points.push_back(spec_.normalized(h.linear, j));
      targets.push_back(h.score);
    }

    std::vector<std::size_t> fresh;
    std::vector<double> queries;
    for (std::size_t k = 0; k < spec_.size(); ++k) {
      if (pulled[k]) continue;
      fresh.push_back(k);
      for (std::size_t j = 0; j < dims; ++j) queries.push_back(spec_.normalized(k, j));
    }
    if (fresh.empty()) return std::nullopt;

    const double noise = GaussianProcess::fit_noise(points, dims, targets, length_scales_,
                                                    noise_min_, noise_max_, noise_steps_);
    const GaussianProcess gp(points, dims, targets, length_scales_, noise);
    const auto post = gp.predict_many(queries);

    std::size_t pick = 0;
    double pick_ei = -1.0;
    for (std::size_t c = 0; c < fresh.size(); ++c) {
      const double ei = expected_improvement(post[c].mean, std::sqrt(post[c].variance), best);
      if (ei > pick_ei) {  // strict: ties keep the lower linear index
        pick_ei = ei;
        pick = c;
      }
    }
    return spec_.from_linear(fresh[pick]);
  }

 private:
  GridSpec spec_;
  std::size_t warm_;
  double noise_min_, noise_max_;
  std::size_t noise_steps_;
  std::size_t max_candidates_;
  std::vector<double> length_scales_;
};

/// First-improvement hill climbing over grid neighbors with random restarts.
///
/// In `follow_best` mode the climber also jumps to any better arm found by
/// other proposers sharing the history, which is how the blended engine seeds
/// its local search from global samples.
class LocalSearch {
 public:
  LocalSearch(const GridSpec& spec, bool follow_best)
      : spec_(&spec), follow_best_(follow_best), score_(spec.size(), 0.0),
        known_(spec.size(), false) {}

  std::optional<std::size_t> propose(const History& history, Rng& rng) {
    absorb(history);

    if (pending_ && known_[*pending_]) {
      const std::size_t k = *pending_;
      if (!current_ || restarting_ || score_[k] > score_[*current_]) move_to(k, rng);
      restarting_ = false;
    }
    pending_.reset();

    if (follow_best_ && best_) {
      if (!current_ || score_[*best_] > score_[*current_]) move_to(*best_, rng);
    }

    while (current_ && !queue_.empty()) {
      const std::size_t k = queue_.back();
      queue_.pop_back();
      if (!known_[k]) {
        pending_ = k;
        return k;
      }
      // Already-scored neighbor: evaluate the move without spending a pull.
      if (score_[k] > score_[*current_]) move_to(k, rng);
    }

    const auto k = random_unpulled(known_, n_known_, rng);
    if (!k) return std::nullopt;
    pending_ = k;
    restarting_ = true;
    return k;
  }

 private:
  void absorb(const History& history) {
    for (; seen_ < history.size(); ++seen_) {
      const auto& h = history[seen_];
      if (!known_[h.linear]) {
        known_[h.linear] = true;
        score_[h.linear] = h.score;
        ++n_known_;
      }
      if (!best_ || h.score > score_[*best_]) best_ = h.linear;
    }
  }

  void move_to(std::size_t k, Rng& rng) {
    current_ = k;
    queue_ = spec_->neighbors(k);
    rng.shuffle(std::span<std::size_t>(queue_));
  }

  const GridSpec* spec_;
  bool follow_best_;
  std::vector<double> score_;
  std::vector<bool> known_;
  std::size_t n_known_ = 0;
  std::size_t seen_ = 0;
  std::optional<std::size_t> best_;
  std::optional<std::size_t> current_;
  std::optional<std::size_t> pending_;
  bool restarting_ = false;
  std::vector<std::size_t> queue_;
};

class LocalRestartEngine final : public Engine {
 public:
  explicit LocalRestartEngine(GridSpec spec) : spec_(std::move(spec)), local_(spec_, false) {}

  std::optional<ArmIndex> suggest(const History& history, Rng& rng) override {
    const auto k = local_.propose(history, rng);
    if (!k) return std::nullopt;
    return spec_.from_linear(*k);
  }

 private:
  GridSpec spec_;
  LocalSearch local_;
};

/// Interleaves global maximin proposals with best-following local search.
class BlendedEngine final : public Engine {
 public:
  BlendedEngine(GridSpec spec, const EngineConfig& c)
      : spec_(std::move(spec)),
        local_(spec_, true),
        global_every_(c.global_every),
        max_candidates_(c.maximin_candidates) {}

  std::optional<ArmIndex> suggest(const History& history, Rng& rng) override {
    const bool global = step_++ % global_every_ == 0;
    std::optional<std::size_t> k;
    if (global) {
      k = maximin_pick(spec_, history, pulled_mask(spec_, history), rng, max_candidates_);
    } else {
      k = local_.propose(history, rng);
    }
    if (!k) return std::nullopt;
    return spec_.from_linear(*k);
  }

 private:
  GridSpec spec_;
  LocalSearch local_;
  std::size_t global_every_;
  std::size_t max_candidates_;
  std::size_t step_ = 0;
};

}  // namespace

std::optional<std::size_t> maximin_pick(const GridSpec& spec, const History& history,
                                        const std::vector<bool>& pulled, Rng& rng,
                                        std::size_t max_candidates) {
  const std::size_t n = spec.size();
  const std::size_t n_pulled = count_pulled(pulled);
  if (n_pulled >= n) return std::nullopt;
  if (history.empty()) return random_unpulled(pulled, n_pulled, rng);

  std::vector<std::size_t> candidates;
  if (n - n_pulled <= max_candidates) {
    for (std::size_t k = 0; k < n; ++k)
      if (!pulled[k]) candidates.push_back(k);
  } else {
    for (std::size_t c = 0; c < max_candidates; ++c)
      candidates.push_back(*random_unpulled(pulled, n_pulled, rng));
  }

  const std::size_t dims = spec.dims();
  std::vector<double> refs;
  for (const auto& h : history)
    for (std::size_t j = 0; j < dims; ++j) refs.push_back(spec.normalized(h.linear, j));
  const std::size_t n_refs = history.size();

  double best = -1.0;
  std::vector<std::size_t> ties;
  for (auto k : candidates) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < n_refs && nearest > best - 1e-12; ++r) {
      double d2 = 0.0;
      for (std::size_t j = 0; j < dims; ++j) {
        const double d = spec.normalized(k, j) - refs[r * dims + j];
        d2 += d * d;
      }
      nearest = std::min(nearest, d2);
    }
    if (nearest > best + 1e-12) {
      best = nearest;
      ties.assign(1, k);
    } else if (std::abs(nearest - best) <= 1e-12) {
      ties.push_back(k);
    }
  }
  return ties[static_cast<std::size_t>(rng.below(ties.size()))];
}

std::unique_ptr<Engine> make_engine(const EngineConfig& config, const GridSpec& spec,
                                    std::size_t budget) {
  config.validate();
  switch (config.kind) {
    case EngineKind::Random: return std::make_unique<RandomEngine>(spec);
    case EngineKind::GridSweep: return std::make_unique<GridSweepEngine>(spec);
    case EngineKind::SpaceFilling:
      return std::make_unique<SpaceFillingEngine>(spec, config.maximin_candidates);
    case EngineKind::Parzen: return std::make_unique<ParzenEngine>(spec, config, budget);
    case EngineKind::GpEi: return std::make_unique<GpEiEngine>(spec, config, budget);
    case EngineKind::LocalRestart: return std::make_unique<LocalRestartEngine>(spec);
    case EngineKind::Blended: return std::make_unique<BlendedEngine>(spec, config);
  }
  throw ConfigError("unknown engine kind");
}

}  // namespace gridarena
