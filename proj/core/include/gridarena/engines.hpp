#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gridarena/grid.hpp"
#include "gridarena/rng.hpp"

namespace gridarena {

/// One pull as seen by an engine: the arm and its served validation score.
struct Observation {
  ArmIndex arm;
  std::size_t linear = 0;
  double score = 0.0;
};

/// Append-only sequence of observations for one run.
class History {
 public:
  void append(Observation obs) { items_.push_back(std::move(obs)); }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  const Observation& operator[](std::size_t i) const { return items_[i]; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

 private:
  std::vector<Observation> items_;
};

enum class EngineKind { Random, GridSweep, SpaceFilling, Parzen, GpEi, LocalRestart, Blended };

std::string to_string(EngineKind kind);
EngineKind parse_engine_kind(const std::string& name);

/// Engine selection plus every tunable parameter. Only the parameters of the
/// selected kind are echoed into run records.
struct EngineConfig {
  EngineKind kind = EngineKind::Random;
  /// Label used in record keys and reports; defaults to the kind name.
  std::string name;
  std::uint64_t seed = 0;

  // parzen, gp_ei: space-filling warm-start pulls; unset means max(2, ceil(L/4)).
  std::optional<std::size_t> warm_start;
  // parzen
  double gamma = 0.25;
  std::size_t candidates = 64;
  // gp_ei: log-grid for the maximum-likelihood noise variance fit
  double noise_min = 1e-8;
  double noise_max = 1e1;
  std::size_t noise_steps = 91;
  // blended: every `global_every`-th proposal (starting with the first) is global
  std::size_t global_every = 3;
  // space_filling and warm starts: score at most this many unpulled arms per step
  std::size_t maximin_candidates = 4096;

  std::string label() const { return name.empty() ? to_string(kind) : name; }
  /// Throws ConfigError for out-of-range parameters.
  void validate() const;
};

nlohmann::ordered_json to_json(const EngineConfig& config);
EngineConfig engine_config_from_json(const nlohmann::json& j);

/// Warm-start length for the model-based engines.
std::size_t default_warm_start(std::size_t budget);

/// A sequential search engine. Engines see only the validation history; they
/// never read test scores.
class Engine {
 public:
  virtual ~Engine() = default;

  /// Next arm to pull, or nullopt when the engine has nothing left to propose.
  /// Deterministic given the construction arguments, `history` and `rng` state.
  virtual std::optional<ArmIndex> suggest(const History& history, Rng& rng) = 0;
};

/// `budget` is the run's trial budget L (used for warm-start sizing).
std::unique_ptr<Engine> make_engine(const EngineConfig& config, const GridSpec& spec,
                                    std::size_t budget);

/// Greedy maximin pick: the unpulled arm maximizing the minimum normalized
/// distance to every arm in `history`. Ties are broken uniformly at random.
/// Returns nullopt when every arm has been pulled.
std::optional<std::size_t> maximin_pick(const GridSpec& spec, const History& history,
                                        const std::vector<bool>& pulled, Rng& rng,
                                        std::size_t max_candidates);

}  // namespace gridarena
