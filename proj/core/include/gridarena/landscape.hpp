#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gridarena/grid.hpp"
#include "gridarena/score_table.hpp"

namespace gridarena {

enum class ObjectiveFamily { SeparableBowl, Ridge, Plateau, DeceptiveSpike };

std::string to_string(ObjectiveFamily family);
/// Accepts "separable-bowl" (or "bowl"), "ridge", "plateau", "deceptive-spike".
ObjectiveFamily parse_family(const std::string& name);

/// Parametric synthetic objective over a grid.
///
/// Coordinates are mapped to u in [0,1]^D; `center` and `spike` are given in
/// 1-based grid coordinates (fractional values allowed) and mapped the same way.
/// Value is offset + scale * shape(u), with shape:
///   separable-bowl   1 - sum_j w_j (u_j - c_j)^2
///   ridge            1 - sharpness * |d_perp|^2 + tilt * t, where t is the
///                    mean of (u - c) and d_perp its component off the diagonal
///   plateau          1 inside the box |u - c|_inf <= radius,
///                    else 1 - drop - sum_j w_j (u_j - c_j)^2
///   deceptive-spike  the bowl, except 1 + spike_height at the spike arm
struct Objective {
  ObjectiveFamily family = ObjectiveFamily::SeparableBowl;
  std::vector<double> center;   // empty: axis midpoints
  std::vector<double> weights;  // empty: all 1
  double scale = 1.0;
  double offset = 0.0;
  double sharpness = 8.0;
  double tilt = 0.25;
  double radius = 0.2;
  double drop = 0.1;
  std::vector<double> spike;  // empty: the arm (1, ..., 1)
  double spike_height = 0.2;

  double evaluate(const GridSpec& spec, std::size_t arm) const;
};

/// Synthetic table generator: noiseless objective for test scores plus
/// per-(arm, fold) Gaussian noise on validation scores.
struct LandscapeSpec {
  GridSpec spec;
  Objective objective;
  double noise_sd = 0.0;
  std::uint64_t seed = 0;
};

/// Test score = objective at every fold; validation = objective +
/// N(0, noise_sd^2) from a stream keyed by (seed, arm, fold).
ScoreTable synth_table(const LandscapeSpec& land, std::size_t folds);

nlohmann::json to_json(const Objective& objective);
Objective objective_from_json(const nlohmann::json& j);

/// {"manifest": {...} | "sizes": [...], "objective": {...}, "noise_sd", "seed"}.
/// A missing seed takes `default_seed`.
LandscapeSpec landscape_from_json(const nlohmann::json& j, std::uint64_t default_seed = 0);
nlohmann::json to_json(const LandscapeSpec& land);

}  // namespace gridarena
