#include "gridarena/landscape.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "gridarena/error.hpp"
#include "gridarena/rng.hpp"

namespace gridarena {

std::string to_string(ObjectiveFamily family) {
  switch (family) {
    case ObjectiveFamily::SeparableBowl: return "separable-bowl";
    case ObjectiveFamily::Ridge: return "ridge";
    case ObjectiveFamily::Plateau: return "plateau";
    case ObjectiveFamily::DeceptiveSpike: return "deceptive-spike";
  }
  return "unknown";
}

ObjectiveFamily parse_family(const std::string& name) {
  if (name == "separable-bowl" || name == "bowl") return ObjectiveFamily::SeparableBowl;
  if (name == "ridge") return ObjectiveFamily::Ridge;
  if (name == "plateau") return ObjectiveFamily::Plateau;
  if (name == "deceptive-spike") return ObjectiveFamily::DeceptiveSpike;
  throw ConfigError("unknown objective family '" + name + "'");
}

namespace {

double to_unit(double coord, std::size_t n) {
  return n <= 1 ? 0.0 : (coord - 1.0) / static_cast<double>(n - 1);
}

double bowl_term(const GridSpec& spec, std::size_t arm, const std::vector<double>& c,
                 const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t j = 0; j < spec.dims(); ++j) {
    const double d = spec.normalized(arm, j) - c[j];
    s += w[j] * d * d;
  }
  return s;
}

}  // namespace

double Objective::evaluate(const GridSpec& spec, std::size_t arm) const {
  const std::size_t dims = spec.dims();
  if (!center.empty() && center.size() != dims)
    throw ConfigError("objective center has " + std::to_string(center.size()) +
                      " entries, grid has " + std::to_string(dims) + " axes");
  if (!weights.empty() && weights.size() != dims)
    throw ConfigError("objective weights do not match grid dimension");
  std::vector<double> c(dims), w(dims, 1.0);
  for (std::size_t j = 0; j < dims; ++j) {
    const std::size_t n = spec.axis_size(j);
    c[j] = center.empty() ? 0.5 : to_unit(center[j], n);
    if (!weights.empty()) w[j] = weights[j];
  }

  double shape = 0.0;
  switch (family) {
    case ObjectiveFamily::SeparableBowl:
      shape = 1.0 - bowl_term(spec, arm, c, w);
      break;
    case ObjectiveFamily::Ridge: {
      double mean = 0.0;
      for (std::size_t j = 0; j < dims; ++j) mean += spec.normalized(arm, j) - c[j];
      mean /= static_cast<double>(dims);
      double perp = 0.0;
      for (std::size_t j = 0; j < dims; ++j) {
        const double d = spec.normalized(arm, j) - c[j] - mean;
        perp += d * d;
      }
      shape = 1.0 - sharpness * perp + tilt * mean;
      break;
    }
    case ObjectiveFamily::Plateau: {
      double inf_norm = 0.0;
      for (std::size_t j = 0; j < dims; ++j)
        inf_norm = std::max(inf_norm, std::abs(spec.normalized(arm, j) - c[j]));
      shape = inf_norm <= radius ? 1.0 : 1.0 - drop - bowl_term(spec, arm, c, w);
      break;
    }
    case ObjectiveFamily::DeceptiveSpike: {
      if (!spike.empty() && spike.size() != dims)
        throw ConfigError("spike coordinates do not match grid dimension");
      bool at_spike = true;
      for (std::size_t j = 0; j < dims && at_spike; ++j) {
        const double target = spike.empty() ? 0.0 : to_unit(spike[j], spec.axis_size(j));
        at_spike = std::abs(spec.normalized(arm, j) - target) < 1e-12;
      }
      shape = at_spike ? 1.0 + spike_height : 1.0 - bowl_term(spec, arm, c, w);
      break;
    }
  }
  return offset + scale * shape;
}

ScoreTable synth_table(const LandscapeSpec& land, std::size_t folds) {
  if (folds == 0) throw ConfigError("fold count must be at least 1");
  if (!(land.noise_sd >= 0.0) || !std::isfinite(land.noise_sd))
    throw ConfigError("noise_sd must be finite and non-negative");
  const auto& spec = land.spec;
  const std::size_t n = spec.size();
  std::vector<double> val(n * folds), test(n * folds);
  for (std::size_t a = 0; a < n; ++a) {
    const double f = land.objective.evaluate(spec, a);
    for (std::size_t k = 0; k < folds; ++k) {
      test[a * folds + k] = f;
      double noise = 0.0;
      if (land.noise_sd > 0.0) {
        Rng rng(derive_seed({land.seed, a, k + 1}));
        noise = land.noise_sd * rng.normal();
      }
      val[a * folds + k] = f + noise;
    }
  }
  return ScoreTable(spec, folds, std::move(val), std::move(test));
}

nlohmann::json to_json(const Objective& o) {
  nlohmann::ordered_json j;
  j["family"] = to_string(o.family);
  if (!o.center.empty()) j["center"] = o.center;
  if (!o.weights.empty()) j["weights"] = o.weights;
  j["scale"] = o.scale;
  j["offset"] = o.offset;
  switch (o.family) {
    case ObjectiveFamily::Ridge:
      j["sharpness"] = o.sharpness;
      j["tilt"] = o.tilt;
      break;
    case ObjectiveFamily::Plateau:
      j["radius"] = o.radius;
      j["drop"] = o.drop;
      break;
    case ObjectiveFamily::DeceptiveSpike:
      if (!o.spike.empty()) j["spike"] = o.spike;
      j["spike_height"] = o.spike_height;
      break;
    case ObjectiveFamily::SeparableBowl:
      break;
  }
  return nlohmann::json(j);
}

Objective objective_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw ConfigError("objective needs a 'family' field");
  Objective o;
  try {
    o.family = parse_family(j.at("family").get<std::string>());
    o.center = j.value("center", std::vector<double>{});
    o.weights = j.value("weights", std::vector<double>{});
    o.scale = j.value("scale", o.scale);
    o.offset = j.value("offset", o.offset);
    o.sharpness = j.value("sharpness", o.sharpness);
    o.tilt = j.value("tilt", o.tilt);
    o.radius = j.value("radius", o.radius);
    o.drop = j.value("drop", o.drop);
    o.spike = j.value("spike", std::vector<double>{});
    o.spike_height = j.value("spike_height", o.spike_height);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad objective: ") + e.what());
  }
  return o;
}

LandscapeSpec landscape_from_json(const nlohmann::json& j, std::uint64_t default_seed) {
  if (!j.is_object()) throw ConfigError("landscape spec must be a JSON object");
  LandscapeSpec land;
  try {
    if (j.contains("manifest")) {
      land.spec = grid_from_json(j.at("manifest"));
    } else if (j.contains("sizes")) {
      land.spec = GridSpec::from_sizes(j.at("sizes").get<std::vector<std::size_t>>());
    } else {
      throw ConfigError("landscape spec needs 'manifest' or 'sizes'");
    }
    if (!j.contains("objective")) throw ConfigError("landscape spec needs an 'objective'");
    land.objective = objective_from_json(j.at("objective"));
    land.noise_sd = j.value("noise_sd", 0.0);
    land.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : default_seed;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad landscape spec: ") + e.what());
  }
  if (!(land.noise_sd >= 0.0)) throw ConfigError("noise_sd must be non-negative");
  // Surface bad center/weight dimensions now rather than mid-generation.
  land.objective.evaluate(land.spec, 0);
  return land;
}

nlohmann::json to_json(const LandscapeSpec& land) {
  nlohmann::ordered_json j;
  j["manifest"] = to_json(land.spec);
  j["objective"] = to_json(land.objective);
  j["noise_sd"] = land.noise_sd;
  j["seed"] = land.seed;
  return nlohmann::json(j);
}

}  // namespace gridarena
