#include "gridarena/grid.hpp"

#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gridarena/error.hpp"

namespace gridarena {

std::string to_string(const ArmIndex& arm) {
  std::ostringstream os;
  os << '(';
  for (std::size_t j = 0; j < arm.coords.size(); ++j) {
    if (j) os << ',';
    os << arm.coords[j];
  }
  os << ')';
  return os.str();
}

GridSpec::GridSpec(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty()) throw ConfigError("grid must have at least one axis");
  strides_.assign(axes_.size(), 1);
  std::size_t n = 1;
  for (std::size_t j = axes_.size(); j-- > 0;) {
    const auto& axis = axes_[j];
    if (axis.values.empty()) throw ConfigError("axis '" + axis.name + "' has no values");
    std::set<std::string> seen;
    for (const auto& v : axis.values) {
      if (!seen.insert(v).second)
        throw ConfigError("axis '" + axis.name + "' repeats value label '" + v + "'");
    }
    strides_[j] = n;
    if (axis.values.size() > kMaxSize / n)
      throw ConfigError("grid size exceeds " + std::to_string(kMaxSize) + " arms");
    n *= axis.values.size();
  }
  size_ = n;
}

GridSpec GridSpec::from_sizes(const std::vector<std::size_t>& sizes) {
  std::vector<Axis> axes;
  axes.reserve(sizes.size());
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    Axis axis{"i_" + std::to_string(j + 1), {}};
    for (std::size_t v = 1; v <= sizes[j]; ++v) axis.values.push_back(std::to_string(v));
    axes.push_back(std::move(axis));
  }
  return GridSpec(std::move(axes));
}

std::vector<std::size_t> GridSpec::sizes() const {
  std::vector<std::size_t> out;
  out.reserve(axes_.size());
  for (const auto& a : axes_) out.push_back(a.values.size());
  return out;
}

bool GridSpec::contains(const ArmIndex& arm) const noexcept {
  if (arm.coords.size() != axes_.size()) return false;
  for (std::size_t j = 0; j < axes_.size(); ++j) {
    const auto c = arm.coords[j];
    if (c < 1 || static_cast<std::size_t>(c) > axes_[j].values.size()) return false;
  }
  return true;
}

void GridSpec::validate(const ArmIndex& arm) const {
  if (arm.coords.size() != axes_.size())
    throw RangeError("arm " + to_string(arm) + " has " + std::to_string(arm.coords.size()) +
                     " coordinates, grid has " + std::to_string(axes_.size()) + " axes");
  for (std::size_t j = 0; j < axes_.size(); ++j) {
    const auto c = arm.coords[j];
    const auto n = axes_[j].values.size();
    if (c < 1 || static_cast<std::size_t>(c) > n)
      throw RangeError("coordinate " + std::to_string(c) + " on axis '" + axes_[j].name +
                       "' outside [1, " + std::to_string(n) + "]");
  }
}

std::size_t GridSpec::to_linear(const ArmIndex& arm) const {
  validate(arm);
  std::size_t k = 0;
  for (std::size_t j = 0; j < axes_.size(); ++j)
    k += static_cast<std::size_t>(arm.coords[j] - 1) * strides_[j];
  return k;
}

ArmIndex GridSpec::from_linear(std::size_t k) const {
  if (k >= size_)
    throw RangeError("linear index " + std::to_string(k) + " outside [0, " +
                     std::to_string(size_) + ")");
  ArmIndex arm;
  arm.coords.resize(axes_.size());
  for (std::size_t j = 0; j < axes_.size(); ++j) {
    arm.coords[j] = static_cast<std::int32_t>(k / strides_[j]) + 1;
    k %= strides_[j];
  }
  return arm;
}

std::vector<ArmIndex> GridSpec::neighbors(const ArmIndex& arm) const {
  validate(arm);
  std::vector<ArmIndex> out;
  out.reserve(2 * axes_.size());
  for (std::size_t j = 0; j < axes_.size(); ++j) {
    if (arm.coords[j] > 1) {
      auto b = arm;
      --b.coords[j];
      out.push_back(std::move(b));
    }
    if (static_cast<std::size_t>(arm.coords[j]) < axes_[j].values.size()) {
      auto b = arm;
      ++b.coords[j];
      out.push_back(std::move(b));
    }
  }
  return out;
}

std::vector<std::size_t> GridSpec::neighbors(std::size_t k) const {
  if (k >= size_) throw RangeError("linear index " + std::to_string(k) + " outside grid");
  std::vector<std::size_t> out;
  out.reserve(2 * axes_.size());
  for (std::size_t j = 0; j < axes_.size(); ++j) {
    const std::size_t c = (k / strides_[j]) % axes_[j].values.size();
    if (c > 0) out.push_back(k - strides_[j]);
    if (c + 1 < axes_[j].values.size()) out.push_back(k + strides_[j]);
  }
  return out;
}

double GridSpec::normalized(std::size_t k, std::size_t j) const {
  const std::size_t n = axes_.at(j).values.size();
  if (n <= 1) return 0.0;
  const std::size_t c = (k / strides_[j]) % n;
  return static_cast<double>(c) / static_cast<double>(n - 1);
}

std::vector<std::string> GridSpec::labels(const ArmIndex& arm) const {
  validate(arm);
  std::vector<std::string> out;
  for (std::size_t j = 0; j < axes_.size(); ++j)
    out.push_back(axes_[j].values[static_cast<std::size_t>(arm.coords[j] - 1)]);
  return out;
}

nlohmann::json to_json(const GridSpec& spec) {
  auto axes = nlohmann::json::array();
  for (const auto& a : spec.axes()) axes.push_back({{"name", a.name}, {"values", a.values}});
  return {{"axes", axes}};
}

GridSpec grid_from_json(const nlohmann::json& manifest) {
  if (!manifest.is_object() || !manifest.contains("axes") || !manifest["axes"].is_array())
    throw ConfigError("manifest must be an object with an 'axes' array");
  std::vector<Axis> axes;
  for (const auto& a : manifest["axes"]) {
    if (!a.is_object() || !a.contains("name") || !a.contains("values") ||
        !a["values"].is_array())
      throw ConfigError("manifest axis needs 'name' and 'values'");
    Axis axis;
    axis.name = a["name"].get<std::string>();
    for (const auto& v : a["values"])
      axis.values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    axes.push_back(std::move(axis));
  }
  return GridSpec(std::move(axes));
}

}  // namespace gridarena
