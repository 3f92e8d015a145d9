#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace gridarena {

/// One hyperparameter axis: a name and its ordered, distinct value labels.
struct Axis {
  std::string name;
  std::vector<std::string> values;

  friend bool operator==(const Axis&, const Axis&) = default;
};

/// A grid arm as 1-based integer coordinates, one per axis.
struct ArmIndex {
  std::vector<std::int32_t> coords;

  ArmIndex() = default;
  explicit ArmIndex(std::vector<std::int32_t> c) : coords(std::move(c)) {}
  ArmIndex(std::initializer_list<std::int32_t> c) : coords(c) {}

  std::size_t dims() const noexcept { return coords.size(); }

  friend bool operator==(const ArmIndex&, const ArmIndex&) = default;
  friend auto operator<=>(const ArmIndex&, const ArmIndex&) = default;
};

std::string to_string(const ArmIndex& arm);

/// The discrete search space: the Cartesian product of its axes.
///
/// Arms are addressed externally by 1-based coordinates and stored by a
/// 0-based row-major linear key with the last axis varying fastest.
class GridSpec {
 public:
  /// Largest grid the harness accepts.
  static constexpr std::size_t kMaxSize = 1'000'000;

  GridSpec() = default;
  explicit GridSpec(std::vector<Axis> axes);

  /// Axes named i_1..i_D with labels "1".."N_j".
  static GridSpec from_sizes(const std::vector<std::size_t>& sizes);

  std::size_t dims() const noexcept { return axes_.size(); }
  std::size_t size() const noexcept { return size_; }
  std::size_t axis_size(std::size_t j) const { return axes_.at(j).values.size(); }
  const std::vector<Axis>& axes() const noexcept { return axes_; }
  std::vector<std::size_t> sizes() const;

  bool contains(const ArmIndex& arm) const noexcept;
  /// Throws RangeError naming the offending axis.
  void validate(const ArmIndex& arm) const;

  std::size_t to_linear(const ArmIndex& arm) const;
  ArmIndex from_linear(std::size_t k) const;

  /// Arms differing by +-1 in exactly one coordinate; axis-major, -1 first.
  std::vector<ArmIndex> neighbors(const ArmIndex& arm) const;
  std::vector<std::size_t> neighbors(std::size_t k) const;

  /// Coordinate j of arm k mapped to [0, 1]; 0 on single-valued axes.
  double normalized(std::size_t k, std::size_t j) const;

  /// Value labels of an arm, in axis order.
  std::vector<std::string> labels(const ArmIndex& arm) const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) { return a.axes_ == b.axes_; }

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

// Manifest JSON: {"axes":[{"name":..., "values":[...]}]}
nlohmann::json to_json(const GridSpec& spec);
GridSpec grid_from_json(const nlohmann::json& manifest);

}  // namespace gridarena
