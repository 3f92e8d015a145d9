#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gridarena/grid.hpp"

namespace gridarena {

/// Which folds a score lookup reads: one fold, or the K-fold mean.
class View {
 public:
  /// 1-based fold number.
  static View fold(std::size_t k) { return View(k); }
  static View cv() { return View(0); }

  bool is_cv() const noexcept { return fold_ == 0; }
  /// 1-based fold; 0 for the cross-validated view.
  std::size_t fold_number() const noexcept { return fold_; }
  /// "cv" or "fold<k>".
  std::string name() const;
  static View parse(const std::string& name);

  friend bool operator==(View, View) = default;

 private:
  explicit View(std::size_t f) : fold_(f) {}
  std::size_t fold_ = 0;
};

/// One entry of a validation-ordered listing.
struct OrderedArm {
  std::size_t arm = 0;  // linear index
  double val = 0.0;
  double test = 0.0;
};

/// Complete per-arm, per-fold validation and test scores over a grid.
///
/// Scores are oriented higher-is-better. The table is immutable once built;
/// the cross-validated means are computed at construction.
class ScoreTable {
 public:
  /// `val` and `test` are arm-major: index = arm * folds + (fold - 1).
  ScoreTable(GridSpec spec, std::size_t folds, std::vector<double> val, std::vector<double> test);

  const GridSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return spec_.size(); }
  std::size_t folds() const noexcept { return folds_; }

  /// Raw cell access; fold is 1-based.
  double val(std::size_t arm, std::size_t fold) const { return val_[index(arm, fold)]; }
  double test(std::size_t arm, std::size_t fold) const { return test_[index(arm, fold)]; }

  double val(std::size_t arm, View view) const;
  double test(std::size_t arm, View view) const;

  /// (mean validation, mean test) over the K folds.
  std::pair<double, double> cv_scores(const ArmIndex& arm) const;

  /// Rank of every arm by test score under `view`, indexed by linear arm.
  /// Rank 1 is the highest score; ties go to the lower linear index.
  std::vector<std::size_t> test_ranks(View view) const;

  /// Arms by descending validation score (ties: ascending linear index),
  /// paired with their test scores under the same view.
  std::vector<OrderedArm> validation_order(View view) const;

  /// Test score of the best-validation arm over the full grid.
  double grid_best_test(View view) const;

  void check_view(View view) const;

  friend bool operator==(const ScoreTable&, const ScoreTable&) = default;

 private:
  std::size_t index(std::size_t arm, std::size_t fold) const;

  GridSpec spec_;
  std::size_t folds_ = 0;
  std::vector<double> val_;
  std::vector<double> test_;
  std::vector<double> cv_val_;
  std::vector<double> cv_test_;
};

/// Incrementally fills a table and checks completeness on finish().
class ScoreTableBuilder {
 public:
  ScoreTableBuilder(GridSpec spec, std::size_t folds);

  /// Throws RangeError for an out-of-range fold, DataError for a repeated cell
  /// or ParseError for a non-finite score.
  void set(const ArmIndex& arm, std::size_t fold, double val, double test);

  /// Throws CompletenessError naming the first missing (coords..., fold).
  ScoreTable finish() &&;

 private:
  GridSpec spec_;
  std::size_t folds_;
  std::vector<double> val_;
  std::vector<double> test_;
  std::vector<bool> filled_;
};

}  // namespace gridarena
