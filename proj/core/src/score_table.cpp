#include "gridarena/score_table.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gridarena/error.hpp"

namespace gridarena {

std::string View::name() const {
  return is_cv() ? std::string("cv") : "fold" + std::to_string(fold_);
}

View View::parse(const std::string& name) {
  if (name == "cv") return cv();
  if (name.rfind("fold", 0) == 0 && name.size() > 4) {
    std::size_t k = 0;
    for (std::size_t i = 4; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') throw ConfigError("bad view name '" + name + "'");
      k = k * 10 + static_cast<std::size_t>(name[i] - '0');
    }
    if (k == 0) throw ConfigError("fold numbers start at 1");
    return fold(k);
  }
  throw ConfigError("bad view name '" + name + "'");
}

ScoreTable::ScoreTable(GridSpec spec, std::size_t folds, std::vector<double> val,
                       std::vector<double> test)
    : spec_(std::move(spec)), folds_(folds), val_(std::move(val)), test_(std::move(test)) {
  if (folds_ == 0) throw ConfigError("score table needs at least one fold");
  const std::size_t cells = spec_.size() * folds_;
  if (val_.size() != cells || test_.size() != cells)
    throw CompletenessError("score table has " + std::to_string(val_.size()) + "/" +
                            std::to_string(test_.size()) + " cells, expected " +
                            std::to_string(cells));
  for (std::size_t i = 0; i < cells; ++i) {
    if (!std::isfinite(val_[i]) || !std::isfinite(test_[i]))
      throw ParseError("non-finite score at arm " +
                       to_string(spec_.from_linear(i / folds_)) + " fold " +
                       std::to_string(i % folds_ + 1));
  }
  cv_val_.resize(spec_.size());
  cv_test_.resize(spec_.size());
  const auto k = static_cast<double>(folds_);
  for (std::size_t a = 0; a < spec_.size(); ++a) {
    double sv = 0.0, st = 0.0;
    for (std::size_t f = 0; f < folds_; ++f) {
      sv += val_[a * folds_ + f];
      st += test_[a * folds_ + f];
    }
    cv_val_[a] = sv / k;
    cv_test_[a] = st / k;
  }
}

std::size_t ScoreTable::index(std::size_t arm, std::size_t fold) const {
  if (arm >= spec_.size()) throw RangeError("arm index " + std::to_string(arm) + " outside grid");
  if (fold < 1 || fold > folds_)
    throw RangeError("fold " + std::to_string(fold) + " outside [1, " + std::to_string(folds_) +
                     "]");
  return arm * folds_ + (fold - 1);
}

void ScoreTable::check_view(View view) const {
  if (!view.is_cv() && view.fold_number() > folds_)
    throw RangeError("fold " + std::to_string(view.fold_number()) + " outside [1, " +
                     std::to_string(folds_) + "]");
}

double ScoreTable::val(std::size_t arm, View view) const {
  if (view.is_cv()) return cv_val_.at(arm);
  return val(arm, view.fold_number());
}

double ScoreTable::test(std::size_t arm, View view) const {
  if (view.is_cv()) return cv_test_.at(arm);
  return test(arm, view.fold_number());
}

std::pair<double, double> ScoreTable::cv_scores(const ArmIndex& arm) const {
  const auto k = spec_.to_linear(arm);
  return {cv_val_[k], cv_test_[k]};
}

std::vector<std::size_t> ScoreTable::test_ranks(View view) const {
  check_view(view);
  const std::size_t n = size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> score(n);
  for (std::size_t a = 0; a < n; ++a) score[a] = test(a, view);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  std::vector<std::size_t> ranks(n);
  for (std::size_t r = 0; r < n; ++r) ranks[order[r]] = r + 1;
  return ranks;
}

std::vector<OrderedArm> ScoreTable::validation_order(View view) const {
  check_view(view);
  const std::size_t n = size();
  std::vector<OrderedArm> out(n);
  for (std::size_t a = 0; a < n; ++a) out[a] = {a, val(a, view), test(a, view)};
  std::stable_sort(out.begin(), out.end(),
                   [](const OrderedArm& a, const OrderedArm& b) { return a.val > b.val; });
  return out;
}

double ScoreTable::grid_best_test(View view) const {
  check_view(view);
  std::size_t best = 0;
  for (std::size_t a = 1; a < size(); ++a)
    if (val(a, view) > val(best, view)) best = a;
  return test(best, view);
}

ScoreTableBuilder::ScoreTableBuilder(GridSpec spec, std::size_t folds)
    : spec_(std::move(spec)), folds_(folds) {
  if (folds_ == 0) throw ConfigError("score table needs at least one fold");
  const std::size_t cells = spec_.size() * folds_;
  val_.assign(cells, 0.0);
  test_.assign(cells, 0.0);
  filled_.assign(cells, false);
}

void ScoreTableBuilder::set(const ArmIndex& arm, std::size_t fold, double val, double test) {
  const auto k = spec_.to_linear(arm);
  if (fold < 1 || fold > folds_)
    throw RangeError("fold " + std::to_string(fold) + " outside [1, " + std::to_string(folds_) +
                     "]");
  if (!std::isfinite(val) || !std::isfinite(test))
    throw ParseError("non-finite score at arm " + to_string(arm) + " fold " +
                     std::to_string(fold));
  const std::size_t i = k * folds_ + (fold - 1);
  if (filled_[i])
    throw DataError("duplicate cell for arm " + to_string(arm) + " fold " + std::to_string(fold));
  val_[i] = val;
  test_[i] = test;
  filled_[i] = true;
}

ScoreTable ScoreTableBuilder::finish() && {
  for (std::size_t i = 0; i < filled_.size(); ++i) {
    if (filled_[i]) continue;
    auto arm = spec_.from_linear(i / folds_);
    arm.coords.push_back(static_cast<std::int32_t>(i % folds_ + 1));
    throw CompletenessError("missing score cell " + to_string(arm) + " (coordinates..., fold)");
  }
  return ScoreTable(std::move(spec_), folds_, std::move(val_), std::move(test_));
}

}  // namespace gridarena
