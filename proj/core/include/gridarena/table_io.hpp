#pragma once

#include <filesystem>
#include <optional>

#include "gridarena/grid.hpp"
#include "gridarena/score_table.hpp"

namespace gridarena {

enum class TableFormat { Csv, Json };

/// From the file extension (.csv / .json).
TableFormat detect_format(const std::filesystem::path& path);

struct LoadOptions {
  /// Grid definition for CSV input. Without it, axis sizes are inferred from
  /// the largest coordinate seen on each axis.
  std::optional<GridSpec> manifest;
  /// Expected fold count for CSV input; inferred from the largest fold otherwise.
  std::optional<std::size_t> folds;
  /// Negate all scores on ingestion (source is lower-is-better).
  bool minimize = false;
};

/// CSV: header i_1,...,i_D,fold,val,test with 1-based coordinates and folds.
/// JSON: {"manifest": {...}, "K": k, "rows": [{"coords", "fold", "val", "test"}]}.
ScoreTable load_table(const std::filesystem::path& path, TableFormat format,
                      const LoadOptions& options = {});
ScoreTable load_table(const std::filesystem::path& path, const LoadOptions& options = {});

/// Rows in ascending (linear arm, fold) order; scores in shortest round-trip
/// decimal form.
void save_table(const ScoreTable& table, const std::filesystem::path& path, TableFormat format);

GridSpec load_manifest(const std::filesystem::path& path);
void save_manifest(const GridSpec& spec, const std::filesystem::path& path);

/// Shortest decimal string that parses back to the same double.
std::string format_score(double x);

/// Writes to a sibling temp file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace gridarena
