#include "gridarena/table_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "gridarena/error.hpp"

namespace gridarena {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

long long parse_int(std::string_view s, std::size_t line_no) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("line " + std::to_string(line_no) + ": bad integer '" + std::string(s) + "'");
  return v;
}

double parse_double(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError("line " + std::to_string(line_no) + ": bad score '" + std::string(s) + "'");
  if (!std::isfinite(v))
    throw ParseError("line " + std::to_string(line_no) + ": non-finite score '" +
                     std::string(s) + "'");
  return v;
}

struct Row {
  std::vector<std::int32_t> coords;
  std::size_t fold;
  double val;
  double test;
};

ScoreTable assemble(const GridSpec& spec, std::size_t folds, const std::vector<Row>& rows,
                    bool minimize) {
  ScoreTableBuilder builder(spec, folds);
  const double sign = minimize ? -1.0 : 1.0;
  for (const auto& r : rows) builder.set(ArmIndex(r.coords), r.fold, sign * r.val, sign * r.test);
  return std::move(builder).finish();
}

ScoreTable load_csv(const fs::path& path, const LoadOptions& options) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t dims = 0;
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (dims == 0) {
      if (fields.size() < 4 || fields[fields.size() - 3] != "fold" ||
          fields[fields.size() - 2] != "val" || fields.back() != "test")
        throw ParseError("'" + path.string() + "': header must be i_1,...,i_D,fold,val,test");
      dims = fields.size() - 3;
      continue;
    }
    if (fields.size() != dims + 3)
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(dims + 3) + " fields");
    Row r;
    for (std::size_t j = 0; j < dims; ++j)
      r.coords.push_back(static_cast<std::int32_t>(parse_int(fields[j], line_no)));
    const auto fold = parse_int(fields[dims], line_no);
    if (fold < 1) throw RangeError("line " + std::to_string(line_no) + ": fold must be >= 1");
    r.fold = static_cast<std::size_t>(fold);
    r.val = parse_double(fields[dims + 1], line_no);
    r.test = parse_double(fields[dims + 2], line_no);
    rows.push_back(std::move(r));
  }
  if (dims == 0) throw ParseError("'" + path.string() + "' has no header");

  GridSpec spec;
  if (options.manifest) {
    spec = *options.manifest;
    if (spec.dims() != dims)
      throw DataError("'" + path.string() + "' has " + std::to_string(dims) +
                      " coordinate columns, manifest has " + std::to_string(spec.dims()) +
                      " axes");
  } else {
    std::vector<std::size_t> sizes(dims, 0);
    for (const auto& r : rows)
      for (std::size_t j = 0; j < dims; ++j) {
        if (r.coords[j] < 1) throw RangeError("coordinate " + std::to_string(r.coords[j]) +
                                              " on axis i_" + std::to_string(j + 1) + " < 1");
        sizes[j] = std::max(sizes[j], static_cast<std::size_t>(r.coords[j]));
      }
    if (rows.empty()) throw CompletenessError("'" + path.string() + "' has no rows");
    spec = GridSpec::from_sizes(sizes);
  }
  std::size_t folds = 0;
  if (options.folds) {
    folds = *options.folds;
  } else {
    for (const auto& r : rows) folds = std::max(folds, r.fold);
  }
  if (folds == 0) throw CompletenessError("'" + path.string() + "' has no rows");
  return assemble(spec, folds, rows, options.minimize);
}

ScoreTable load_json(const fs::path& path, const LoadOptions& options) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
  try {
    GridSpec spec = doc.contains("manifest") ? grid_from_json(doc.at("manifest"))
                    : options.manifest       ? *options.manifest
                                             : throw ParseError("'" + path.string() +
                                                                "' has no manifest");
    const auto folds = doc.at("K").get<std::size_t>();
    std::vector<Row> rows;
    for (const auto& r : doc.at("rows")) {
      Row row;
      row.coords = r.at("coords").get<std::vector<std::int32_t>>();
      const auto fold = r.at("fold").get<long long>();
      if (fold < 1) throw RangeError("fold must be >= 1");
      row.fold = static_cast<std::size_t>(fold);
      if (!r.at("val").is_number() || !r.at("test").is_number())
        throw ParseError("non-numeric score in '" + path.string() + "'");
      row.val = r.at("val").get<double>();
      row.test = r.at("test").get<double>();
      rows.push_back(std::move(row));
    }
    return assemble(spec, folds, rows, options.minimize);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

}  // namespace

std::string format_score(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error("cannot format score");
  return std::string(buf, ptr);
}

TableFormat detect_format(const fs::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".csv") return TableFormat::Csv;
  if (ext == ".json") return TableFormat::Json;
  throw ConfigError("cannot infer table format from '" + path.string() + "'");
}

ScoreTable load_table(const fs::path& path, TableFormat format, const LoadOptions& options) {
  return format == TableFormat::Csv ? load_csv(path, options) : load_json(path, options);
}

ScoreTable load_table(const fs::path& path, const LoadOptions& options) {
  return load_table(path, detect_format(path), options);
}

void write_file_atomic(const fs::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ConfigError("cannot move '" + tmp.string() + "' into place");
  }
}

void save_table(const ScoreTable& table, const fs::path& path, TableFormat format) {
  const auto& spec = table.spec();
  std::string out;
  if (format == TableFormat::Csv) {
    for (std::size_t j = 0; j < spec.dims(); ++j) out += "i_" + std::to_string(j + 1) + ",";
    out += "fold,val,test\n";
    for (std::size_t a = 0; a < table.size(); ++a) {
      const auto arm = spec.from_linear(a);
      std::string prefix;
      for (auto c : arm.coords) prefix += std::to_string(c) + ",";
      for (std::size_t k = 1; k <= table.folds(); ++k) {
        out += prefix + std::to_string(k) + "," + format_score(table.val(a, k)) + "," +
               format_score(table.test(a, k)) + "\n";
      }
    }
  } else {
    nlohmann::ordered_json doc;
    doc["manifest"] = to_json(spec);
    doc["K"] = table.folds();
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t a = 0; a < table.size(); ++a) {
      const auto arm = spec.from_linear(a);
      for (std::size_t k = 1; k <= table.folds(); ++k) {
        nlohmann::ordered_json r;
        r["coords"] = arm.coords;
        r["fold"] = k;
        r["val"] = table.val(a, k);
        r["test"] = table.test(a, k);
        rows.push_back(std::move(r));
      }
    }
    doc["rows"] = std::move(rows);
    out = doc.dump() + "\n";
  }
  write_file_atomic(path, out);
}

GridSpec load_manifest(const fs::path& path) {
  try {
    return grid_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

void save_manifest(const GridSpec& spec, const fs::path& path) {
  write_file_atomic(path, to_json(spec).dump(2) + "\n");
}

}  // namespace gridarena
