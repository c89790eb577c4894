#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hullscope/poly.hpp"

namespace hullscope {

using json = nlohmann::ordered_json;

/// 17 significant digits; infinities as "inf" / "-inf", NaN as "nan".
std::string format_double(double x);

/// JSON number, or the strings above for non-finite values.
json json_number(double x);
json json_complex(cx z);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Hex FNV-1a 64 of the compact serialization of a run configuration.
std::string config_hash(const json& config);

/// CSV text with a leading "# config_hash: <hash>" comment line.
class CsvWriter {
 public:
  CsvWriter(const std::string& hash, const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& fields);
  const std::string& str() const { return text_; }

 private:
  std::size_t columns_;
  std::string text_;
};

// Polynomial files:
//   {"grading": "total" | "bidegree", "d": int, "e": int,
//    "coeffs": [[n, m, re, im], ...]}
// nonzero coefficients only, sorted by (n, m); unknown members are rejected.
json poly_to_json(const BivariatePoly& p);
BivariatePoly poly_from_json(const json& j);
BivariatePoly parse_poly_json(const std::string& text);

}  // namespace hullscope
