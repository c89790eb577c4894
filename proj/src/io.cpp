#include "hullscope/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>

#include "hullscope/errors.hpp"

namespace hullscope {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

json json_complex(cx z) { return json::array({json_number(z.real()), json_number(z.imag())}); }

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string config_hash(const json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CsvWriter::CsvWriter(const std::string& hash, const std::vector<std::string>& columns) : columns_(columns.size()) {
  text_ = "# config_hash: " + hash + "\n";
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) throw PreconditionError("CsvWriter: wrong number of fields");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) text_ += ',';
    text_ += fields[i];
  }
  text_ += '\n';
}

json poly_to_json(const BivariatePoly& p) {
  json coeffs = json::array();
  for (int n = 0; n <= p.d(); ++n)
    for (int m = 0; m <= p.e(); ++m) {
      const cx c = p.coeff(n, m);
      if (c != cx(0.0)) coeffs.push_back(json::array({n, m, json_number(c.real()), json_number(c.imag())}));
    }
  json j;
  j["grading"] = p.grading() == Grading::total ? "total" : "bidegree";
  j["d"] = p.d();
  j["e"] = p.e();
  j["coeffs"] = coeffs;
  return j;
}

namespace {

int get_int(const json& j, const char* field) {
  if (!j.contains(field)) throw ParseError(field, "missing");
  if (!j.at(field).is_number_integer()) throw ParseError(field, "expected an integer");
  return j.at(field).get<int>();
}

}  // namespace

BivariatePoly poly_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("", "polynomial must be a JSON object");
  static const std::set<std::string> known{"grading", "d", "e", "coeffs"};
  for (const auto& item : j.items())
    if (!known.count(item.key())) throw ParseError(item.key(), "unknown field");
  if (!j.contains("grading") || !j.at("grading").is_string()) throw ParseError("grading", "expected a string");
  const std::string g = j.at("grading").get<std::string>();
  if (g != "total" && g != "bidegree") throw ParseError("grading", "expected \"total\" or \"bidegree\"");
  const Grading grading = g == "total" ? Grading::total : Grading::bidegree;
  const int d = get_int(j, "d");
  const int e = get_int(j, "e");
  if (d < 0 || e < 0) throw ParseError("d", "degrees must be nonnegative");
  if (grading == Grading::total && d != e) throw ParseError("e", "total grading requires e == d");
  BivariatePoly p(grading, d, e);
  if (!j.contains("coeffs") || !j.at("coeffs").is_array()) throw ParseError("coeffs", "expected an array");
  std::size_t idx = 0;
  for (const auto& t : j.at("coeffs")) {
    const std::string where = "coeffs[" + std::to_string(idx++) + "]";
    if (!t.is_array() || t.size() != 4 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
        !t[2].is_number() || !t[3].is_number())
      throw ParseError(where, "expected [n, m, re, im]");
    const int n = t[0].get<int>();
    const int m = t[1].get<int>();
    if (!p.in_support(n, m)) throw ParseError(where, "monomial outside the grading");
    p.set_coeff(n, m, {t[2].get<double>(), t[3].get<double>()});
  }
  return p;
}

BivariatePoly parse_poly_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ParseError("", std::string("invalid JSON: ") + ex.what());
  }
  return poly_from_json(j);
}

}  // namespace hullscope
