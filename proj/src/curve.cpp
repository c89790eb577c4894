#include "hullscope/curve.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "hullscope/errors.hpp"

namespace hullscope {

using json = nlohmann::json;

CurveC2::CurveC2(std::vector<CurveComponent> components, double rho, std::string label)
    : components_(std::move(components)), rho_(rho), label_(std::move(label)) {
  if (components_.empty()) throw ParseError("components", "a curve needs at least one component");
  if (!(rho_ > 0.0 && rho_ < 1.0)) {
    throw ParseError("rho", "must lie strictly inside (0, 1), got " + std::to_string(rho_));
  }
}

bool CurveC2::is_polynomial() const {
  for (const auto& c : components_)
    if (!c.f.is_polynomial() || !c.g.is_polynomial()) return false;
  return true;
}

bool CurveC2::in_domain(cx zeta) const {
  const double r = std::abs(zeta);
  if (r >= 1.0 / rho_) return false;
  return is_polynomial() || r > rho_;
}

int CurveC2::max_laurent_degree() const {
  int m = 0;
  for (const auto& c : components_) {
    for (const LaurentPoly* p : {&c.f, &c.g}) {
      if (p->is_zero()) continue;
      m = std::max({m, std::abs(p->min_degree()), std::abs(p->max_degree())});
    }
  }
  return m;
}

C2Point eval_component(const CurveC2& curve, std::size_t k, cx zeta) {
  if (k >= curve.size()) throw PreconditionError("eval_component: component index out of range");
  if (!curve.in_domain(zeta)) {
    throw DomainError("eval_component: |zeta| = " + std::to_string(std::abs(zeta)) +
                      " is outside the parameter annulus");
  }
  const auto& c = curve.component(k);
  return {c.f(zeta), c.g(zeta)};
}

cx circle_point(int j, int samples) {
  const double angle = (2.0 * std::numbers::pi * static_cast<double>(j)) / static_cast<double>(samples);
  return {std::cos(angle), std::sin(angle)};
}

BoundarySample sample_boundary(const CurveC2& curve, int samples) {
  if (samples < 1) throw PreconditionError("sample_boundary: need at least one sample");
  BoundarySample out;
  const std::size_t total = curve.size() * static_cast<std::size_t>(samples);
  out.points.reserve(total);
  out.parameters.reserve(total);
  out.component_index.reserve(total);
  for (std::size_t k = 0; k < curve.size(); ++k) {
    for (int j = 0; j < samples; ++j) {
      const cx zeta = circle_point(j, samples);
      out.points.push_back(eval_component(curve, k, zeta));
      out.parameters.push_back(zeta);
      out.component_index.push_back(static_cast<int>(k));
    }
  }
  return out;
}

double sup_norm_on_curve(const BivariatePoly& p, const CurveC2& curve, int samples) {
  if (samples < 64) throw PreconditionError("sup_norm_on_curve: need at least 64 samples");
  double best = 0.0;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    const auto& c = curve.component(k);
    for (int j = 0; j < samples; ++j) {
      const cx zeta = circle_point(j, samples);
      best = std::max(best, std::abs(p(c.f(zeta), c.g(zeta))));
    }
  }
  return best;
}

SimplicityReport check_simple(const CurveC2& curve, int samples, double tolerance, Exec exec) {
  SimplicityReport report;
  report.min_distance = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < curve.size(); ++k) {
    const auto& c = curve.component(k);
    std::vector<C2Point> pts(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
      const cx zeta = circle_point(j, samples);
      pts[static_cast<std::size_t>(j)] = {c.f(zeta), c.g(zeta)};
    }
    // per-row minima, reduced in index order afterwards
    std::vector<double> row_min(pts.size(), std::numeric_limits<double>::infinity());
    std::vector<int> row_arg(pts.size(), -1);
    for_each_index(exec, pts.size(), [&](std::size_t a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        const double dz = std::norm(pts[a].z - pts[b].z);
        const double dw = std::norm(pts[a].w - pts[b].w);
        const double dist = std::sqrt(dz + dw);
        if (dist < row_min[a]) {
          row_min[a] = dist;
          row_arg[a] = static_cast<int>(b);
        }
      }
    });
    for (std::size_t a = 0; a < pts.size(); ++a) {
      if (row_min[a] < report.min_distance) {
        report.min_distance = row_min[a];
        report.component = k;
        report.index_a = static_cast<int>(a);
        report.index_b = row_arg[a];
      }
    }
  }
  report.simple = report.min_distance > tolerance;
  return report;
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) throw ParseError(where + it.key(), "unknown field");
  }
}

LaurentPoly parse_laurent(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  reject_unknown(j, {"min_degree", "coeffs"}, where + ".");
  if (!j.contains("min_degree") || !j.at("min_degree").is_number_integer())
    throw ParseError(where + ".min_degree", "missing or not an integer");
  if (!j.contains("coeffs") || !j.at("coeffs").is_array() || j.at("coeffs").empty())
    throw ParseError(where + ".coeffs", "missing or empty array");
  std::vector<cx> coeffs;
  std::size_t i = 0;
  for (const auto& c : j.at("coeffs")) {
    const std::string at = where + ".coeffs[" + std::to_string(i++) + "]";
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
      throw ParseError(at, "expected [re, im]");
    coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
  }
  return LaurentPoly(j.at("min_degree").get<int>(), std::move(coeffs));
}

json laurent_to_json(const LaurentPoly& p) {
  json coeffs = json::array();
  for (const cx& c : p.coeffs()) coeffs.push_back({c.real(), c.imag()});
  return {{"min_degree", p.min_degree()}, {"coeffs", coeffs}};
}

}  // namespace

CurveC2 parse_curve_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "top level must be an object");
  reject_unknown(doc, {"label", "rho", "components"}, "");

  std::string label;
  if (doc.contains("label")) {
    if (!doc.at("label").is_string()) throw ParseError("label", "must be a string");
    label = doc.at("label").get<std::string>();
  }
  double rho = CurveC2::kDefaultRho;
  if (doc.contains("rho")) {
    if (!doc.at("rho").is_number()) throw ParseError("rho", "must be a number");
    rho = doc.at("rho").get<double>();
  }
  if (!doc.contains("components") || !doc.at("components").is_array())
    throw ParseError("components", "missing or not an array");

  std::vector<CurveComponent> comps;
  std::size_t k = 0;
  for (const auto& c : doc.at("components")) {
    const std::string where = "components[" + std::to_string(k++) + "]";
    if (!c.is_object()) throw ParseError(where, "expected an object");
    reject_unknown(c, {"f", "g"}, where + ".");
    if (!c.contains("f")) throw ParseError(where + ".f", "missing");
    if (!c.contains("g")) throw ParseError(where + ".g", "missing");
    comps.push_back({parse_laurent(c.at("f"), where + ".f"), parse_laurent(c.at("g"), where + ".g")});
  }
  return CurveC2(std::move(comps), rho, std::move(label));
}

CurveC2 load_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open curve file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_curve_json(ss.str());
}

std::string curve_to_json(const CurveC2& curve) {
  json comps = json::array();
  for (const auto& c : curve.components())
    comps.push_back({{"f", laurent_to_json(c.f)}, {"g", laurent_to_json(c.g)}});
  json doc = {{"label", curve.label()}, {"rho", curve.rho()}, {"components", comps}};
  return doc.dump(2);
}

}  // namespace hullscope
