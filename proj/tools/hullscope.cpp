// hullscope: command-line front end for the hull experiments.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hullscope/errors.hpp"
#include "hullscope/runs.hpp"

namespace hs = hullscope;

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitNumerical = 3;

std::vector<double> parse_doubles(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw hs::PreconditionError(std::string(what) + ": bad number '" + item + "'");
    out.push_back(v);
  }
  if (expected && out.size() != expected)
    throw hs::PreconditionError(std::string(what) + ": expected " + std::to_string(expected) + " comma-separated values");
  return out;
}

hs::cx parse_cx(const std::string& text, const char* what) {
  const auto v = parse_doubles(text, 2, what);
  return {v[0], v[1]};
}

hs::Rect parse_rect(const std::string& text, const char* what) {
  const auto v = parse_doubles(text, 4, what);
  if (!(v[0] < v[1] && v[2] < v[3])) throw hs::PreconditionError(std::string(what) + ": need re_min < re_max, im_min < im_max");
  return {v[0], v[1], v[2], v[3]};
}

hs::DomainSpec parse_domain(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "disk") {
    const auto v = parse_doubles(args, 0, "--domain");
    if (v.size() == 1) return hs::DomainSpec::disk(v[0]);
    if (v.size() == 3) return hs::DomainSpec::disk(v[0], {v[1], v[2]});
  } else if (kind == "annulus") {
    const auto v = parse_doubles(args, 2, "--domain");
    return hs::DomainSpec::annulus(v[0], v[1]);
  }
  throw hs::PreconditionError("--domain: expected disk:R, disk:R,cre,cim or annulus:a,b");
}

void add_extremal(CLI::App* sub, hs::ExtremalOptions& o) {
  sub->add_option("--samples", o.samples, "boundary samples per component (0: automatic)")->check(CLI::NonNegativeNumber);
  sub->add_option("--directions", o.directions, "polygon directions K_dir (even, >= 8)");
  sub->add_option("--cap", o.cap, "coefficient cap of the LP");
  sub->add_option("--unbounded-threshold", o.unbounded_threshold, "optimum above which a point counts as unbounded");
}

void print_outputs(const hs::RunOutput& out) {
  for (const auto& f : out.files) std::cout << f.string() << "\n";
  std::cout << "config_hash " << out.config_hash << "\n";
}

std::string degree_text(const hs::LaurentPoly& p) {
  if (p.is_polynomial()) return std::to_string(p.is_zero() ? 0 : p.max_degree());
  return std::to_string(p.min_degree()) + ".." + std::to_string(p.max_degree());
}

int validate(const std::string& path) {
  const hs::CurveC2 curve = hs::load_curve(path);
  std::cout << curve.size() << (curve.size() == 1 ? " component" : " components") << ", degrees ";
  for (std::size_t k = 0; k < curve.size(); ++k) {
    if (k) std::cout << " ";
    std::cout << "(" << degree_text(curve.component(k).f) << "," << degree_text(curve.component(k).g) << ")";
  }
  const hs::SimplicityReport rep = hs::check_simple(curve);
  std::cout << ", simple: " << (rep.simple ? "yes" : "no (warning)") << "\n";
  if (!rep.simple)
    std::cerr << "warning: component " << rep.component << " samples " << rep.index_a << " and " << rep.index_b
              << " are " << hs::format_double(rep.min_distance) << " apart\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on projective hulls of curves in C^2"};
  app.require_subcommand(1);

  std::string out_dir = ".";
  std::uint64_t seed = 1;
  auto add_common = [&](CLI::App* sub, std::string* curve, bool curve_required) {
    if (curve) {
      auto* opt = sub->add_option("--curve", *curve, "curve JSON file");
      if (curve_required) opt->required();
    }
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "root random seed");
  };

  // slice
  hs::SliceRun slice;
  std::string slice_plane = "z", slice_fixed = "0,0", slice_region = "-2,2,-2,2";
  auto* s_slice = app.add_subcommand("slice", "hull membership on a planar grid");
  add_common(s_slice, &slice.curve_path, true);
  s_slice->add_option("--M", slice.M, "hull level M >= 1");
  s_slice->add_option("--grid", slice.grid, "cells per side (>= 32)");
  s_slice->add_option("--d-max", slice.d_max, "largest total degree");
  s_slice->add_option("--plane", slice_plane, "varying coordinate")->check(CLI::IsMember({"z", "w"}));
  s_slice->add_option("--fixed", slice_fixed, "fixed coordinate re,im");
  s_slice->add_option("--region", slice_region, "re_min,re_max,im_min,im_max");
  add_extremal(s_slice, slice.extremal);

  // extremal
  hs::ExtremalRun ext;
  std::vector<std::string> ext_points;
  auto* s_ext = app.add_subcommand("extremal", "extremal values Lambda_d and best constants at points");
  add_common(s_ext, &ext.curve_path, true);
  s_ext->add_option("--point", ext_points, "z_re,z_im,w_re,w_im (repeatable)")->required();
  s_ext->add_option("--d-max", ext.d_max, "largest total degree");
  add_extremal(s_ext, ext.extremal);

  // fiber
  hs::FiberRun fib;
  std::vector<std::string> fib_z;
  std::string fib_window, fib_grid;
  auto* s_fib = app.add_subcommand("fiber", "fiber of the bidegree hull over z");
  add_common(s_fib, &fib.curve_path, true);
  s_fib->add_option("--z", fib_z, "z as re,im (repeatable)");
  s_fib->add_option("--random-z", fib.random_z, "random z in the unit disk outside the projection tube");
  s_fib->add_option("--tube", fib.tube, "tube radius around the projected curve");
  s_fib->add_option("--z-grid", fib_grid, "re,im,h,nx,ny: z grid for the analyticity probe");
  s_fib->add_option("--M", fib.M, "hull level M >= 1");
  s_fib->add_option("--grid", fib.grid, "w grid per side (>= 16)");
  s_fib->add_option("--d-max", fib.d_max, "z-degree cap");
  s_fib->add_option("--e-max", fib.e_max, "w-degree cap");
  s_fib->add_option("--window", fib_window, "w window re_min,re_max,im_min,im_max");
  add_extremal(s_fib, fib.extremal);

  // bishop
  hs::BishopRun bis;
  std::string bis_d = "3..6", bis_e = "3", bis_zeta0, bis_domain;
  auto* s_bis = app.add_subcommand("bishop", "Bishop polynomials and their decay table");
  add_common(s_bis, &bis.curve_path, true);
  s_bis->add_option("--d", bis_d, "z-degrees: a..b or a,b,c");
  s_bis->add_option("--e", bis_e, "w-degrees: a..b or a,b,c");
  s_bis->add_option("--zeta0", bis_zeta0, "base point re,im");
  s_bis->add_option("--domain", bis_domain, "disk:R | disk:R,cre,cim | annulus:a,b");
  s_bis->add_option("--r0", bis.r0, "comparison radius r0 (0: sqrt(r))");

  // measure
  hs::MeasureRun mea;
  std::string mea_alpha = "0.05,0.1,0.2", mea_mono = "1,5,10", mea_d;
  auto* s_mea = app.add_subcommand("measure", "Monte Carlo measure of sublevel sets");
  add_common(s_mea, &mea.curve_path, false);
  s_mea->add_option("--trials", mea.trials, "random unit polynomials");
  s_mea->add_option("--k-max", mea.k_max, "largest random degree");
  s_mea->add_option("--alpha", mea_alpha, "alpha values, comma-separated");
  s_mea->add_option("--monomials", mea_mono, "degrees k of z^k checked against pi alpha^2");
  s_mea->add_option("--n", mea.n_samples, "Monte Carlo samples (>= 10000)");
  s_mea->add_option("--d", mea_d, "with --curve: z-degrees of the T(d, e) sets");
  s_mea->add_option("--e", mea.e, "with --curve: w-degree");
  s_mea->add_option("--r0", mea.r0, "with --curve: r0 (0: sqrt(r))");

  // finiteness
  hs::FinitenessRun fin;
  std::string fin_d;
  auto* s_fin = app.add_subcommand("finiteness", "fiber cardinality against limit polynomials");
  add_common(s_fin, &fin.curve_path, true);
  s_fin->add_option("--M", fin.M, "hull level M >= 1");
  s_fin->add_option("--e", fin.e, "w-degree e");
  s_fin->add_option("--n-z", fin.n_z, "sampled z values (>= 20)");
  s_fin->add_option("--d", fin_d, "Bishop degrees (default e+2,e+4,e+6)");
  s_fin->add_option("--grid", fin.options.grid_n, "w grid per side");
  s_fin->add_option("--d-cap", fin.options.d_cap, "fiber z-degree cap (0: max(2, e))");
  s_fin->add_option("--e-cap", fin.options.e_cap, "fiber w-degree cap (0: e)");
  s_fin->add_option("--tube", fin.options.tube, "tube radius around the projected curve");
  s_fin->add_option("--r0", fin.options.r0, "r0 (0: sqrt(r))");
  add_extremal(s_fin, fin.options.scan.extremal);

  // probe
  hs::ProbeRun pro;
  std::string pro_radii = "1,2,4,8";
  auto* s_pro = app.add_subcommand("probe", "stability evidence for the best constant");
  add_common(s_pro, &pro.curve_path, true);
  s_pro->add_option("--n", pro.n_points, "sampled z values (>= 10)");
  s_pro->add_option("--d-max", pro.d_max, "largest total degree");
  s_pro->add_option("--radii", pro_radii, "z radius levels");
  s_pro->add_option("--grid", pro.options.grid_n, "w grid per side");
  s_pro->add_option("--d-cap", pro.options.d_cap, "bidegree z cap for locating hull points");
  s_pro->add_option("--e-cap", pro.options.e_cap, "bidegree w cap for locating hull points");
  s_pro->add_option("--growth-factor", pro.options.growth_factor, "growth ratio flagged as unbounded");
  add_extremal(s_pro, pro.options.extremal);

  // validate
  std::string val_path;
  auto* s_val = app.add_subcommand("validate", "parse a curve file and check it");
  s_val->add_option("curve", val_path, "curve JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitPrecondition;
  }

  try {
    std::optional<hs::RunOutput> out;
    if (*s_val) return validate(val_path);
    if (*s_slice) {
      slice.out_dir = out_dir;
      slice.spec.plane = slice_plane == "z" ? hs::SliceSpec::Plane::z : hs::SliceSpec::Plane::w;
      slice.spec.fixed = parse_cx(slice_fixed, "--fixed");
      slice.spec.region = parse_rect(slice_region, "--region");
      out = hs::run_slice(slice);
    } else if (*s_ext) {
      ext.out_dir = out_dir;
      for (const auto& p : ext_points) {
        const auto v = parse_doubles(p, 4, "--point");
        ext.points.push_back({{v[0], v[1]}, {v[2], v[3]}});
      }
      out = hs::run_extremal(ext);
    } else if (*s_fib) {
      fib.out_dir = out_dir;
      fib.seed = seed;
      for (const auto& z : fib_z) fib.z_values.push_back(parse_cx(z, "--z"));
      if (!fib_window.empty()) fib.window = parse_rect(fib_window, "--window");
      if (!fib_grid.empty()) {
        const auto v = parse_doubles(fib_grid, 5, "--z-grid");
        if (v[2] <= 0.0 || v[3] < 3 || v[4] < 3) throw hs::PreconditionError("--z-grid: need h > 0 and nx, ny >= 3");
        fib.z_grid = hs::ZGrid{{v[0], v[1]}, v[2], static_cast<int>(v[3]), static_cast<int>(v[4])};
      }
      out = hs::run_fiber(fib);
    } else if (*s_bis) {
      bis.out_dir = out_dir;
      bis.d_list = hs::parse_int_list(bis_d);
      bis.e_list = hs::parse_int_list(bis_e);
      if (!bis_zeta0.empty()) bis.zeta0 = parse_cx(bis_zeta0, "--zeta0");
      if (!bis_domain.empty()) bis.domain = parse_domain(bis_domain);
      out = hs::run_bishop(bis);
    } else if (*s_mea) {
      mea.out_dir = out_dir;
      mea.seed = seed;
      mea.alphas = parse_doubles(mea_alpha, 0, "--alpha");
      mea.monomial_degrees = hs::parse_int_list(mea_mono);
      if (!mea_d.empty()) mea.d_list = hs::parse_int_list(mea_d);
      out = hs::run_measure(mea);
    } else if (*s_fin) {
      fin.out_dir = out_dir;
      fin.seed = seed;
      if (!fin_d.empty()) fin.options.d_list = hs::parse_int_list(fin_d);
      out = hs::run_finiteness(fin);
    } else if (*s_pro) {
      pro.out_dir = out_dir;
      pro.seed = seed;
      pro.options.radii = parse_doubles(pro_radii, 0, "--radii");
      out = hs::run_probe(pro);
    }
    print_outputs(*out);
    if (out->numerical_failure) {
      std::cerr << "error: some solves ended in infeasible_numerics (see sidecar)\n";
      return kExitNumerical;
    }
    return 0;
  } catch (const hs::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const hs::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const hs::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
