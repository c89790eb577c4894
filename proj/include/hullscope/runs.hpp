#pragma once

// Reproducible experiment runs: each takes a plain configuration, writes its
// outputs atomically under `out_dir`, and stamps every file with the hash of
// the configuration (including the curve data).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hullscope/bishop.hpp"
#include "hullscope/extremal.hpp"
#include "hullscope/fiber.hpp"
#include "hullscope/io.hpp"
#include "hullscope/probe.hpp"
#include "hullscope/random.hpp"

namespace hullscope {

struct RunOutput {
  std::vector<std::filesystem::path> files;
  std::string config_hash;
  json summary;
  bool numerical_failure = false;  // some solve ended in infeasible_numerics
};

struct SliceRun {
  std::string curve_path;
  std::string out_dir = ".";
  double M = 1.5;
  int grid = 64;
  int d_max = 6;
  SliceSpec spec{SliceSpec::Plane::z, 0.0, {-2.0, 2.0, -2.0, 2.0}};
  ExtremalOptions extremal;
};
RunOutput run_slice(const SliceRun& cfg);

struct ExtremalRun {
  std::string curve_path;
  std::string out_dir = ".";
  std::vector<C2Point> points;
  int d_max = 6;
  ExtremalOptions extremal;
};
RunOutput run_extremal(const ExtremalRun& cfg);

/// Fibers over explicit z values, n random z in the unit disk away from the
/// projected curve, and/or a rectangular z grid (which adds the analyticity
/// probe).
struct FiberRun {
  std::string curve_path;
  std::string out_dir = ".";
  double M = 3.0;
  int grid = 16;
  int d_max = 6;
  int e_max = 6;
  std::optional<Rect> window;
  std::vector<cx> z_values;
  int random_z = 0;
  std::uint64_t seed = 1;
  double tube = 0.02;
  std::optional<ZGrid> z_grid;
  double position_eps = 1e-6;
  ExtremalOptions extremal;
};
RunOutput run_fiber(const FiberRun& cfg);

struct BishopRun {
  std::string curve_path;
  std::string out_dir = ".";
  std::vector<int> d_list{3, 4, 5, 6};
  std::vector<int> e_list{3};
  std::optional<cx> zeta0;
  std::optional<DomainSpec> domain;
  double r0 = 0.0;  // 0: sqrt(r)
};
RunOutput run_bishop(const BishopRun& cfg);

/// Without a curve: the sublevel-measure bound for random unit polynomials
/// and for z^k. With a curve: the measure of T(d, e) for each d.
struct MeasureRun {
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int trials = 100;
  int k_max = 10;
  std::vector<double> alphas{0.05, 0.1, 0.2};
  std::vector<int> monomial_degrees{1, 5, 10};
  long long n_samples = 100000;
  std::string curve_path;
  std::vector<int> d_list;
  int e = 3;
  double r0 = 0.0;
};
RunOutput run_measure(const MeasureRun& cfg);

struct FinitenessRun {
  std::string curve_path;
  std::string out_dir = ".";
  double M = 3.0;
  int e = 3;
  int n_z = 20;
  std::uint64_t seed = 1;
  FinitenessOptions options;
};
RunOutput run_finiteness(const FinitenessRun& cfg);

struct ProbeRun {
  std::string curve_path;
  std::string out_dir = ".";
  int n_points = 12;
  int d_max = 4;
  std::uint64_t seed = 1;
  StabilityOptions options;
};
RunOutput run_probe(const ProbeRun& cfg);

/// Degree list syntax: "3..10", "3,5,7", or "4".
std::vector<int> parse_int_list(const std::string& text);

/// Random unit polynomial: degree uniform in 1..max_degree, complex normal
/// coefficients, then unit-normalized.
UnivariatePoly random_unit_polynomial(Rng& rng, int max_degree);

}  // namespace hullscope
