#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hullscope/errors.hpp"
#include "hullscope/io.hpp"
#include "hullscope/runs.hpp"
#include "support.hpp"

using namespace hullscope;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hullscope_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("number formatting") {
  CHECK(format_double(kInf) == "inf");
  CHECK(format_double(-kInf) == "-inf");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(json_number(kInf).get<std::string>() == "inf");
  CHECK(json_number(0.25).get<double>() == 0.25);
}

TEST_CASE("config hashes") {
  const json a = {{"M", 1.5}, {"grid", 64}};
  const json b = {{"M", 1.5}, {"grid", 65}};
  CHECK(config_hash(a) == config_hash(a));
  CHECK(config_hash(a) != config_hash(b));
  CHECK(config_hash(a).size() == 16);
}

TEST_CASE("csv writer") {
  CsvWriter w("abc", {"x", "y"});
  w.row({"1", "2"});
  CHECK(w.str() == "# config_hash: abc\nx,y\n1,2\n");
  CHECK_THROWS_AS(w.row({"1"}), PreconditionError);
}

TEST_CASE("atomic writes") {
  const fs::path dir = scratch("atomic");
  fs::create_directories(dir);
  write_atomic(dir / "f.txt", "one");
  write_atomic(dir / "f.txt", "two");
  CHECK(slurp(dir / "f.txt") == "two");
  int files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  fs::remove_all(dir);
}

TEST_CASE("polynomial files") {
  BivariatePoly p = BivariatePoly::bidegree(2, 1);
  p.set_coeff(2, 1, cx(0.5, -1.0));
  p.set_coeff(0, 0, 1.0);
  const BivariatePoly q = poly_from_json(poly_to_json(p));
  CHECK(q.coeff_matrix() == p.coeff_matrix());
  CHECK(q.grading() == Grading::bidegree);
  CHECK(poly_to_json(p)["coeffs"].size() == 2);
  CHECK_THROWS_AS(parse_poly_json(R"({"grading": "total", "d": 1, "e": 1, "coeffs": [], "x": 0})"), ParseError);
  CHECK_THROWS_AS(parse_poly_json(R"({"grading": "total", "d": 1, "e": 1, "coeffs": [[1, 1, 1, 0]]})"), ParseError);
}

TEST_CASE("integer lists") {
  CHECK(parse_int_list("3..6") == std::vector<int>{3, 4, 5, 6});
  CHECK(parse_int_list("3,5,9") == std::vector<int>{3, 5, 9});
  CHECK(parse_int_list("4") == std::vector<int>{4});
  CHECK_THROWS_AS(parse_int_list("6..3"), PreconditionError);
  CHECK_THROWS_AS(parse_int_list("a"), PreconditionError);
  CHECK_THROWS_AS(parse_int_list("3.5"), PreconditionError);
}

TEST_CASE("runs are reproducible and stamped") {
  const fs::path a = scratch("run_a"), b = scratch("run_b");
  BishopRun cfg;
  cfg.curve_path = testing::data_path("cubic.json");
  cfg.d_list = {3, 4, 5};
  cfg.out_dir = a.string();
  const RunOutput ra = run_bishop(cfg);
  cfg.out_dir = b.string();
  const RunOutput rb = run_bishop(cfg);
  CHECK(ra.config_hash == rb.config_hash);
  REQUIRE(ra.files.size() == 2);
  for (std::size_t i = 0; i < ra.files.size(); ++i) {
    CHECK(slurp(ra.files[i]) == slurp(rb.files[i]));
    CHECK(slurp(ra.files[i]).find(ra.config_hash) != std::string::npos);
  }
  const std::string csv = slurp(a / "decay.csv");
  CHECK(csv.rfind("# config_hash: " + ra.config_hash + "\nd,e,lambda,sup_norm_K,r,r0,fitted_C,passes\n", 0) == 0);

  // a different configuration gets a different stamp
  cfg.d_list = {3, 4};
  CHECK(run_bishop(cfg).config_hash != ra.config_hash);

  const json side = json::parse(slurp(a / "decay.json"));
  CHECK(side["config"]["d"] == json({3, 4, 5}));
  CHECK(side["config_hash"] == ra.config_hash);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("measure runs depend only on the seed") {
  const fs::path a = scratch("m_a"), b = scratch("m_b");
  MeasureRun cfg;
  cfg.trials = 5;
  cfg.n_samples = 10000;
  cfg.out_dir = a.string();
  const RunOutput ra = run_measure(cfg);
  cfg.out_dir = b.string();
  const RunOutput rb = run_measure(cfg);
  CHECK(slurp(ra.files[0]) == slurp(rb.files[0]));
  CHECK(ra.summary["failures"] == 0);
  cfg.seed = 2;
  const RunOutput rc = run_measure(cfg);
  CHECK(slurp(rc.files[0]) != slurp(ra.files[0]));
  fs::remove_all(a);
  fs::remove_all(b);
}

}  // TEST_SUITE
