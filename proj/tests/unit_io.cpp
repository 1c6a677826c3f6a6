#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "fracwave/array_io.hpp"
#include "fracwave/bump.hpp"
#include "fracwave/conditioning.hpp"
#include "fracwave/config.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/manifest.hpp"
#include "fracwave/rng.hpp"

using namespace fracwave;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "fracwave-io-test";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config serialization round-trips through the parser") {
  RunConfig config;
  config.c = 1.25;
  config.alpha = 0.35;
  config.nx = 37;
  config.steps = 111;
  config.target = "attainable";
  config.scenario = "pulse";
  config.seed = 987654321;
  config.gamma = 2.5e-7;
  config.out = "some/dir";

  const std::string text = serialize_config(config);
  const RunConfig back = parse_config(text);
  CHECK(serialize_config(back) == text);
  CHECK(back.c == config.c);
  CHECK(back.alpha == config.alpha);
  CHECK(back.nx == config.nx);
  CHECK(back.steps == config.steps);
  CHECK(back.target == config.target);
  CHECK(back.seed == config.seed);
  CHECK(back.gamma == config.gamma);
}

TEST_CASE("parser rejects unknown keys with the offending name and line") {
  const std::string text = "[physics]\nc = 1.0\nbogus_key = 3\n";
  try {
    (void)parse_config(text);
    FAIL("expected a parse error");
  } catch (const ConfigError& ex) {
    const std::string what = ex.what();
    CHECK(what.find("bogus_key") != std::string::npos);
    CHECK(what.find("3") != std::string::npos);  // line number
  }
}

TEST_CASE("parser rejects duplicate keys and unknown sections") {
  CHECK_THROWS_AS((void)parse_config("[physics]\nc = 1\nc = 2\n"),
                  ConfigError);
  CHECK_THROWS_AS((void)parse_config("[nosuch]\nx = 1\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("[physics]\nc 1\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config("[physics]\nc = not_a_number\n"),
                  ConfigError);
}

TEST_CASE("comments and blank lines are ignored") {
  const RunConfig config = parse_config(
      "# leading comment\n\n[physics]\n# inner\nc = 2.5\n\n[time]\nsteps = "
      "32\n");
  CHECK(config.c == 2.5);
  CHECK(config.steps == 32);
  CHECK(config.b == RunConfig{}.b);  // untouched keys keep defaults
}

TEST_CASE("array files round-trip values and metadata") {
  TempDir tmp;
  const std::string path = (tmp.path / "field.bin").string();
  Rng rng(31337);
  const Mat values = rng.matrix(7, 13);
  ArrayMeta meta;
  meta.dt = 0.015625;
  meta.h = 0.04;
  meta.alpha = 0.55;
  write_array(path, values, meta);

  const ArrayFile back = read_array(path);
  CHECK(back.values.rows() == 7);
  CHECK(back.values.cols() == 13);
  CHECK((back.values - values).cwiseAbs().maxCoeff() == 0.0);  // bit-exact
  CHECK(back.meta.dt == meta.dt);
  CHECK(back.meta.h == meta.h);
  CHECK(back.meta.alpha == meta.alpha);
}

TEST_CASE("truncated array files are rejected") {
  TempDir tmp;
  const std::string path = (tmp.path / "short.bin").string();
  Rng rng(1);
  write_array(path, rng.matrix(4, 4), ArrayMeta{0.1, 0.1, 0.5});
  fs::resize_file(path, fs::file_size(path) - 8);
  CHECK_THROWS_AS((void)read_array(path), PreconditionError);
}

TEST_CASE("manifest verification detects tampering") {
  TempDir tmp;
  {
    std::ofstream a(tmp.path / "a.txt");
    a << "alpha\n";
    std::ofstream b(tmp.path / "b.txt");
    b << "bravo\n";
  }
  write_manifest(tmp.path.string(), {"b.txt", "a.txt"});
  CHECK(verify_manifest(tmp.path.string()).empty());

  // Sorted by name regardless of the order passed in.
  std::ifstream in(tmp.path / "manifest.txt");
  std::string first, second;
  std::getline(in, first);
  std::getline(in, second);
  CHECK(first.find("a.txt") != std::string::npos);
  CHECK(second.find("b.txt") != std::string::npos);

  {
    std::ofstream a(tmp.path / "a.txt");
    a << "tampered\n";
  }
  const auto problems = verify_manifest(tmp.path.string());
  REQUIRE(!problems.empty());  // size and checksum may both be reported
  for (const auto& problem : problems)
    CHECK(problem.find("a.txt") != std::string::npos);
}

TEST_CASE("cutoff function has the plateau, support, and monotone decay") {
  const BumpFunction rho(1.0, 2.0);
  CHECK(rho.value(0.0) == 1.0);
  CHECK(rho.value(0.999) == 1.0);
  CHECK(rho.value(-0.5) == 1.0);
  CHECK(rho.value(2.0) == 0.0);
  CHECK(rho.value(5.0) == 0.0);
  double prev = 1.0;
  for (double tau = 1.0; tau <= 2.0; tau += 0.05) {
    const double v = rho.value(tau);
    CHECK(v <= prev + 1e-15);
    CHECK(v >= 0.0);
    prev = v;
  }
  // Derivative consistency against a central difference in the decay zone.
  const double d = 1e-6;
  for (const double tau : {1.2, 1.5, 1.8}) {
    const double fd = (rho.value(tau + d) - rho.value(tau - d)) / (2.0 * d);
    CHECK(rho.derivative(tau) == doctest::Approx(fd).epsilon(1e-6));
    CHECK(rho.chi1(tau) ==
          doctest::Approx(rho.value(tau) + tau * rho.derivative(tau))
              .epsilon(1e-12));
  }
}

TEST_CASE("mollification reproduces constants away from the ends") {
  const TimeGrid grid(1.0 / 200, 200);
  const Mat raw = Mat::Constant(3, grid.n_nodes(), 4.2);
  const int halo = 10;
  const Mat smooth = mollify_rows(raw, halo * grid.dt, grid);
  CHECK(smooth.allFinite());
  // The kernel weight is normalized over the full stencil, so interior
  // nodes reproduce constants exactly; near the ends the zero extension
  // pulls the value down, which is what the compatibility correction needs.
  const Mat interior = smooth.middleCols(halo, grid.n_nodes() - 2 * halo);
  CHECK((interior.array() - 4.2).abs().maxCoeff() < 1e-13);
  CHECK(smooth(0, 0) < 4.2);
}

TEST_CASE("conditioned data vanishes at the start in value and slope") {
  const TimeGrid grid(1.0 / 256, 256);
  Mat raw(2, grid.n_nodes());
  for (int n = 0; n < grid.n_nodes(); ++n) {
    const double t = grid.node(n);
    raw(0, n) = 0.7 + 0.3 * std::sin(2.0 * kPi * t);
    raw(1, n) = -0.2 + 0.5 * std::cos(3.0 * kPi * t);
  }
  ConditioningParams params;
  params.epsilon = 4.0 * grid.dt;
  const BoundarySignal out = condition_boundary_data(raw, params, grid);
  CHECK(out.values.col(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(out.dvalues.col(0).cwiseAbs().maxCoeff() == 0.0);
  out.require_compatible();
  CHECK(out.values.allFinite());
}
