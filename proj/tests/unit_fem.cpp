#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fracwave/assembly.hpp"
#include "fracwave/errors.hpp"
#include "fracwave/mesh.hpp"

using namespace fracwave;

TEST_CASE("interval mesh carries the expected geometry") {
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 2.0, 10);
  CHECK(mesh.dim == 1);
  CHECK(mesh.n_nodes() == 11);
  CHECK(mesh.n_elements() == 10);
  CHECK(mesh.h == doctest::Approx(0.2));
  REQUIRE(mesh.boundary_nodes.size() == 2);
  CHECK(mesh.nodes(mesh.boundary_nodes[0], 0) == doctest::Approx(0.0));
  CHECK(mesh.nodes(mesh.boundary_nodes[1], 0) == doctest::Approx(2.0));
}

TEST_CASE("uniform 1D mass and stiffness match the hand assembly") {
  const int n = 8;
  const double h = 1.0 / n;
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, n);
  const FemMatrices fem = assemble(mesh);
  const Mat M = Mat(fem.M);
  const Mat K = Mat(fem.K);
  for (int i = 0; i <= n; ++i) {
    const bool end = (i == 0 || i == n);
    CHECK(M(i, i) == doctest::Approx(end ? h / 3.0 : 2.0 * h / 3.0));
    CHECK(K(i, i) == doctest::Approx(end ? 1.0 / h : 2.0 / h));
    if (i < n) {
      CHECK(M(i, i + 1) == doctest::Approx(h / 6.0));
      CHECK(K(i, i + 1) == doctest::Approx(-1.0 / h));
    }
  }
  // Constants lie in the stiffness kernel; the mass integrates 1 to length.
  const Vec ones = Vec::Ones(mesh.n_nodes());
  CHECK((fem.K * ones).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(ones.dot(fem.M * ones) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("rectangle mesh integrates constants to the area") {
  const SpaceMesh mesh = SpaceMesh::rectangle(0.0, 2.0, 0.0, 1.0, 8, 4);
  CHECK(mesh.dim == 2);
  CHECK(mesh.n_nodes() == 9 * 5);
  const FemMatrices fem = assemble(mesh);
  const Vec ones = Vec::Ones(mesh.n_nodes());
  CHECK(ones.dot(fem.M * ones) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK((fem.K * ones).cwiseAbs().maxCoeff() < 1e-12);
  // Boundary mass integrates 1 over the perimeter.
  CHECK(ones.dot(fem.B * ones) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("rectangle boundary detection finds exactly the rim nodes") {
  const int nx = 7, ny = 5;
  const SpaceMesh mesh = SpaceMesh::rectangle(0.0, 1.0, 0.0, 1.0, nx, ny);
  const std::size_t rim = 2 * (nx + 1) + 2 * (ny + 1) - 4;
  CHECK(mesh.boundary_nodes.size() == rim);
  for (const int node : mesh.boundary_nodes) {
    const double x = mesh.nodes(node, 0);
    const double y = mesh.nodes(node, 1);
    const bool on_rim = x == 0.0 || x == 1.0 || y == 0.0 || y == 1.0;
    CHECK(on_rim);
  }
}

TEST_CASE("weighted mass matrix scales linearly in the weight") {
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, 16);
  const FemMatrices fem = assemble(mesh);
  const Vec w3 = Vec::Constant(mesh.n_nodes(), 3.0);
  const Mat diff = Mat(assemble_weighted(mesh, w3)) - 3.0 * Mat(fem.M);
  CHECK(diff.cwiseAbs().maxCoeff() < 1e-13);

  // Nonuniform weight: integrate x against hat functions; row sums of the
  // weighted mass must reproduce \int x phi_i dx.
  Vec x(mesh.n_nodes());
  for (int i = 0; i < mesh.n_nodes(); ++i) x[i] = mesh.nodes(i, 0);
  const SpMat Mx = assemble_weighted(mesh, x);
  const Vec ones = Vec::Ones(mesh.n_nodes());
  CHECK(ones.dot(Mx * ones) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("harmonic lifting reproduces the closed-form profile") {
  const SpaceMesh mesh = SpaceMesh::interval(0.0, 1.0, 64);
  const FemMatrices fem = assemble(mesh);
  Vec g(2);
  g << 0.0, 1.0;  // unit flux at x = 1
  const Vec G = neumann_extension(fem, g);
  const double sinh1 = std::sinh(1.0);
  double worst = 0.0;
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    const double exact = std::cosh(mesh.nodes(i, 0)) / sinh1;
    worst = std::max(worst, std::abs(G[i] - exact));
  }
  CHECK(worst < 2e-4);
}

TEST_CASE("boundary scatter and dense boundary mass agree with B") {
  const SpaceMesh mesh = SpaceMesh::rectangle(0.0, 1.0, 0.0, 1.0, 6, 6);
  const FemMatrices fem = assemble(mesh);
  Vec gb(fem.n_boundary());
  for (int i = 0; i < fem.n_boundary(); ++i) gb[i] = std::sin(0.37 * i);
  const Vec scattered = scatter_boundary(gb, fem);
  const Mat bb = boundary_mass_dense(fem);
  CHECK(gb.dot(bb * gb) ==
        doctest::Approx(scattered.dot(fem.B * scattered)).epsilon(1e-12));
  // Interior entries stay zero.
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    bool boundary = false;
    for (const int b : fem.boundary_nodes) boundary = boundary || (b == i);
    if (!boundary) CHECK(scattered[i] == 0.0);
  }
}

TEST_CASE("mesh constructors reject degenerate input") {
  CHECK_THROWS_AS((void)SpaceMesh::interval(1.0, 0.0, 4), PreconditionError);
  CHECK_THROWS_AS((void)SpaceMesh::interval(0.0, 1.0, 0), PreconditionError);
  CHECK_THROWS_AS((void)SpaceMesh::rectangle(0.0, 1.0, 0.0, 1.0, 0, 3),
                  PreconditionError);
}
