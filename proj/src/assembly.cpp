#include "fracwave/assembly.hpp"

#include <cmath>
#include <vector>

namespace fracwave {

namespace {

using Triplet = Eigen::Triplet<double>;

double triangle_area(const SpaceMesh& m, int e, double grad[3][2]) {
  const int i = m.elements(e, 0), j = m.elements(e, 1), k = m.elements(e, 2);
  const double x1 = m.nodes(i, 0), y1 = m.nodes(i, 1);
  const double x2 = m.nodes(j, 0), y2 = m.nodes(j, 1);
  const double x3 = m.nodes(k, 0), y3 = m.nodes(k, 1);
  const double det = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1);
  const double area = 0.5 * std::abs(det);
  if (!(area > 1e-14))
    throw PreconditionError("assemble: degenerate triangle");
  // Barycentric gradients.
  grad[0][0] = (y2 - y3) / det;
  grad[0][1] = (x3 - x2) / det;
  grad[1][0] = (y3 - y1) / det;
  grad[1][1] = (x1 - x3) / det;
  grad[2][0] = (y1 - y2) / det;
  grad[2][1] = (x2 - x1) / det;
  return area;
}

}  // namespace

FemMatrices assemble(const SpaceMesh& mesh) {
  const int n = mesh.n_nodes();
  std::vector<Triplet> tm, tk, tb;
  if (mesh.dim == 1) {
    for (int e = 0; e < mesh.n_elements(); ++e) {
      const int a = mesh.elements(e, 0), b = mesh.elements(e, 1);
      const double he = mesh.nodes(b, 0) - mesh.nodes(a, 0);
      if (!(he > 0.0))
        throw PreconditionError("assemble: degenerate interval element");
      const double m0 = he / 6.0, k0 = 1.0 / he;
      tm.emplace_back(a, a, 2.0 * m0);
      tm.emplace_back(b, b, 2.0 * m0);
      tm.emplace_back(a, b, m0);
      tm.emplace_back(b, a, m0);
      tk.emplace_back(a, a, k0);
      tk.emplace_back(b, b, k0);
      tk.emplace_back(a, b, -k0);
      tk.emplace_back(b, a, -k0);
    }
    for (int bn : mesh.boundary_nodes) tb.emplace_back(bn, bn, 1.0);
  } else {
    double g[3][2];
    for (int e = 0; e < mesh.n_elements(); ++e) {
      const double area = triangle_area(mesh, e, g);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          const int i = mesh.elements(e, r), j = mesh.elements(e, c);
          tm.emplace_back(i, j, area / (r == c ? 6.0 : 12.0));
          tk.emplace_back(i, j,
                          area * (g[r][0] * g[c][0] + g[r][1] * g[c][1]));
        }
    }
    for (int f = 0; f < mesh.boundary_facets.rows(); ++f) {
      const int a = mesh.boundary_facets(f, 0), b = mesh.boundary_facets(f, 1);
      const double len = (mesh.nodes.row(a) - mesh.nodes.row(b)).norm();
      tb.emplace_back(a, a, len / 3.0);
      tb.emplace_back(b, b, len / 3.0);
      tb.emplace_back(a, b, len / 6.0);
      tb.emplace_back(b, a, len / 6.0);
    }
  }
  FemMatrices fem;
  fem.M.resize(n, n);
  fem.K.resize(n, n);
  fem.B.resize(n, n);
  fem.M.setFromTriplets(tm.begin(), tm.end());
  fem.K.setFromTriplets(tk.begin(), tk.end());
  fem.B.setFromTriplets(tb.begin(), tb.end());
  fem.boundary_nodes = mesh.boundary_nodes;
  return fem;
}

SpMat assemble_weighted(const SpaceMesh& mesh, const Vec& w) {
  const int n = mesh.n_nodes();
  if (w.size() != n)
    throw PreconditionError("assemble_weighted: weight size != node count");
  std::vector<Triplet> tm;
  if (mesh.dim == 1) {
    for (int e = 0; e < mesh.n_elements(); ++e) {
      const int a = mesh.elements(e, 0), b = mesh.elements(e, 1);
      const double he = mesh.nodes(b, 0) - mesh.nodes(a, 0);
      if (!(he > 0.0))
        throw PreconditionError("assemble_weighted: degenerate element");
      const double wa = w[a], wb = w[b];
      // Exact integrals of w_h phi_i phi_j with w_h linear on the element.
      const double aa = he * (wa / 4.0 + wb / 12.0);
      const double ab = he * (wa / 12.0 + wb / 12.0);
      const double bb = he * (wa / 12.0 + wb / 4.0);
      tm.emplace_back(a, a, aa);
      tm.emplace_back(a, b, ab);
      tm.emplace_back(b, a, ab);
      tm.emplace_back(b, b, bb);
    }
  } else {
    double g[3][2];
    for (int e = 0; e < mesh.n_elements(); ++e) {
      const double area = triangle_area(mesh, e, g);
      const int v[3] = {mesh.elements(e, 0), mesh.elements(e, 1),
                        mesh.elements(e, 2)};
      // \int l_i l_j l_k = 2A i!j!k!/(i+j+k+2)! with multi-indices.
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
          double val = 0.0;
          for (int k = 0; k < 3; ++k) {
            double coef;
            if (r == c && c == k)
              coef = area / 10.0;                 // all equal
            else if (r == c || r == k || c == k)
              coef = area / 30.0;                 // two equal
            else
              coef = area / 60.0;                 // all distinct
            val += w[v[k]] * coef;
          }
          tm.emplace_back(v[r], v[c], val);
        }
    }
  }
  SpMat out(n, n);
  out.setFromTriplets(tm.begin(), tm.end());
  return out;
}

Mat boundary_mass_dense(const FemMatrices& fem) {
  const int nb = fem.n_boundary();
  Mat bb = Mat::Zero(nb, nb);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      bb(i, j) = fem.B.coeff(fem.boundary_nodes[i], fem.boundary_nodes[j]);
  return bb;
}

Vec scatter_boundary(const Vec& values, const FemMatrices& fem) {
  if (values.size() != fem.n_boundary())
    throw PreconditionError("scatter_boundary: size != boundary node count");
  Vec out = Vec::Zero(fem.n_dofs());
  for (int i = 0; i < fem.n_boundary(); ++i)
    out[fem.boundary_nodes[i]] = values[i];
  return out;
}

NeumannExtension::NeumannExtension(const FemMatrices& fem) : fem_(fem) {
  SpMat a = fem.K + fem.M;
  solver_.compute(a);
  if (solver_.info() != Eigen::Success)
    throw PreconditionError("NeumannExtension: factorization failed");
}

Vec NeumannExtension::extend(const Vec& g) const {
  Vec rhs = fem_.B * scatter_boundary(g, fem_);
  Vec out = solver_.solve(rhs);
  if (solver_.info() != Eigen::Success)
    throw PreconditionError("NeumannExtension: solve failed");
  return out;
}

Vec neumann_extension(const FemMatrices& fem, const Vec& g) {
  return NeumannExtension(fem).extend(g);
}

}  // namespace fracwave
