#pragma once

#include <Eigen/SparseCholesky>

#include "fracwave/mesh.hpp"
#include "fracwave/types.hpp"

namespace fracwave {

// P1 Lagrange matrices on a mesh.
//   M : mass, SPD
//   K : stiffness, symmetric PSD with constants in the kernel
//   B : boundary mass (trace pairing); rows/cols supported on boundary DOFs.
//       In 1D the boundary is two points and B is the identity there.
struct FemMatrices {
  SpMat M, K, B;
  std::vector<int> boundary_nodes;

  int n_dofs() const { return static_cast<int>(M.rows()); }
  int n_boundary() const { return static_cast<int>(boundary_nodes.size()); }
};

FemMatrices assemble(const SpaceMesh& mesh);

// Mass matrix weighted by the P1 interpolant of the nodal field w,
// integrated exactly per element.
SpMat assemble_weighted(const SpaceMesh& mesh, const Vec& w);

// Dense boundary-restricted B (n_boundary x n_boundary), ordered like
// mesh.boundary_nodes.  This is the Gram matrix of the boundary pairing.
Mat boundary_mass_dense(const FemMatrices& fem);

// Scatter a boundary-node vector into a global vector (zeros elsewhere).
Vec scatter_boundary(const Vec& values, const FemMatrices& fem);

// Harmonic-type lifting of Neumann data: solves (K + M) G = B g, the
// discrete form of  -lap(G) + G = 0,  dG/dn = g.  The factorization is
// reused across calls, so time slices can be lifted one by one.
class NeumannExtension {
 public:
  explicit NeumannExtension(const FemMatrices& fem);

  // g given on boundary nodes, ordered like fem.boundary_nodes.
  Vec extend(const Vec& g) const;

 private:
  const FemMatrices& fem_;
  Eigen::SimplicialLDLT<SpMat> solver_;
};

// One-shot convenience wrapper.
Vec neumann_extension(const FemMatrices& fem, const Vec& g);

}  // namespace fracwave
