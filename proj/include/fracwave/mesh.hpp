#pragma once

#include <string>
#include <vector>

#include "fracwave/errors.hpp"
#include "fracwave/types.hpp"

namespace fracwave {

// Conforming P1 mesh: intervals in 1D, triangles in 2D.
struct SpaceMesh {
  int dim = 1;
  Mat nodes;                        // n_nodes x dim
  Eigen::MatrixXi elements;         // n_elements x (dim + 1)
  Eigen::MatrixXi boundary_facets;  // 2D only: n_facets x 2 edge node pairs
  std::vector<int> boundary_nodes;  // sorted global indices
  double h = 0.0;                   // max element diameter

  int n_nodes() const { return static_cast<int>(nodes.rows()); }
  int n_elements() const { return static_cast<int>(elements.rows()); }
  int n_boundary() const { return static_cast<int>(boundary_nodes.size()); }

  // Uniform partition of [a, b] into n_elements segments.
  static SpaceMesh interval(double a, double b, int n_elements);

  // Interval mesh with explicit (strictly increasing) node coordinates.
  static SpaceMesh interval_from_nodes(const Vec& xs);

  // Tensor rectangle [ax,bx] x [ay,by], each cell split into two triangles.
  static SpaceMesh rectangle(double ax, double bx, double ay, double by,
                             int nx, int ny);
};

// Plain-text mesh listing:
//   dim <d>
//   nodes <n>     followed by n coordinate lines
//   elements <m>  followed by m connectivity lines (0-based)
// Boundary entities are detected from the connectivity.
SpaceMesh read_mesh(const std::string& path);
void write_mesh(const std::string& path, const SpaceMesh& mesh);

}  // namespace fracwave
