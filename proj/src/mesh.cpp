#include "fracwave/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace fracwave {

namespace {

void finalize_interval(SpaceMesh& m) {
  const int n = m.n_nodes();
  m.dim = 1;
  m.boundary_nodes = {0, n - 1};
  m.h = 0.0;
  for (int e = 0; e < m.n_elements(); ++e) {
    const double he =
        m.nodes(m.elements(e, 1), 0) - m.nodes(m.elements(e, 0), 0);
    if (!(he > 0.0))
      throw PreconditionError("SpaceMesh: degenerate interval element");
    m.h = std::max(m.h, he);
  }
}

// Edges referenced by exactly one triangle form the boundary.
void detect_boundary_2d(SpaceMesh& m) {
  std::map<std::pair<int, int>, int> count;
  auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  for (int e = 0; e < m.n_elements(); ++e) {
    int v[3] = {m.elements(e, 0), m.elements(e, 1), m.elements(e, 2)};
    for (int s = 0; s < 3; ++s) ++count[key(v[s], v[(s + 1) % 3])];
  }
  std::vector<std::pair<int, int>> facets;
  for (const auto& [k, c] : count)
    if (c == 1) facets.push_back(k);
  m.boundary_facets.resize(static_cast<int>(facets.size()), 2);
  std::vector<int> bn;
  for (int i = 0; i < static_cast<int>(facets.size()); ++i) {
    m.boundary_facets(i, 0) = facets[i].first;
    m.boundary_facets(i, 1) = facets[i].second;
    bn.push_back(facets[i].first);
    bn.push_back(facets[i].second);
  }
  std::sort(bn.begin(), bn.end());
  bn.erase(std::unique(bn.begin(), bn.end()), bn.end());
  m.boundary_nodes = bn;
}

}  // namespace

SpaceMesh SpaceMesh::interval(double a, double b, int n_elements) {
  if (!(b > a)) throw PreconditionError("SpaceMesh::interval: need b > a");
  if (n_elements < 1)
    throw PreconditionError("SpaceMesh::interval: need at least one element");
  Vec xs(n_elements + 1);
  for (int i = 0; i <= n_elements; ++i)
    xs[i] = a + (b - a) * i / n_elements;
  return interval_from_nodes(xs);
}

SpaceMesh SpaceMesh::interval_from_nodes(const Vec& xs) {
  const int n = static_cast<int>(xs.size());
  if (n < 2)
    throw PreconditionError("SpaceMesh::interval_from_nodes: need >= 2 nodes");
  SpaceMesh m;
  m.nodes.resize(n, 1);
  m.nodes.col(0) = xs;
  m.elements.resize(n - 1, 2);
  for (int e = 0; e < n - 1; ++e) {
    m.elements(e, 0) = e;
    m.elements(e, 1) = e + 1;
  }
  finalize_interval(m);
  return m;
}

SpaceMesh SpaceMesh::rectangle(double ax, double bx, double ay, double by,
                               int nx, int ny) {
  if (!(bx > ax && by > ay))
    throw PreconditionError("SpaceMesh::rectangle: empty box");
  if (nx < 1 || ny < 1)
    throw PreconditionError("SpaceMesh::rectangle: need nx, ny >= 1");
  SpaceMesh m;
  m.dim = 2;
  const int n = (nx + 1) * (ny + 1);
  m.nodes.resize(n, 2);
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      m.nodes(id(i, j), 0) = ax + (bx - ax) * i / nx;
      m.nodes(id(i, j), 1) = ay + (by - ay) * j / ny;
    }
  m.elements.resize(2 * nx * ny, 3);
  int e = 0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int v00 = id(i, j), v10 = id(i + 1, j), v01 = id(i, j + 1),
                v11 = id(i + 1, j + 1);
      m.elements.row(e++) << v00, v10, v11;
      m.elements.row(e++) << v00, v11, v01;
    }
  detect_boundary_2d(m);
  m.h = 0.0;
  for (int t = 0; t < m.n_elements(); ++t)
    for (int s = 0; s < 3; ++s) {
      const int a = m.elements(t, s), b = m.elements(t, (s + 1) % 3);
      m.h = std::max(m.h, (m.nodes.row(a) - m.nodes.row(b)).norm());
    }
  return m;
}

SpaceMesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("read_mesh: cannot open " + path);
  std::string tok;
  int dim = 0, n = 0, ne = 0;
  if (!(in >> tok >> dim) || tok != "dim" || (dim != 1 && dim != 2))
    throw PreconditionError("read_mesh: bad 'dim' header in " + path);
  if (!(in >> tok >> n) || tok != "nodes" || n < 2)
    throw PreconditionError("read_mesh: bad 'nodes' header in " + path);
  SpaceMesh m;
  m.dim = dim;
  m.nodes.resize(n, dim);
  for (int i = 0; i < n; ++i)
    for (int d = 0; d < dim; ++d)
      if (!(in >> m.nodes(i, d)))
        throw PreconditionError("read_mesh: truncated node list in " + path);
  if (!(in >> tok >> ne) || tok != "elements" || ne < 1)
    throw PreconditionError("read_mesh: bad 'elements' header in " + path);
  m.elements.resize(ne, dim + 1);
  for (int e = 0; e < ne; ++e)
    for (int v = 0; v <= dim; ++v) {
      if (!(in >> m.elements(e, v)))
        throw PreconditionError("read_mesh: truncated element list in " + path);
      if (m.elements(e, v) < 0 || m.elements(e, v) >= n)
        throw PreconditionError("read_mesh: element index out of range in " +
                                path);
    }
  if (dim == 1) {
    finalize_interval(m);
  } else {
    detect_boundary_2d(m);
    for (int t = 0; t < m.n_elements(); ++t)
      for (int s = 0; s < 3; ++s) {
        const int a = m.elements(t, s), b = m.elements(t, (s + 1) % 3);
        m.h = std::max(m.h, (m.nodes.row(a) - m.nodes.row(b)).norm());
      }
  }
  return m;
}

void write_mesh(const std::string& path, const SpaceMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("write_mesh: cannot open " + path);
  out << "dim " << mesh.dim << "\n";
  out << "nodes " << mesh.n_nodes() << "\n";
  char buf[64];
  for (int i = 0; i < mesh.n_nodes(); ++i) {
    for (int d = 0; d < mesh.dim; ++d) {
      std::snprintf(buf, sizeof buf, "%.17g", mesh.nodes(i, d));
      out << (d ? " " : "") << buf;
    }
    out << "\n";
  }
  out << "elements " << mesh.n_elements() << "\n";
  for (int e = 0; e < mesh.n_elements(); ++e) {
    for (int v = 0; v <= mesh.dim; ++v)
      out << (v ? " " : "") << mesh.elements(e, v);
    out << "\n";
  }
}

}  // namespace fracwave
