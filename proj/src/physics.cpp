#include "fracwave/physics.hpp"

#include <cmath>

namespace fracwave {

void PhysicsParams::validate(const SpaceMesh& mesh) const {
  if (!(c > 0.0)) throw PreconditionError("PhysicsParams: c must be positive");
  if (!(b >= 0.0 && b <= b_max))
    throw PreconditionError("PhysicsParams: b outside [0, b_max]");
  if (!(T > 0.0)) throw PreconditionError("PhysicsParams: T must be positive");
  if (has_k()) {
    if (k.size() != mesh.n_nodes())
      throw PreconditionError("PhysicsParams: k field size != node count");
    if (k_surrogate_norm(k, mesh) > k_small_bound)
      throw PreconditionError(
          "PhysicsParams: nonlinearity field exceeds the smallness bound");
  }
}

double k_surrogate_norm(const Vec& k, const SpaceMesh& mesh) {
  if (k.size() == 0) return 0.0;
  if (k.size() != mesh.n_nodes())
    throw PreconditionError("k_surrogate_norm: field size != node count");
  double norm = k.cwiseAbs().maxCoeff();
  for (int e = 0; e < mesh.n_elements(); ++e) {
    if (mesh.dim == 1) {
      const int a = mesh.elements(e, 0), b = mesh.elements(e, 1);
      const double he = mesh.nodes(b, 0) - mesh.nodes(a, 0);
      norm = std::max(norm, std::abs(k[b] - k[a]) / he);
    } else {
      for (int s = 0; s < 3; ++s) {
        const int a = mesh.elements(e, s), b = mesh.elements(e, (s + 1) % 3);
        const double len = (mesh.nodes.row(a) - mesh.nodes.row(b)).norm();
        norm = std::max(norm, std::abs(k[b] - k[a]) / len);
      }
    }
  }
  return norm;
}

double attenuation_scale(double b, double c, double L, double alpha) {
  if (!(c > 0.0 && L > 0.0))
    throw PreconditionError("attenuation_scale: need c > 0 and L > 0");
  return b / (c * c) * std::pow(L / c, -alpha);
}

PhysicsParams nondimensionalize(const PhysicsParams& p, double L,
                                double p_ref) {
  if (!(L > 0.0 && p_ref > 0.0))
    throw PreconditionError("nondimensionalize: need L > 0 and p_ref > 0");
  PhysicsParams out = p;
  out.c = 1.0;
  out.b = attenuation_scale(p.b, p.c, L, p.alpha.value);
  out.T = p.T * p.c / L;
  if (p.has_k()) out.k = p.k * p_ref;
  return out;
}

PhysicsParams redimensionalize(const PhysicsParams& p, double L, double p_ref,
                               double c_original) {
  if (!(L > 0.0 && p_ref > 0.0 && c_original > 0.0))
    throw PreconditionError("redimensionalize: scales must be positive");
  PhysicsParams out = p;
  out.c = c_original;
  out.b = p.b * c_original * c_original *
          std::pow(L / c_original, p.alpha.value);
  out.T = p.T * L / c_original;
  if (p.has_k()) out.k = p.k / p_ref;
  return out;
}

}  // namespace fracwave
