#include "cocyclem/cocycle.hpp"

#include <cmath>
#include <string>

#include "cocyclem/angle.hpp"
#include "cocyclem/errors.hpp"
#include "cocyclem/graph_potential.hpp"

namespace cocyclem {

DiscreteCocycle::DiscreteCocycle(SimplicialComplex2 complex, std::vector<double> theta)
    : complex_(std::move(complex)), theta_(std::move(theta)) {
  if (theta_.size() != complex_.edges().size()) throw ValidationError("cocycle needs one angle per edge");
  for (auto& t : theta_) {
    if (!std::isfinite(t)) throw ValidationError("cocycle angles must be finite");
    t = wrap_signed(t);
  }
}

double DiscreteCocycle::theta(std::size_t i, std::size_t j) const {
  const auto e = complex_.edge_index(i, j);
  if (!e) throw ValidationError("no edge (" + std::to_string(i) + "," + std::to_string(j) + ") in the complex");
  return i < j ? theta_[*e] : wrap_signed(-theta_[*e]);
}

DiscreteCocycle extract_cocycle(const PairwiseComparisons& d, const SimplicialComplex2& k) {
  if (k.vertex_count() > d.size()) throw ValidationError("complex has vertices without pairwise comparisons");
  std::vector<double> theta;
  theta.reserve(k.edges().size());
  for (const auto& [i, j] : k.edges()) theta.push_back(d.rotation(i, j).signed_angle());
  return DiscreteCocycle(k, std::move(theta));
}

ResidualReport residuals(const DiscreteCocycle& z) {
  const auto& k = z.complex();
  ResidualReport r;
  r.delta_i.assign(k.vertex_count(), 0.0);
  r.per_triangle.reserve(k.triangles().size());
  for (std::size_t t = 0; t < k.triangles().size(); ++t) {
    const auto [ij, jk, ik] = k.triangle_edges(t);
    const double s = wrap_signed(z.theta()[ij] + z.theta()[jk] - z.theta()[ik]);
    r.per_triangle.push_back(s);
    const double sq = s * s;
    r.delta += sq;
    for (auto v : k.triangles()[t]) r.delta_i[v] += sq;
  }
  if (r.delta > 0.0) {
    std::vector<double> rho(k.vertex_count());
    for (std::size_t v = 0; v < rho.size(); ++v) rho[v] = r.delta_i[v] / (3.0 * r.delta);
    r.rho_i = std::move(rho);
  }
  return r;
}

DiscreteCocycle apply_coboundary(const DiscreteCocycle& z, std::span<const double> phi) {
  const auto& k = z.complex();
  if (phi.size() != k.vertex_count()) throw ValidationError("phi needs one angle per vertex");
  std::vector<double> theta(k.edges().size());
  for (std::size_t e = 0; e < theta.size(); ++e) {
    const auto [i, j] = k.edges()[e];
    theta[e] = wrap_signed(z.theta()[e] + phi[i] - phi[j]);
  }
  return DiscreteCocycle(k, std::move(theta));
}

CoboundaryTest is_coboundary(const DiscreteCocycle& z, double tol) {
  const auto& k = z.complex();
  PotentialResult p = solve_potential(k.vertex_count(), k.edges(), z.theta(), PotentialGroup::Circle, tol);
  return {p.consistent, std::move(p.potential), std::move(p.witness), p.max_violation};
}

double coboundary_residual(const DiscreteCocycle& z, std::span<const double> phi) {
  const auto& k = z.complex();
  if (phi.size() != k.vertex_count()) throw ValidationError("phi needs one angle per vertex");
  double total = 0.0;
  for (std::size_t e = 0; e < k.edges().size(); ++e) {
    const auto [i, j] = k.edges()[e];
    const double r = wrap_signed(z.theta()[e] - (phi[i] - phi[j]));
    total += r * r;
  }
  return total;
}

const char* to_string(SyncMethod m) { return m == SyncMethod::Spectral ? "spectral" : "spanning-tree"; }

}  // namespace cocyclem
