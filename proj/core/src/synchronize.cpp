#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "cocyclem/angle.hpp"
#include "cocyclem/cocycle.hpp"
#include "cocyclem/errors.hpp"
#include "cocyclem/graph_potential.hpp"

namespace cocyclem {
namespace {

using cplx = std::complex<double>;

struct Neighbour {
  std::size_t local;
  cplx weight;
};

// Principal eigenvector of H + shift*I restricted to one component, where
// H_ij = exp(i theta_ij) so that H v = lambda v for v_i = exp(i phi_i).
std::vector<double> spectral_phases(const std::vector<std::vector<Neighbour>>& adj, const SyncOptions& opts,
                                    std::size_t& iterations) {
  const std::size_t m = adj.size();
  if (m == 1) return {0.0};

  std::vector<double> scale(m, 1.0);
  double shift = 0.0;
  for (std::size_t u = 0; u < m; ++u) shift = std::max(shift, static_cast<double>(adj[u].size()));
  if (opts.degree_normalized) {
    for (std::size_t u = 0; u < m; ++u) scale[u] = 1.0 / std::sqrt(static_cast<double>(adj[u].size()));
    shift = 1.0;
  }

  std::mt19937_64 rng(0x5eedULL + m);
  std::normal_distribution<double> normal;
  std::vector<cplx> x(m), y(m);
  for (auto& v : x) v = {normal(rng), normal(rng)};

  auto normalize = [](std::vector<cplx>& v) {
    double n = 0.0;
    for (const auto& c : v) n += std::norm(c);
    n = std::sqrt(n);
    for (auto& c : v) c /= n;
  };
  normalize(x);

  double last_change = 0.0, prev_change = 0.0;
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    for (std::size_t u = 0; u < m; ++u) {
      cplx acc = shift * x[u];
      for (const auto& nb : adj[u]) acc += scale[u] * scale[nb.local] * nb.weight * x[nb.local];
      y[u] = acc;
    }
    normalize(y);
    cplx overlap = 0.0;
    for (std::size_t u = 0; u < m; ++u) overlap += std::conj(x[u]) * y[u];
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0);
    double change = 0.0;
    for (std::size_t u = 0; u < m; ++u) change += std::norm(y[u] - phase * x[u]);
    change = std::sqrt(change);
    std::swap(x, y);
    prev_change = last_change;
    last_change = change;
    if (change < opts.tolerance) {
      iterations = it;
      std::vector<double> phases(m);
      for (std::size_t u = 0; u < m; ++u) phases[u] = std::arg(x[u]);
      return phases;
    }
  }
  std::ostringstream msg;
  msg << "spectral synchronization did not converge after " << opts.max_iterations
      << " iterations; last step change " << last_change << ", estimated eigenvalue ratio "
      << (prev_change > 0.0 ? last_change / prev_change : 1.0) << " (spectral gap too small)";
  throw NumericError(msg.str());
}

}  // namespace

Synchronization synchronize(const DiscreteCocycle& z, const SyncOptions& opts) {
  const auto& k = z.complex();
  const std::size_t n = k.vertex_count();
  Synchronization out;
  out.method = opts.method;

  if (opts.method == SyncMethod::SpanningTree) {
    out.phi = solve_potential(n, k.edges(), z.theta(), PotentialGroup::Circle, INFINITY).potential;
    out.residual_after = coboundary_residual(z, out.phi);
    return out;
  }

  const auto label = connected_components(n, k.edges());
  const std::size_t components = n == 0 ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::vector<std::size_t>> members(components);
  std::vector<std::size_t> local(n);
  for (std::size_t v = 0; v < n; ++v) {
    local[v] = members[label[v]].size();
    members[label[v]].push_back(v);
  }
  std::vector<std::vector<std::vector<Neighbour>>> adj(components);
  for (std::size_t c = 0; c < components; ++c) adj[c].resize(members[c].size());
  for (std::size_t e = 0; e < k.edges().size(); ++e) {
    const auto [i, j] = k.edges()[e];
    const cplx w = std::polar(1.0, z.theta()[e]);
    adj[label[i]][local[i]].push_back({local[j], w});
    adj[label[j]][local[j]].push_back({local[i], std::conj(w)});
  }

  out.phi.assign(n, 0.0);
  for (std::size_t c = 0; c < components; ++c) {
    std::size_t iters = 0;
    const auto phases = spectral_phases(adj[c], opts, iters);
    out.iterations = std::max(out.iterations, iters);
    // Gauge: members[c][0] is the smallest vertex of the component.
    for (std::size_t u = 0; u < phases.size(); ++u) out.phi[members[c][u]] = wrap_signed(phases[u] - phases[0]);
  }
  out.residual_after = coboundary_residual(z, out.phi);
  return out;
}

}  // namespace cocyclem
