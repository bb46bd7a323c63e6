#include "cocyclem/graph_potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "cocyclem/angle.hpp"
#include "cocyclem/errors.hpp"

namespace cocyclem {
namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Adjacent {
  std::size_t vertex;
  std::size_t edge;
};

std::vector<std::vector<Adjacent>> adjacency(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::vector<Adjacent>> adj(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [i, j] = edges[e];
    if (!(i < j) || j >= n) throw ValidationError("edge must satisfy i < j < n");
    adj[i].push_back({j, e});
    adj[j].push_back({i, e});
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end(), [](const Adjacent& a, const Adjacent& b) { return a.vertex < b.vertex; });
  }
  return adj;
}

}  // namespace

std::vector<std::size_t> canonical_cycle(std::vector<std::size_t> cycle) {
  if (cycle.size() < 2) return cycle;
  auto lead = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), lead, cycle.end());
  if (cycle.size() > 2 && cycle.back() < cycle[1]) std::reverse(cycle.begin() + 1, cycle.end());
  return cycle;
}

std::vector<std::size_t> connected_components(std::size_t n, std::span<const Edge> edges) {
  const auto adj = adjacency(n, edges);
  std::vector<std::size_t> label(n, kNone);
  std::size_t next = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (label[root] != kNone) continue;
    std::queue<std::size_t> frontier;
    frontier.push(root);
    label[root] = next;
    while (!frontier.empty()) {
      const auto u = frontier.front();
      frontier.pop();
      for (const auto& a : adj[u]) {
        if (label[a.vertex] == kNone) {
          label[a.vertex] = next;
          frontier.push(a.vertex);
        }
      }
    }
    ++next;
  }
  return label;
}

PotentialResult solve_potential(std::size_t n, std::span<const Edge> edges, std::span<const double> values,
                                PotentialGroup group, double tol) {
  if (values.size() != edges.size()) throw ValidationError("one value per edge required");
  const auto adj = adjacency(n, edges);
  auto reduce = [group](double x) { return group == PotentialGroup::Circle ? wrap_signed(x) : x; };

  PotentialResult out;
  out.potential.assign(n, 0.0);
  std::vector<std::size_t> parent(n, kNone), depth(n, 0);
  std::vector<char> seen(n, 0), tree_edge(edges.size(), 0);

  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    std::queue<std::size_t> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const auto u = frontier.front();
      frontier.pop();
      for (const auto& a : adj[u]) {
        if (seen[a.vertex]) continue;
        seen[a.vertex] = 1;
        parent[a.vertex] = u;
        depth[a.vertex] = depth[u] + 1;
        tree_edge[a.edge] = 1;
        // values[e] = p_i - p_j for edges[e] = (i, j)
        const double x = values[a.edge];
        out.potential[a.vertex] = reduce(edges[a.edge][0] == u ? out.potential[u] - x : out.potential[u] + x);
        frontier.push(a.vertex);
      }
    }
  }

  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (tree_edge[e]) continue;
    const auto [i, j] = edges[e];
    const double residual = std::abs(reduce(values[e] - (out.potential[i] - out.potential[j])));
    out.max_violation = std::max(out.max_violation, residual);
    if (residual <= tol || !out.consistent) continue;

    out.consistent = false;
    std::vector<std::size_t> up_i{i}, up_j{j};
    std::size_t a = i, b = j;
    while (depth[a] > depth[b]) up_i.push_back(a = parent[a]);
    while (depth[b] > depth[a]) up_j.push_back(b = parent[b]);
    while (a != b) {
      up_i.push_back(a = parent[a]);
      up_j.push_back(b = parent[b]);
    }
    up_j.pop_back();
    std::reverse(up_j.begin(), up_j.end());
    up_i.insert(up_i.end(), up_j.begin(), up_j.end());
    out.witness = canonical_cycle(std::move(up_i));
  }
  return out;
}

}  // namespace cocyclem
