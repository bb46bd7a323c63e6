#include "cocyclem/figures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cocyclem/errors.hpp"
#include "cocyclem/graph_potential.hpp"

namespace cocyclem {

PositiveCochain::PositiveCochain(std::size_t n, std::vector<Entry> entries) : n_(n), entries_(std::move(entries)) {
  for (auto& e : entries_) {
    if (!(e.g > 0.0) || !std::isfinite(e.g)) throw ValidationError("cross ratios must be positive and finite");
    if (e.i == e.j) throw ValidationError("cochain entries need two distinct pieces");
    if (e.i > e.j) {
      std::swap(e.i, e.j);
      e.g = 1.0 / e.g;
    }
    if (e.j >= n_) throw ValidationError("piece index " + std::to_string(e.j) + " out of range");
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  for (std::size_t k = 1; k < entries_.size(); ++k) {
    if (entries_[k].i == entries_[k - 1].i && entries_[k].j == entries_[k - 1].j) {
      throw ValidationError("duplicate cochain entry");
    }
  }
}

double PositiveCochain::value(std::size_t i, std::size_t j) const {
  if (i == j) return 1.0;
  const bool flip = i > j;
  if (flip) std::swap(i, j);
  for (const auto& e : entries_) {
    if (e.i == i && e.j == j) return flip ? 1.0 / e.g : e.g;
  }
  throw ValidationError("pair (" + std::to_string(i) + "," + std::to_string(j) + ") not in cochain");
}

PositiveCochain from_distances(std::size_t n, std::span<const EndDistances> d) {
  std::vector<PositiveCochain::Entry> entries;
  entries.reserve(d.size());
  for (const auto& x : d) {
    if (!(x.d_ij > 0.0) || !(x.d_ji > 0.0)) throw ValidationError("distances must be positive");
    entries.push_back({x.i, x.j, x.d_ij / x.d_ji});
  }
  return PositiveCochain(n, std::move(entries));
}

PositiveCochain rescale(const PositiveCochain& g, std::span<const double> s) {
  if (s.size() != g.size()) throw ValidationError("need one scale per piece");
  for (double x : s) {
    if (!(x > 0.0)) throw ValidationError("scales must be positive");
  }
  auto entries = g.entries();
  for (auto& e : entries) e.g = e.g * s[e.j] / s[e.i];
  return PositiveCochain(g.size(), std::move(entries));
}

PositiveCoboundaryTest is_coboundary_positive(const PositiveCochain& g, double tol) {
  std::vector<Edge> edges;
  std::vector<double> logs;
  for (const auto& e : g.entries()) {
    edges.push_back({e.i, e.j});
    logs.push_back(std::log(e.g));
  }
  PotentialResult p = solve_potential(g.size(), edges, logs, PotentialGroup::Real, tol);
  PositiveCoboundaryTest out;
  out.is_coboundary = p.consistent;
  out.s.reserve(p.potential.size());
  for (double l : p.potential) out.s.push_back(std::exp(l));
  out.witness = std::move(p.witness);
  out.max_log_violation = p.max_violation;
  return out;
}

std::vector<EndDistances> tribar_distances() {
  // Bars 0-1 and 0-2 meet; the ends of bars 1 and 2 only overlap in the
  // picture and sit at different depths.
  return {{0, 1, 1.0, 1.0}, {0, 2, 1.3, 1.3}, {1, 2, 1.6, 1.1}};
}

std::vector<EndDistances> escher_brick_distances() {
  return {{0, 1, 1.0, 1.0}, {1, 2, 1.2, 1.2}, {2, 3, 0.9, 0.9}, {0, 3, 1.4, 0.8}};
}

}  // namespace cocyclem
