#include "cocyclem/bundle.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "cocyclem/angle.hpp"
#include "cocyclem/errors.hpp"

namespace cocyclem {
namespace {

constexpr double kContinuityBudget = kPi / 2.0;

// Samples of a lifted path resampled at `steps` + 1 evenly spaced points.
std::vector<double> resample_lift(std::span<const double> lifted, std::size_t steps) {
  const std::size_t knots = lifted.size() - 1;
  std::vector<double> out(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    if (k == steps) {
      out[k] = lifted.back();
      continue;
    }
    const double pos = static_cast<double>(k) * static_cast<double>(knots) / static_cast<double>(steps);
    const auto lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    out[k] = lo + 1 <= knots ? lifted[lo] + frac * (lifted[lo + 1] - lifted[lo]) : lifted[lo];
  }
  return out;
}

std::vector<double> wrapped(std::vector<double> v) {
  for (auto& x : v) x = wrap_signed(x);
  return v;
}

}  // namespace

std::vector<double> lift_path(std::span<const double> path) {
  std::vector<double> out;
  if (path.empty()) return out;
  out.reserve(path.size());
  out.push_back(wrap_signed(path[0]));
  for (std::size_t k = 1; k < path.size(); ++k) out.push_back(out.back() + wrap_signed(path[k] - path[k - 1]));
  return out;
}

ContinuousCocycle::ContinuousCocycle(SimplicialComplex2 complex, std::vector<double> anchors,
                                     std::vector<TrianglePaths> paths, double cocycle_tol)
    : complex_(std::move(complex)), anchors_(std::move(anchors)), paths_(std::move(paths)), cocycle_tol_(cocycle_tol) {
  if (anchors_.size() != complex_.edges().size()) throw ValidationError("continuous cocycle needs one anchor per edge");
  if (paths_.size() != complex_.triangles().size()) {
    throw ValidationError("continuous cocycle needs three paths per triangle");
  }
  for (auto& a : anchors_) {
    if (!std::isfinite(a)) throw ValidationError("anchor angles must be finite");
    a = wrap_signed(a);
  }
  steps_ = paths_.empty() ? 0 : paths_.front()[0].size() - 1;
  if (!paths_.empty() && paths_.front()[0].empty()) throw ValidationError("paths need at least one sample");

  for (std::size_t t = 0; t < paths_.size(); ++t) {
    const auto edges = complex_.triangle_edges(t);
    for (std::size_t slot = 0; slot < 3; ++slot) {
      auto& path = paths_[t][slot];
      if (path.size() != steps_ + 1) throw ValidationError("all paths must share one sample count");
      for (auto& x : path) {
        if (!std::isfinite(x)) throw ValidationError("path samples must be finite");
        x = wrap_signed(x);
      }
      if (std::abs(wrap_signed(path[0] - anchors_[edges[slot]])) > 1e-12) {
        throw ValidationError("path must start at its edge anchor");
      }
      for (std::size_t k = 1; k < path.size(); ++k) {
        if (std::abs(wrap_signed(path[k] - path[k - 1])) >= kContinuityBudget) {
          std::ostringstream msg;
          msg << "path on triangle " << t << " jumps by more than pi/2 between samples " << k - 1 << " and " << k
              << "; resample with more steps";
          throw NumericError(msg.str());
        }
      }
    }
    const double bary = wrap_signed(paths_[t][0].back() + paths_[t][1].back() - paths_[t][2].back());
    if (std::abs(bary) > cocycle_tol_) {
      std::ostringstream msg;
      msg << "cocycle condition fails at the barycenter of triangle " << t << " (residual " << bary << " rad)";
      throw NumericError(msg.str());
    }
  }
}

ContinuousCocycle ContinuousCocycle::refined(std::size_t factor) const {
  if (factor == 0) throw ValidationError("refinement factor must be positive");
  std::vector<TrianglePaths> paths = paths_;
  for (auto& tri : paths) {
    for (auto& path : tri) path = wrapped(resample_lift(lift_path(path), steps_ * factor));
  }
  return ContinuousCocycle(complex_, anchors_, std::move(paths), cocycle_tol_);
}

ContinuousCocycle ContinuousCocycle::with_coboundary(std::span<const double> phi) const {
  if (phi.size() != complex_.vertex_count()) throw ValidationError("phi needs one angle per vertex");
  auto delta = [&](std::size_t e) { return phi[complex_.edges()[e][0]] - phi[complex_.edges()[e][1]]; };
  std::vector<double> anchors(anchors_.size());
  for (std::size_t e = 0; e < anchors.size(); ++e) anchors[e] = wrap_signed(anchors_[e] + delta(e));
  std::vector<TrianglePaths> paths = paths_;
  for (std::size_t t = 0; t < paths.size(); ++t) {
    const auto edges = complex_.triangle_edges(t);
    for (std::size_t slot = 0; slot < 3; ++slot) {
      for (auto& x : paths[t][slot]) x = wrap_signed(x + delta(edges[slot]));
    }
  }
  return ContinuousCocycle(complex_, std::move(anchors), std::move(paths), cocycle_tol_);
}

EulerCochain euler_cochain(const ContinuousCocycle& z, double guard) {
  EulerCochain out;
  out.c.reserve(z.paths().size());
  for (std::size_t t = 0; t < z.paths().size(); ++t) {
    const auto& tri = z.paths()[t];
    const double sum = lift_path(tri[0]).back() + lift_path(tri[1]).back() - lift_path(tri[2]).back();
    const double turns = sum / kTwoPi;
    const double rounded = std::nearbyint(turns);
    if (std::abs(turns - rounded) > guard) {
      std::ostringstream msg;
      msg << "non-integer angle defect " << turns << " on triangle " << t
          << " (cocycle condition violated along the paths, or paths undersampled)";
      throw NumericError(msg.str());
    }
    out.c.push_back(static_cast<std::int64_t>(rounded));
  }
  return out;
}

EulerVector euler_vector(const ContinuousCocycle& z, const HomologyProfile& h, double guard) {
  const EulerCochain c = euler_cochain(z, guard);
  EulerVector m;
  m.reserve(h.h2_generators.size());
  for (const auto& gen : h.h2_generators) {
    if (gen.size() != c.c.size()) throw ValidationError("H2 generator does not match the cocycle's complex");
    std::int64_t total = 0;
    for (std::size_t t = 0; t < gen.size(); ++t) total += gen[t] * c.c[t];
    m.push_back(total);
  }
  return m;
}

ContinuousCocycle make_bundle(const SimplicialComplex2& k, const HomologyProfile& h, std::span<const std::int64_t> m,
                              std::size_t steps) {
  if (m.size() != h.h2_generators.size()) {
    throw ValidationError("need one winding number per H2 generator (b2 = " + std::to_string(h.h2_generators.size()) +
                          ")");
  }
  if (steps == 0) throw ValidationError("paths need at least one step");
  const std::size_t n_tri = k.triangles().size();
  for (const auto& gen : h.h2_generators) {
    if (gen.size() != n_tri) throw ValidationError("H2 generator does not match the complex");
  }

  std::vector<ContinuousCocycle::TrianglePaths> paths(n_tri);
  for (auto& tri : paths) tri.fill(std::vector<double>(steps + 1, 0.0));

  for (std::size_t s = 0; s < m.size(); ++s) {
    if (m[s] == 0) continue;
    const auto& gen = h.h2_generators[s];
    std::size_t pivot = n_tri;
    for (std::size_t t = 0; t < n_tri && pivot == n_tri; ++t) {
      if (std::llabs(gen[t]) != 1) continue;
      bool shared = false;
      for (std::size_t r = 0; r < m.size(); ++r) shared = shared || (r != s && h.h2_generators[r][t] != 0);
      if (!shared) pivot = t;
    }
    if (pivot == n_tri) {
      throw ValidationError("H2 generator " + std::to_string(s) +
                            " has no +-1 triangle outside the other generators; cannot place the winding");
    }
    const std::int64_t turns = m[s] * gen[pivot];
    if (4 * std::llabs(turns) >= static_cast<long long>(steps)) {
      throw ValidationError("winding " + std::to_string(turns) + " needs more than " + std::to_string(steps) +
                            " steps per path (at least 4|m|+1)");
    }
    auto& path = paths[pivot][0];
    for (std::size_t q = 0; q <= steps; ++q) {
      const double u = static_cast<double>(q) / static_cast<double>(steps);
      path[q] = wrap_signed(kTwoPi * static_cast<double>(turns) * u);
    }
  }
  return ContinuousCocycle(k, std::vector<double>(k.edges().size(), 0.0), std::move(paths));
}

bool is_flat(const ContinuousCocycle& z, double tol) {
  for (const auto& tri : z.paths()) {
    for (const auto& path : tri) {
      for (double x : path) {
        if (std::abs(wrap_signed(x - path.front())) > tol) return false;
      }
    }
  }
  return true;
}

ContinuousCocycle from_radial_alignments(const SimplicialComplex2& k, std::span<const RadialAlignment> radial,
                                         std::size_t steps, double cocycle_tol) {
  if (radial.size() != k.edges().size()) throw ValidationError("need radial alignment data for every edge");
  const std::size_t n_r = radial.empty() ? 1 : radial.front().per_ring.size();
  if (steps == 0) steps = 4 * n_r;

  std::vector<std::vector<double>> edge_paths(k.edges().size());
  for (std::size_t e = 0; e < radial.size(); ++e) {
    const auto& h = radial[e].per_ring;
    if (h.size() != n_r) throw ValidationError("radial alignments must share one ring count");
    // r = infinity (identity), then rings outermost to innermost.
    std::vector<double> knots;
    knots.reserve(n_r + 1);
    knots.push_back(0.0);
    for (std::size_t p = n_r; p-- > 0;) knots.push_back(h[p].signed_angle());
    edge_paths[e] = wrapped(resample_lift(lift_path(knots), steps));
  }

  std::vector<ContinuousCocycle::TrianglePaths> paths(k.triangles().size());
  for (std::size_t t = 0; t < paths.size(); ++t) {
    const auto edges = k.triangle_edges(t);
    for (std::size_t slot = 0; slot < 3; ++slot) paths[t][slot] = edge_paths[edges[slot]];
  }
  return ContinuousCocycle(k, std::vector<double>(k.edges().size(), 0.0), std::move(paths), cocycle_tol);
}

}  // namespace cocyclem
