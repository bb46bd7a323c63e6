#include "cocyclem/align.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "cocyclem/errors.hpp"

namespace cocyclem {
namespace {

void require_same_grid(const PolarImage& a, const PolarImage& b) {
  if (!(a.grid() == b.grid())) throw ValidationError("images are sampled on different polar grids");
}

std::size_t source_index(long q, long shift, long n) { return static_cast<std::size_t>(((q - shift) % n + n) % n); }

double ring_weight(const PolarGrid& g, std::size_t p) {
  return g.radius(p) * g.ring_spacing() * (kTwoPi / static_cast<double>(g.n_theta));
}

long circular_distance(long a, long b, long n) {
  const long d = ((a - b) % n + n) % n;
  return std::min(d, n - d);
}

AlignmentResult align_oriented(const PolarImage& psi_i, const PolarImage& psi_j, const AlignOptions& opts) {
  const PolarGrid& grid = psi_i.grid();
  const long n = static_cast<long>(grid.n_theta);
  const std::vector<double> corr = correlation_profile(psi_i, psi_j);

  long best = 0;
  if (!(psi_i == psi_j)) {
    for (long s = 1; s < n; ++s) {
      if (corr[static_cast<std::size_t>(s)] > corr[static_cast<std::size_t>(best)]) best = s;
    }
  }
  double runner_up = -INFINITY;
  for (long s = 0; s < n; ++s) {
    if (circular_distance(s, best, n) >= 2) runner_up = std::max(runner_up, corr[static_cast<std::size_t>(s)]);
  }

  AlignmentResult r;
  r.shift = best;
  r.g = Rotation::from_grid(best, n);
  r.distance = std::sqrt(alignment_objective(psi_i, psi_j, best));
  const double scale = 0.5 * (weighted_norm_sq(psi_i) + weighted_norm_sq(psi_j));
  r.ambiguity_gap = scale > 0.0 ? std::max(0.0, (corr[static_cast<std::size_t>(best)] - runner_up) / scale) : 0.0;
  r.ambiguous = r.ambiguity_gap < opts.tie_tolerance;

  if (opts.refine) {
    const double cm = corr[source_index(best, 1, n)];
    const double c0 = corr[static_cast<std::size_t>(best)];
    const double cp = corr[source_index(best, -1, n)];
    const double denom = cm - 2.0 * c0 + cp;
    if (denom < 0.0) {
      const double offset = 0.5 * (cm - cp) / denom;
      if (std::abs(offset) <= 0.5) {
        r.g = Rotation(kTwoPi * (static_cast<double>(best) + offset) / static_cast<double>(n));
      }
    }
  }
  return r;
}

}  // namespace

double weighted_norm_sq(const PolarImage& psi) {
  const PolarGrid& g = psi.grid();
  double total = 0.0;
  for (std::size_t p = 0; p < g.n_r; ++p) {
    double ring = 0.0;
    for (std::size_t q = 0; q < g.n_theta; ++q) ring += psi.at(p, q) * psi.at(p, q);
    total += ring_weight(g, p) * ring;
  }
  return total;
}

double ring_objective(const PolarImage& psi_i, const PolarImage& psi_j, std::size_t ring, long shift) {
  require_same_grid(psi_i, psi_j);
  const PolarGrid& g = psi_i.grid();
  if (ring >= g.n_r) throw ValidationError("ring index out of range");
  const long n = static_cast<long>(g.n_theta);
  double sum = 0.0;
  for (long q = 0; q < n; ++q) {
    const double d = psi_i.at(ring, source_index(q, shift, n)) - psi_j.at(ring, static_cast<std::size_t>(q));
    sum += d * d;
  }
  return sum * (kTwoPi / static_cast<double>(n));
}

double alignment_objective(const PolarImage& psi_i, const PolarImage& psi_j, long shift) {
  require_same_grid(psi_i, psi_j);
  const PolarGrid& g = psi_i.grid();
  double total = 0.0;
  for (std::size_t p = 0; p < g.n_r; ++p) total += g.radius(p) * g.ring_spacing() * ring_objective(psi_i, psi_j, p, shift);
  return total;
}

std::vector<double> correlation_profile(const PolarImage& psi_i, const PolarImage& psi_j) {
  require_same_grid(psi_i, psi_j);
  const PolarGrid& g = psi_i.grid();
  const long n = static_cast<long>(g.n_theta);
  std::vector<double> corr(g.n_theta, 0.0);
  for (long s = 0; s < n; ++s) {
    double total = 0.0;
    for (std::size_t p = 0; p < g.n_r; ++p) {
      double ring = 0.0;
      for (long q = 0; q < n; ++q) ring += psi_i.at(p, source_index(q, s, n)) * psi_j.at(p, static_cast<std::size_t>(q));
      total += ring_weight(g, p) * ring;
    }
    corr[static_cast<std::size_t>(s)] = total;
  }
  return corr;
}

AlignmentResult distance_and_align(const PolarImage& psi_i, const PolarImage& psi_j, const AlignOptions& opts) {
  require_same_grid(psi_i, psi_j);
  // Evaluate in a canonical argument order so that (i, j) and (j, i) share
  // every floating-point operation.
  if (std::lexicographical_compare(psi_j.samples().begin(), psi_j.samples().end(), psi_i.samples().begin(),
                                   psi_i.samples().end())) {
    AlignmentResult r = align_oriented(psi_j, psi_i, opts);
    const long n = static_cast<long>(psi_i.grid().n_theta);
    r.shift = (n - r.shift) % n;
    r.g = r.g.inverse();
    return r;
  }
  return align_oriented(psi_i, psi_j, opts);
}

RadialAlignment radial_align(const PolarImage& psi_i, const PolarImage& psi_j, double energy_floor) {
  require_same_grid(psi_i, psi_j);
  const PolarGrid& g = psi_i.grid();
  const long n = static_cast<long>(g.n_theta);

  double mean_sq = 0.0;
  for (std::size_t k = 0; k < psi_i.samples().size(); ++k) {
    mean_sq += psi_i.samples()[k] * psi_i.samples()[k] + psi_j.samples()[k] * psi_j.samples()[k];
  }
  mean_sq /= static_cast<double>(2 * psi_i.samples().size());
  const double floor = energy_floor * mean_sq;

  // Alignment information of a ring lives in its angular variation, so the
  // energy test uses the mean-removed power.
  auto ring_energy = [&](const PolarImage& im, std::size_t p) {
    double mean = 0.0;
    for (long q = 0; q < n; ++q) mean += im.at(p, static_cast<std::size_t>(q));
    mean /= static_cast<double>(n);
    double e = 0.0;
    for (long q = 0; q < n; ++q) {
      const double d = im.at(p, static_cast<std::size_t>(q)) - mean;
      e += d * d;
    }
    return e / static_cast<double>(n);
  };

  auto energetic = [floor](double e) { return e > 0.0 && e >= floor; };

  RadialAlignment out;
  out.per_ring.assign(g.n_r, Rotation::identity());
  out.valid.assign(g.n_r, false);
  std::vector<char> quiet(g.n_r, 0);
  for (std::size_t p = 0; p < g.n_r; ++p) {
    const bool live_i = energetic(ring_energy(psi_i, p));
    const bool live_j = energetic(ring_energy(psi_j, p));
    out.valid[p] = live_i && live_j;
    quiet[p] = !live_i && !live_j;
  }
  out.r_index = g.n_r;
  while (out.r_index > 0 && quiet[out.r_index - 1]) --out.r_index;

  for (std::size_t p = 0; p < out.r_index; ++p) {
    if (!out.valid[p]) continue;
    long best = 0;
    double best_corr = -INFINITY;
    for (long s = 0; s < n; ++s) {
      double c = 0.0;
      for (long q = 0; q < n; ++q) c += psi_i.at(p, source_index(q, s, n)) * psi_j.at(p, static_cast<std::size_t>(q));
      if (c > best_corr) {
        best_corr = c;
        best = s;
      }
    }
    out.per_ring[p] = Rotation::from_grid(best, n);
  }
  for (std::size_t p = out.r_index; p < g.n_r; ++p) out.valid[p] = false;
  return out;
}

PairwiseComparisons::PairwiseComparisons(std::size_t n)
    : n_(n), distance_(n * n, 0.0), rotation_(n * n, Rotation::identity()), gap_(n * n, 0.0) {}

void PairwiseComparisons::set(std::size_t i, std::size_t j, const AlignmentResult& r) {
  if (!(i < j) || j >= n_) throw ValidationError("pairwise entries are set with i < j < n");
  distance_[i * n_ + j] = distance_[j * n_ + i] = r.distance;
  rotation_[i * n_ + j] = r.g;
  rotation_[j * n_ + i] = r.g.inverse();
  gap_[i * n_ + j] = gap_[j * n_ + i] = r.ambiguity_gap;
  if (r.ambiguous) ambiguous_.emplace_back(i, j);
}

PairwiseComparisons pairwise_comparisons(const ImageStack& stack, const AlignOptions& opts, std::size_t threads) {
  stack.validate();
  const std::size_t n = stack.images.size();
  if (n < 2) throw ValidationError("pairwise comparisons need at least two images");

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<AlignmentResult> results(pairs.size());
  const std::size_t workers = std::max<std::size_t>(1, std::min(threads, pairs.size()));
  auto work = [&](std::size_t w) {
    for (std::size_t k = w; k < pairs.size(); k += workers) {
      results[k] = distance_and_align(stack.images[pairs[k].first], stack.images[pairs[k].second], opts);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  PairwiseComparisons out(n);
  for (std::size_t k = 0; k < pairs.size(); ++k) out.set(pairs[k].first, pairs[k].second, results[k]);
  return out;
}

}  // namespace cocyclem
