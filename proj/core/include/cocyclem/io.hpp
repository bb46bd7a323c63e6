#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "cocyclem/align.hpp"
#include "cocyclem/bundle.hpp"
#include "cocyclem/cocycle.hpp"
#include "cocyclem/figures.hpp"
#include "cocyclem/phantom.hpp"
#include "cocyclem/rips.hpp"
#include "cocyclem/simplicial.hpp"

namespace cocyclem::io {

using nlohmann::json;

json read_json(const std::filesystem::path& path);
/// Two-space indented, trailing newline.
void write_json(const std::filesystem::path& path, const json& j);

// {"vertices": n, "edges": [[i,j],...], "triangles": [[i,j,k],...]}
json complex_to_json(const SimplicialComplex2& k);
SimplicialComplex2 complex_from_json(const json& j);

json homology_to_json(const HomologyProfile& h);
json sweep_to_json(const std::vector<SweepRecord>& sweep);

// {"components": [{"w": ..., "mu": [x,y,z], "s": ...}]}
json molecule_to_json(const Molecule& m);
Molecule molecule_from_json(const json& j);

// {"n": ..., "frames": [{"a": [...], "b": [...], "c": [...], "in_plane_angle": ..., "cluster": ...}]}
json ground_truth_to_json(const std::vector<GroundTruth>& truth);
std::vector<GroundTruth> ground_truth_from_json(const json& j);

// {"n": ..., "pairs": [{"i","j","d","theta","gap"}]} with i < j only.
json comparisons_to_json(const PairwiseComparisons& d);
PairwiseComparisons comparisons_from_json(const json& j);
/// n x n distance matrix as CSV, no header.
std::string distances_to_csv(const PairwiseComparisons& d);

// {"vertices": n, "edges": [{"i","j","theta"}], "triangles": [[i,j,k],...]}.
// When "triangles" is absent on input, every 3-clique of the edges is used.
json cocycle_to_json(const DiscreteCocycle& z);
DiscreteCocycle cocycle_from_json(const json& j);

/// delta, delta_i, rho_i, rho ranked descending, worst triangles by |theta_ijk|.
json residuals_to_json(const DiscreteCocycle& z, const ResidualReport& r, std::size_t worst = 10);
std::string rho_to_csv(const ResidualReport& r);

json sync_to_json(const Synchronization& s);

// {"complex": {...}, "steps": W, "anchors": [{"i","j","theta"}],
//  "paths": [{"triangle": [i,j,k], "edge": [a,b], "samples": [...]}]}
json continuous_cocycle_to_json(const ContinuousCocycle& z);
ContinuousCocycle continuous_cocycle_from_json(const json& j);

// {"b2": b, "cochain": [{"triangle": [i,j,k], "c": ...}], "m": [...]}
json euler_to_json(const SimplicialComplex2& k, const EulerCochain& c, const EulerVector& m);

// {"n": ..., "g": [{"i","j","g"}]} or {"n": ..., "distances": [{"i","j","d_ij","d_ji"}]}
json positive_cochain_to_json(const PositiveCochain& g);
PositiveCochain positive_cochain_from_json(const json& j);
json distances_fixture_to_json(std::size_t n, const std::vector<EndDistances>& d);

}  // namespace cocyclem::io
