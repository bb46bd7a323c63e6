#include <gtest/gtest.h>

#include <cocyclem/errors.hpp>
#include <cocyclem/io.hpp>
#include <cocyclem/pipeline.hpp>

#include <filesystem>

#include "fixtures.hpp"

using namespace cocyclem;
namespace fs = std::filesystem;

TEST(Io, ComplexRoundTrip) {
  const auto k = oracle::two_spheres();
  EXPECT_EQ(io::complex_from_json(io::complex_to_json(k)), k);
  EXPECT_THROW(io::complex_from_json(nlohmann::json{{"edges", 3}}), ValidationError);
}

TEST(Io, MoleculeRoundTrip) {
  const auto m = default_molecule();
  EXPECT_EQ(io::molecule_from_json(io::molecule_to_json(m)).components(), m.components());
}

TEST(Io, ComparisonsRoundTrip) {
  const auto truth = clustered_directions(2, 3, 5, 64);
  const auto d = pairwise_comparisons(project_stack(default_molecule(), truth, PolarGrid{}));
  const auto back = io::comparisons_from_json(io::comparisons_to_json(d));
  EXPECT_EQ(back.distance_matrix(), d.distance_matrix());
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(back.rotation(i, j), d.rotation(i, j));
  auto j = io::comparisons_to_json(d);
  j["pairs"].erase(0);
  EXPECT_THROW(io::comparisons_from_json(j), ValidationError);
  const auto csv = io::distances_to_csv(d);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

TEST(Io, CocycleRoundTripAndCliqueClosure) {
  std::mt19937_64 rng(81);
  const auto z = fixture::random_cocycle(rng, oracle::octahedron());
  const auto back = io::cocycle_from_json(io::cocycle_to_json(z));
  EXPECT_EQ(back.complex(), z.complex());
  EXPECT_EQ(back.theta(), z.theta());

  const auto fixture_json = io::read_json(fs::path(COCYCLEM_FIXTURE_DIR) / "coboundary.json");
  const auto fz = io::cocycle_from_json(fixture_json);
  EXPECT_EQ(fz.complex().triangles().size(), 4u);
  // Reversed edge order flips the sign.
  const auto rev = io::cocycle_from_json(nlohmann::json::parse(R"({"edges": [{"i": 1, "j": 0, "theta": 0.5}]})"));
  EXPECT_EQ(rev.theta(0, 1), -0.5);
}

TEST(Io, ResidualReport) {
  const auto k = oracle::closure(4, {{0, 1, 2}, {1, 2, 3}});
  auto theta = fixture::coboundary(k, {0.1, 0.2, 0.3, 0.4}).theta();
  theta[0] += 0.2;
  const DiscreteCocycle z(k, theta);
  const auto j = io::residuals_to_json(z, residuals(z));
  EXPECT_EQ(j["worst_triangles"][0]["triangle"], (Triangle{0, 1, 2}));
  EXPECT_EQ(j["rho_ranked"].size(), 4u);
  EXPECT_EQ(j["rho_ranked"][3]["vertex"], 3);
  const auto zero = io::residuals_to_json(z, residuals(DiscreteCocycle(k, std::vector<double>(5, 0.0))));
  EXPECT_TRUE(zero["rho_i"].is_null());
}

TEST(Io, ContinuousCocycleRoundTrip) {
  const auto k = oracle::two_spheres();
  const auto z = make_bundle(k, homology(k), std::vector<std::int64_t>{1, -2}, 16);
  const auto back = io::continuous_cocycle_from_json(io::continuous_cocycle_to_json(z));
  EXPECT_EQ(back.paths(), z.paths());
  EXPECT_EQ(back.anchors(), z.anchors());
  EXPECT_EQ(euler_vector(back, homology(k)), (EulerVector{1, -2}));
}

TEST(Io, PositiveCochainForms) {
  const auto g = from_distances(3, tribar_distances());
  const auto back = io::positive_cochain_from_json(io::positive_cochain_to_json(g));
  EXPECT_EQ(back.entries(), g.entries());
  const auto fx = io::positive_cochain_from_json(io::read_json(fs::path(COCYCLEM_FIXTURE_DIR) / "tribar.json"));
  EXPECT_EQ(fx.entries(), g.entries());
  const auto brick = io::positive_cochain_from_json(io::read_json(fs::path(COCYCLEM_FIXTURE_DIR) / "escher_brick.json"));
  EXPECT_EQ(brick.entries(), from_distances(4, escher_brick_distances()).entries());
  EXPECT_EQ(io::positive_cochain_from_json(io::distances_fixture_to_json(3, tribar_distances())).entries(),
            g.entries());
}

TEST(Io, GroundTruthRoundTrip) {
  const auto t = clustered_directions(3, 2, 9);
  const auto back = io::ground_truth_from_json(io::ground_truth_to_json(t));
  ASSERT_EQ(back.size(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(back[i].frame.a, t[i].frame.a);
    EXPECT_EQ(back[i].in_plane_angle, t[i].in_plane_angle);
    EXPECT_EQ(back[i].cluster, t[i].cluster);
  }
}

TEST(Config, RoundTripIsLossless) {
  PipelineConfig a;
  EXPECT_EQ(config_from_json(config_to_json(a)), a);
  PipelineConfig b;
  b.molecule = default_molecule().components();
  b.n_images = 17;
  b.grid = {12, 48, 5.5};
  b.pixel_sigma = 0.2;
  b.epsilons = std::vector<double>{0.1, 0.25, 1.0 / 3.0};
  b.tol_tie = 3e-7;
  b.tol_cocycle = 1e-14;
  b.sync_method = SyncMethod::SpanningTree;
  b.seed = 0xfffffffffffULL;
  b.threads = 4;
  b.output_dir = "x/y";
  EXPECT_EQ(config_from_json(nlohmann::json::parse(config_to_json(b).dump())), b);
  PipelineConfig c;
  c.molecule_path = "m.json";
  c.epsilons = std::vector<double>{0.5};
  EXPECT_EQ(config_from_json(config_to_json(c)), c);
}

TEST(Config, Validation) {
  EXPECT_THROW(config_from_json(nlohmann::json{{"bogus", 1}}), ValidationError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"n_clusters", 0}}), ValidationError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"tolerances", {{"tie", -1.0}}}}), ValidationError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"epsilon", "sometimes"}}), ValidationError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"epsilon", {0.3, 0.1}}}), ValidationError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"epsilon", 0.0}}), ValidationError);
  EXPECT_THROW(config_from_json(nlohmann::json{{"seed", "x"}}), ValidationError);
}

TEST(Config, EnvironmentOverrides) {
  PipelineConfig c;
  ::setenv("COCYCLEM_SEED", "1234", 1);
  ::setenv("COCYCLEM_OUT", "/tmp/elsewhere", 1);
  apply_env_overrides(c);
  EXPECT_EQ(c.seed, 1234u);
  EXPECT_EQ(c.output_dir, "/tmp/elsewhere");
  ::setenv("COCYCLEM_SEED", "12x", 1);
  EXPECT_THROW(apply_env_overrides(c), ValidationError);
  ::unsetenv("COCYCLEM_SEED");
  ::unsetenv("COCYCLEM_OUT");
}
