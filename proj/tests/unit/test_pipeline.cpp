#include <gtest/gtest.h>

#include <cocyclem/errors.hpp>
#include <cocyclem/io.hpp>
#include <cocyclem/pipeline.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace cocyclem;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("cocyclem-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

PipelineConfig small(const std::string& name) {
  PipelineConfig c;
  c.n_clusters = 6;
  c.per_cluster = 3;
  c.seed = 3;
  c.output_dir = scratch(name).string();
  return c;
}

}  // namespace

TEST(Pipeline, NoiselessClustersAreExact) {
  const auto r = run_pipeline(small("noiseless"));
  EXPECT_LT(r.delta, 1e-16);
  EXPECT_TRUE(r.is_coboundary);
  for (double t : r.per_triangle) EXPECT_LT(std::abs(t), 1e-9);
  EXPECT_GT(r.per_triangle.size(), 0u);
  for (const char* f : {"stack.pis", "ground_truth.json", "comparisons.json", "complex.json", "cocycle.json", "report.json"}) {
    EXPECT_TRUE(fs::exists(fs::path(small("x").output_dir).parent_path() / "cocyclem-test-noiseless" / f)) << f;
  }
  const auto rep = io::read_json(r.report_path);
  EXPECT_EQ(rep["version"], library_version());
  EXPECT_EQ(config_from_json(rep["config"]), small("noiseless"));
  EXPECT_EQ(rep["cocycle"]["is_coboundary"], true);
}

TEST(Pipeline, NoisyRunHasRankedRho) {
  auto c = small("noisy");
  c.pixel_sigma = 0.2;
  c.epsilons = std::vector<double>{1e9};
  const auto r = run_pipeline(c);
  EXPECT_GT(r.delta, 0.0);
  const auto rep = io::read_json(r.report_path);
  ASSERT_EQ(rep["cocycle"]["rho_ranked"].size(), 18u);
  double prev = 2.0, sum = 0.0;
  for (const auto& e : rep["cocycle"]["rho_ranked"]) {
    EXPECT_LE(e["rho"].get<double>(), prev);
    prev = e["rho"].get<double>();
    sum += prev;
  }
  EXPECT_NEAR(sum, 1.0, 1e-9);
}

TEST(Pipeline, DeterministicWithThreads) {
  auto a = small("det-a"), b = small("det-b");
  a.threads = b.threads = 3;
  a.pixel_sigma = b.pixel_sigma = 0.05;
  b.output_dir = a.output_dir;
  const auto ra = run_pipeline(a);
  const std::string first = slurp(ra.report_path), stack = slurp(fs::path(a.output_dir) / "stack.pis");
  const auto rb = run_pipeline(b);
  EXPECT_EQ(first, slurp(rb.report_path));
  EXPECT_EQ(stack, slurp(fs::path(b.output_dir) / "stack.pis"));
  // A single thread gives the same artifacts.
  auto c = a;
  c.threads = 1;
  c.output_dir = scratch("det-c").string();
  run_pipeline(c);
  EXPECT_EQ(slurp(fs::path(c.output_dir) / "comparisons.json"), slurp(fs::path(a.output_dir) / "comparisons.json"));
}

TEST(Pipeline, StageErrorKeepsPartialOutputs) {
  auto c = small("stage-error");
  c.epsilons = std::vector<double>{0.1};
  c.molecule_path = (fs::path(c.output_dir) / "missing-molecule.json").string();
  try {
    run_pipeline(c);
    FAIL() << "expected a stage error";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "phantom");
    EXPECT_FALSE(e.numeric());
  }
  const auto rep = io::read_json(fs::path(c.output_dir) / "report.json");
  EXPECT_EQ(rep["error"]["stage"], "phantom");
}

TEST(Pipeline, ExplicitSweepSelectsLargestAcceptable) {
  auto c = small("sweep");
  c.epsilons = std::vector<double>{0.025, 0.05, 0.1, 0.2, 0.4, 0.8, 1.6};
  const auto r = run_pipeline(c);
  const auto rep = io::read_json(r.report_path);
  EXPECT_EQ(rep["epsilon"]["mode"], "sweep");
  EXPECT_EQ(rep["epsilon"]["sweep"].size(), 7u);
  EXPECT_LE(r.delta, c.tol_cocycle);
  if (rep["epsilon"].contains("next_epsilon")) {
    EXPECT_GT(rep["epsilon"]["delta_at_next"].get<double>(), c.tol_cocycle);
  }
}

TEST(Pipeline, InvalidConfigRejected) {
  auto c = small("invalid");
  c.n_clusters = 0;
  EXPECT_THROW(run_pipeline(c), StageError);
}
