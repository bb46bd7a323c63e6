#include "cocyclem/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>

#include "cocyclem/align.hpp"
#include "cocyclem/bundle.hpp"
#include "cocyclem/errors.hpp"
#include "cocyclem/io.hpp"
#include "cocyclem/pis.hpp"
#include "cocyclem/rips.hpp"

namespace cocyclem {

namespace fs = std::filesystem;
using nlohmann::json;

const char* library_version() { return COCYCLEM_VERSION; }

StageError::StageError(std::string stage, const std::string& message, bool numeric)
    : std::runtime_error(stage + ": " + message), stage_(std::move(stage)), numeric_(numeric) {}

void PipelineConfig::validate() const {
  auto positive = [](double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError(std::string(name) + " must be positive");
  };
  if (n_images) {
    if (*n_images < 1) throw ValidationError("n_images must be at least 1");
  } else if (n_clusters < 1 || per_cluster < 1) {
    throw ValidationError("n_clusters and per_cluster must be at least 1");
  }
  if (threads < 1) throw ValidationError("threads must be at least 1");
  grid.validate();
  positive(tol_tie, "tol_tie");
  positive(tol_cocycle, "tol_cocycle");
  positive(tol_defect, "tol_defect");
  positive(tol_coboundary, "tol_coboundary");
  positive(energy_floor, "energy_floor");
  if (tol_defect >= 0.5) throw ValidationError("tol_defect must be below 0.5");
  if (!(pixel_sigma >= 0.0) || !std::isfinite(pixel_sigma)) throw ValidationError("pixel_sigma must be nonnegative");
  if (epsilons) {
    if (epsilons->empty()) throw ValidationError("epsilon list is empty");
    for (double e : *epsilons) {
      if (!(e > 0.0) || !std::isfinite(e)) throw ValidationError("epsilon values must be finite and positive");
    }
    if (!std::is_sorted(epsilons->begin(), epsilons->end())) throw ValidationError("epsilon list must be ascending");
  }
  if (!molecule.empty()) Molecule check(molecule);
}

json config_to_json(const PipelineConfig& cfg) {
  json j;
  if (!cfg.molecule.empty()) {
    j["molecule"] = io::molecule_to_json(Molecule(cfg.molecule));
  } else if (!cfg.molecule_path.empty()) {
    j["molecule"] = cfg.molecule_path;
  } else {
    j["molecule"] = "default";
  }
  if (cfg.n_images) {
    j["n_images"] = *cfg.n_images;
  } else {
    j["n_clusters"] = cfg.n_clusters;
    j["per_cluster"] = cfg.per_cluster;
  }
  j["grid_angles"] = cfg.grid_angles;
  j["grid"] = {{"n_r", cfg.grid.n_r}, {"n_theta", cfg.grid.n_theta}, {"r_max", cfg.grid.r_max}};
  j["noise"] = {{"pixel_sigma", cfg.pixel_sigma}};
  if (cfg.epsilons) {
    j["epsilon"] = *cfg.epsilons;
  } else {
    j["epsilon"] = "auto";
  }
  j["tolerances"] = {{"tie", cfg.tol_tie},
                     {"cocycle", cfg.tol_cocycle},
                     {"defect", cfg.tol_defect},
                     {"coboundary", cfg.tol_coboundary}};
  j["energy_floor"] = cfg.energy_floor;
  j["bundle_steps"] = cfg.bundle_steps;
  j["sync"] = to_string(cfg.sync_method);
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;
  j["threads"] = cfg.threads;
  return j;
}

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; })) {
      throw ValidationError("unknown key '" + k + "' in " + where);
    }
  }
}

SyncMethod parse_sync(const std::string& s) {
  if (s == to_string(SyncMethod::Spectral)) return SyncMethod::Spectral;
  if (s == to_string(SyncMethod::SpanningTree)) return SyncMethod::SpanningTree;
  throw ValidationError("unknown sync method '" + s + "'");
}

}  // namespace

PipelineConfig config_from_json(const json& j) {
  reject_unknown(j,
                 {"molecule", "n_images", "n_clusters", "per_cluster", "grid_angles", "grid", "noise", "epsilon",
                  "tolerances", "energy_floor", "bundle_steps", "sync", "seed", "output_dir", "threads"},
                 "config");
  PipelineConfig cfg;
  try {
    if (j.contains("molecule")) {
      const auto& m = j.at("molecule");
      if (m.is_string()) {
        if (m.get<std::string>() != "default") cfg.molecule_path = m.get<std::string>();
      } else {
        cfg.molecule = io::molecule_from_json(m).components();
      }
    }
    if (j.contains("n_images")) cfg.n_images = j.at("n_images").get<std::size_t>();
    cfg.n_clusters = j.value("n_clusters", cfg.n_clusters);
    cfg.per_cluster = j.value("per_cluster", cfg.per_cluster);
    cfg.grid_angles = j.value("grid_angles", cfg.grid_angles);
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      reject_unknown(g, {"n_r", "n_theta", "r_max"}, "grid");
      cfg.grid.n_r = g.value("n_r", cfg.grid.n_r);
      cfg.grid.n_theta = g.value("n_theta", cfg.grid.n_theta);
      cfg.grid.r_max = g.value("r_max", cfg.grid.r_max);
    }
    if (j.contains("noise")) {
      reject_unknown(j.at("noise"), {"pixel_sigma"}, "noise");
      cfg.pixel_sigma = j.at("noise").value("pixel_sigma", 0.0);
    }
    if (j.contains("epsilon")) {
      const auto& e = j.at("epsilon");
      if (e.is_string()) {
        if (e.get<std::string>() != "auto") throw ValidationError("epsilon must be \"auto\", a number or a list");
      } else if (e.is_number()) {
        cfg.epsilons = std::vector<double>{e.get<double>()};
      } else {
        cfg.epsilons = e.get<std::vector<double>>();
      }
    }
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      reject_unknown(t, {"tie", "cocycle", "defect", "coboundary"}, "tolerances");
      cfg.tol_tie = t.value("tie", cfg.tol_tie);
      cfg.tol_cocycle = t.value("cocycle", cfg.tol_cocycle);
      cfg.tol_defect = t.value("defect", cfg.tol_defect);
      cfg.tol_coboundary = t.value("coboundary", cfg.tol_coboundary);
    }
    cfg.energy_floor = j.value("energy_floor", cfg.energy_floor);
    cfg.bundle_steps = j.value("bundle_steps", cfg.bundle_steps);
    if (j.contains("sync")) cfg.sync_method = parse_sync(j.at("sync").get<std::string>());
    cfg.seed = j.value("seed", cfg.seed);
    cfg.output_dir = j.value("output_dir", cfg.output_dir);
    cfg.threads = j.value("threads", cfg.threads);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

void apply_env_overrides(PipelineConfig& cfg) {
  if (const char* s = std::getenv("COCYCLEM_SEED"); s && *s) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (errno || *end != '\0' || *s == '-') throw ValidationError("COCYCLEM_SEED is not an unsigned integer");
    cfg.seed = v;
  }
  if (const char* o = std::getenv("COCYCLEM_OUT"); o && *o) cfg.output_dir = o;
}

namespace {

struct EpsilonChoice {
  double epsilon = 0.0;
  json record;
};

// delta only grows with epsilon since triangles are only added, so the scan
// stops at the first candidate that exceeds the tolerance.
EpsilonChoice choose_epsilon(const PairwiseComparisons& d, const std::vector<double>& candidates, double tol) {
  const std::size_t n = d.size();
  struct Pair {
    double dist;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({d.distance(i, j), i, j});
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const Pair& a, const Pair& b) { return std::tie(a.dist, a.i, a.j) < std::tie(b.dist, b.i, b.j); });
  std::vector<char> adj(n * n, 0);
  double delta = 0.0;
  std::size_t next = 0, triangles = 0;
  std::optional<std::size_t> accepted;
  double accepted_delta = 0.0;
  std::size_t accepted_triangles = 0;
  std::optional<double> rejected_delta;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    for (; next < pairs.size() && pairs[next].dist <= candidates[c]; ++next) {
      const auto [dist, i, j] = pairs[next];
      for (std::size_t k = 0; k < n; ++k) {
        if (!adj[i * n + k] || !adj[j * n + k]) continue;
        std::array<std::size_t, 3> t{i, j, k};
        std::sort(t.begin(), t.end());
        const double r = wrap_signed(d.rotation(t[0], t[1]).signed_angle() + d.rotation(t[1], t[2]).signed_angle() -
                                     d.rotation(t[0], t[2]).signed_angle());
        delta += r * r;
        ++triangles;
      }
      adj[i * n + j] = adj[j * n + i] = 1;
    }
    if (delta > tol) {
      rejected_delta = delta;
      break;
    }
    accepted = c;
    accepted_delta = delta;
    accepted_triangles = triangles;
  }
  EpsilonChoice out;
  out.record = {{"candidates", candidates.size()}};
  if (accepted) {
    out.epsilon = candidates[*accepted];
    out.record["rule"] = "largest epsilon with delta <= tol_cocycle";
    out.record["delta_at_chosen"] = accepted_delta;
    out.record["triangles_at_chosen"] = accepted_triangles;
    if (*accepted + 1 < candidates.size()) {
      out.record["next_epsilon"] = candidates[*accepted + 1];
      out.record["delta_at_next"] = *rejected_delta;
    }
  } else {
    out.epsilon = candidates.front();
    out.record["rule"] = "no candidate meets tol_cocycle; smallest candidate used";
    out.record["delta_at_chosen"] = *rejected_delta;
  }
  out.record["epsilon"] = out.epsilon;
  return out;
}

class Run {
 public:
  explicit Run(const PipelineConfig& cfg) : cfg_(cfg), dir_(cfg.output_dir) {
    report_ = {{"version", library_version()}, {"config", config_to_json(cfg)}, {"outputs", json::array()}};
  }

  template <typename F>
  auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const NumericError& e) {
      fail(name, e.what(), true);
    } catch (const std::exception& e) {
      fail(name, e.what(), false);
    }
  }

  void output(const std::string& file, const json& j) {
    io::write_json(dir_ / file, j);
    report_["outputs"].push_back(file);
  }
  void output_pis(const std::string& file, const ImageStack& s) {
    write_pis(dir_ / file, s);
    report_["outputs"].push_back(file);
  }

  json& report() { return report_; }
  fs::path report_path() const { return dir_ / "report.json"; }
  void write_report() { io::write_json(report_path(), report_); }

 private:
  [[noreturn]] void fail(const char* name, const std::string& what, bool numeric) {
    report_["error"] = {{"stage", name}, {"message", what}, {"kind", numeric ? "numeric" : "validation"}};
    try {
      write_report();
    } catch (const std::exception&) {
    }
    throw StageError(name, what, numeric);
  }

  const PipelineConfig& cfg_;
  fs::path dir_;
  json report_;
};

}  // namespace

PipelineReport run_pipeline(const PipelineConfig& cfg) {
  try {
    cfg.validate();
    fs::create_directories(cfg.output_dir);
  } catch (const std::exception& e) {
    throw StageError("config", e.what(), false);
  }
  Run run(cfg);
  auto& rep = run.report();
  PipelineReport out;

  const Molecule molecule = run.stage("phantom", [&] {
    if (!cfg.molecule.empty()) return Molecule(cfg.molecule);
    if (!cfg.molecule_path.empty()) return io::molecule_from_json(io::read_json(cfg.molecule_path));
    return default_molecule();
  });
  auto truth = run.stage("phantom", [&] {
    if (cfg.n_images) return sample_uniform_directions(*cfg.n_images, cfg.seed);
    return clustered_directions(cfg.n_clusters, cfg.per_cluster, cfg.seed,
                                cfg.grid_angles ? std::optional<std::size_t>(cfg.grid.n_theta) : std::nullopt);
  });
  const std::size_t n = truth.size();
  rep["phantom"] = {{"images", n}, {"components", molecule.components().size()}};

  ImageStack stack = run.stage("project", [&] { return project_stack(molecule, std::move(truth), cfg.grid, cfg.threads); });
  if (cfg.pixel_sigma > 0.0) {
    stack = run.stage("noise", [&] { return add_noise(stack, {cfg.pixel_sigma, cfg.seed ^ 0x6e6f697365ULL}); });
  }
  rep["noise"] = {{"pixel_sigma", cfg.pixel_sigma}};
  run.stage("project", [&] {
    run.output_pis("stack.pis", stack);
    run.output("ground_truth.json", io::ground_truth_to_json(stack.ground_truth));
  });

  const PairwiseComparisons comparisons =
      run.stage("align", [&] { return pairwise_comparisons(stack, AlignOptions{cfg.tol_tie, false}, cfg.threads); });
  run.stage("align", [&] { run.output("comparisons.json", io::comparisons_to_json(comparisons)); });
  {
    json amb = json::array();
    for (const auto& [i, j] : comparisons.ambiguous_pairs()) amb.push_back({i, j});
    rep["alignment"] = {{"pairs", n * (n - 1) / 2}, {"ambiguous_pairs", amb}};
  }

  out.epsilon = run.stage("epsilon", [&] {
    const auto& dm = comparisons.distance_matrix();
    if (cfg.epsilons && cfg.epsilons->size() == 1) {
      rep["epsilon"] = {{"mode", "fixed"}, {"epsilon", cfg.epsilons->front()}};
      return cfg.epsilons->front();
    }
    std::vector<double> candidates = cfg.epsilons ? *cfg.epsilons : distinct_distances(dm, n);
    // Coincident images sit at distance 0; epsilon just above it joins them.
    for (auto& e : candidates) e = std::max(e, std::numeric_limits<double>::min());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (candidates.empty()) candidates.push_back(std::numeric_limits<double>::min());
    EpsilonChoice choice = choose_epsilon(comparisons, candidates, cfg.tol_cocycle);
    choice.record["mode"] = cfg.epsilons ? "sweep" : "auto";
    if (cfg.epsilons) choice.record["sweep"] = io::sweep_to_json(epsilon_sweep(dm, n, *cfg.epsilons));
    rep["epsilon"] = choice.record;
    return choice.epsilon;
  });

  const SimplicialComplex2 complex = run.stage("complex", [&] {
    auto k = clique_complex(build_graph(comparisons.distance_matrix(), n, out.epsilon));
    run.output("complex.json", io::complex_to_json(k));
    return k;
  });
  rep["complex"] = {{"vertices", complex.vertex_count()},
                    {"edges", complex.edges().size()},
                    {"triangles", complex.triangles().size()}};

  const DiscreteCocycle z = run.stage("cocycle", [&] {
    auto c = extract_cocycle(comparisons, complex);
    run.output("cocycle.json", io::cocycle_to_json(c));
    return c;
  });
  run.stage("residuals", [&] {
    const ResidualReport r = residuals(z);
    const CoboundaryTest cb = is_coboundary(z, cfg.tol_coboundary);
    json j = io::residuals_to_json(z, r);
    j["is_coboundary"] = cb.is_coboundary;
    j["witness"] = cb.witness;
    j["max_violation"] = cb.max_violation;
    rep["cocycle"] = j;
    out.delta = r.delta;
    out.per_triangle = r.per_triangle;
    out.is_coboundary = cb.is_coboundary;
  });

  run.stage("sync", [&] {
    SyncOptions opts;
    opts.method = cfg.sync_method;
    rep["sync"] = io::sync_to_json(synchronize(z, opts));
  });

  const HomologyProfile h = run.stage("homology", [&] { return homology(complex); });
  rep["homology"] = io::homology_to_json(h);
  out.betti = h.betti;

  run.stage("euler", [&] {
    if (h.betti[2] == 0) {
      rep["euler"] = {{"computed", false}, {"reason", "b2 = 0"}};
      return;
    }
    std::vector<RadialAlignment> radial;
    radial.reserve(complex.edges().size());
    for (const auto& [i, j] : complex.edges()) {
      radial.push_back(radial_align(stack.images[i], stack.images[j], cfg.energy_floor));
    }
    try {
      const auto bundle = from_radial_alignments(complex, radial, cfg.bundle_steps);
      const EulerCochain c = euler_cochain(bundle, cfg.tol_defect);
      const EulerVector m = euler_vector(bundle, h, cfg.tol_defect);
      run.output("bundle.json", io::continuous_cocycle_to_json(bundle));
      json e = io::euler_to_json(complex, c, m);
      e["computed"] = true;
      e["steps"] = bundle.steps();
      rep["euler"] = e;
      out.euler = m;
    } catch (const NumericError& e) {
      rep["euler"] = {{"computed", false}, {"reason", e.what()}};
    }
  });

  run.stage("report", [&] { run.write_report(); });
  out.json = rep;
  out.report_path = run.report_path();
  return out;
}

}  // namespace cocyclem
