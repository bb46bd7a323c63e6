#include <CLI11.hpp>

#include <cocyclem/align.hpp>
#include <cocyclem/bundle.hpp>
#include <cocyclem/cocycle.hpp>
#include <cocyclem/errors.hpp>
#include <cocyclem/figures.hpp>
#include <cocyclem/io.hpp>
#include <cocyclem/phantom.hpp>
#include <cocyclem/pipeline.hpp>
#include <cocyclem/pis.hpp>
#include <cocyclem/rips.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cocyclem;

namespace {

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
  std::string epsilon_sweep;
  std::string out;
  std::string format = "json";
  std::optional<double> tol_cocycle;
  std::optional<double> tol_tie;
  bool quiet = false;
};

Globals g;

std::ostream& info() {
  static std::ostringstream sink;
  if (g.quiet) {
    sink.str("");
    return sink;
  }
  return std::cout;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(12);
  s << x;
  return s.str();
}

std::string list(const auto& v) {
  std::ostringstream s;
  s << '[';
  for (std::size_t k = 0; k < v.size(); ++k) s << (k ? "," : "") << v[k];
  s << ']';
  return s.str();
}

// Writes into --out when given, else prints to stdout.
void emit_text(const std::string& name, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(g.out);
  const fs::path p = fs::path(g.out) / name;
  std::ofstream f(p);
  if (!f) throw ValidationError("cannot write " + p.string());
  f << text;
  info() << "wrote " << p.string() << '\n';
}

void emit(const std::string& name, const json& j) { emit_text(name, j.dump(2) + "\n"); }

fs::path require_out(const char* what) {
  if (g.out.empty()) throw ValidationError(std::string(what) + " needs --out DIR");
  fs::create_directories(g.out);
  return g.out;
}

std::vector<double> parse_sweep(const std::string& s) {
  double lo = 0, hi = 0;
  std::size_t steps = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(s);
  if (!(in >> lo >> c1 >> hi >> c2 >> steps) || c1 != ':' || c2 != ':' || !in.eof()) {
    throw ValidationError("--epsilon-sweep expects a:b:steps, got '" + s + "'");
  }
  return linear_epsilons(lo, hi, steps);
}

PipelineConfig load_config() {
  PipelineConfig cfg = g.config.empty() ? PipelineConfig{} : config_from_json(io::read_json(g.config));
  apply_env_overrides(cfg);
  if (g.seed) cfg.seed = *g.seed;
  if (!g.out.empty()) cfg.output_dir = g.out;
  if (g.epsilon) cfg.epsilons = std::vector<double>{*g.epsilon};
  if (!g.epsilon_sweep.empty()) cfg.epsilons = parse_sweep(g.epsilon_sweep);
  if (g.tol_cocycle) cfg.tol_cocycle = *g.tol_cocycle;
  if (g.tol_tie) cfg.tol_tie = *g.tol_tie;
  cfg.validate();
  return cfg;
}

Molecule config_molecule(const PipelineConfig& cfg) {
  if (!cfg.molecule.empty()) return Molecule(cfg.molecule);
  if (!cfg.molecule_path.empty()) return io::molecule_from_json(io::read_json(cfg.molecule_path));
  return default_molecule();
}

void cmd_phantom() {
  const auto cfg = load_config();
  emit("molecule.json", io::molecule_to_json(config_molecule(cfg)));
}

void cmd_project() {
  const auto cfg = load_config();
  const fs::path dir = require_out("project");
  auto truth = cfg.n_images ? sample_uniform_directions(*cfg.n_images, cfg.seed)
                            : clustered_directions(cfg.n_clusters, cfg.per_cluster, cfg.seed,
                                                   cfg.grid_angles ? std::optional<std::size_t>(cfg.grid.n_theta)
                                                                   : std::nullopt);
  const auto stack = project_stack(config_molecule(cfg), std::move(truth), cfg.grid, cfg.threads);
  write_pis(dir / "stack.pis", stack);
  io::write_json(dir / "ground_truth.json", io::ground_truth_to_json(stack.ground_truth));
  info() << "projected " << stack.images.size() << " images to " << (dir / "stack.pis").string() << '\n';
}

void cmd_noise(const std::string& input, double sigma) {
  const auto cfg = load_config();
  const fs::path dir = require_out("noise");
  const auto noisy = add_noise(read_pis(input), {sigma, cfg.seed});
  write_pis(dir / "stack.pis", noisy);
  info() << "wrote " << (dir / "stack.pis").string() << '\n';
}

void cmd_align(const std::string& input) {
  const auto cfg = load_config();
  const auto d = pairwise_comparisons(read_pis(input), AlignOptions{cfg.tol_tie, false}, cfg.threads);
  if (!d.ambiguous_pairs().empty()) {
    std::cerr << "warning: " << d.ambiguous_pairs().size() << " ambiguous pair(s) below tie tolerance\n";
  }
  if (g.format == "csv") {
    emit_text("distances.csv", io::distances_to_csv(d));
  } else {
    emit("comparisons.json", io::comparisons_to_json(d));
  }
}

void cmd_complex(const std::string& input) {
  const auto cfg = load_config();
  const auto d = io::comparisons_from_json(io::read_json(input));
  if (!cfg.epsilons) throw ValidationError("complex needs --epsilon X or --epsilon-sweep a:b:steps");
  if (cfg.epsilons->size() > 1) {
    const auto sweep = epsilon_sweep(d.distance_matrix(), d.size(), *cfg.epsilons);
    for (const auto& r : sweep) {
      info() << "epsilon " << fmt(r.epsilon) << ": edges " << r.edge_count << ", triangles " << r.triangle_count
             << ", betti " << list(r.homology.betti) << '\n';
    }
    emit("sweep.json", io::sweep_to_json(sweep));
    return;
  }
  const auto k = clique_complex(build_graph(d.distance_matrix(), d.size(), cfg.epsilons->front()));
  const auto h = homology(k);
  info() << "edges " << k.edges().size() << ", triangles " << k.triangles().size() << ", betti " << list(h.betti)
         << ", H1 torsion " << list(h.torsion_h1) << '\n';
  if (g.out.empty()) {
    std::cout << json{{"complex", io::complex_to_json(k)}, {"homology", io::homology_to_json(h)}}.dump(2) << '\n';
    return;
  }
  emit("complex.json", io::complex_to_json(k));
  emit("homology.json", io::homology_to_json(h));
  emit("cocycle.json", io::cocycle_to_json(extract_cocycle(d, k)));
}

void cmd_cocycle_check(const std::string& input) {
  const auto cfg = load_config();
  const auto z = io::cocycle_from_json(io::read_json(input));
  const auto r = residuals(z);
  const auto cb = is_coboundary(z, cfg.tol_coboundary);
  std::cout << "delta: " << fmt(r.delta) << '\n';
  info() << "cocycle condition: " << (r.delta <= cfg.tol_cocycle ? "holds" : "violated") << " (tolerance "
         << fmt(cfg.tol_cocycle) << ")\n";
  info() << (cb.is_coboundary ? "coboundary" : "NOT a coboundary");
  if (!cb.is_coboundary) info() << ", witness cycle " << list(cb.witness);
  info() << '\n';
  if (r.rho_i) {
    const auto ranked = io::residuals_to_json(z, r, 0)["rho_ranked"];
    info() << "largest rho_i:";
    for (std::size_t k = 0; k < std::min<std::size_t>(5, ranked.size()); ++k) {
      info() << ' ' << ranked[k]["vertex"].get<std::size_t>() << '=' << fmt(ranked[k]["rho"].get<double>());
    }
    info() << '\n';
  }
  if (g.format == "csv") {
    if (!g.out.empty()) emit_text("rho.csv", io::rho_to_csv(r));
    return;
  }
  if (!g.out.empty()) {
    json j = io::residuals_to_json(z, r);
    j["is_coboundary"] = cb.is_coboundary;
    j["witness"] = cb.witness;
    emit("residuals.json", j);
  }
}

void cmd_sync(const std::string& input, const std::string& method, bool normalized) {
  const auto z = io::cocycle_from_json(io::read_json(input));
  SyncOptions opts;
  if (method == "spectral") {
    opts.method = SyncMethod::Spectral;
  } else if (method == "spanning-tree") {
    opts.method = SyncMethod::SpanningTree;
  } else {
    throw ValidationError("--method must be spectral or spanning-tree");
  }
  opts.degree_normalized = normalized;
  const auto s = synchronize(z, opts);
  info() << "residual after sync: " << fmt(s.residual_after) << '\n';
  emit("sync.json", io::sync_to_json(s));
}

void cmd_euler(const std::string& input, double guard) {
  const auto z = io::continuous_cocycle_from_json(io::read_json(input));
  const auto h = homology(z.complex());
  const auto c = euler_cochain(z, guard);
  const auto m = euler_vector(z, h, guard);
  std::cout << "m=" << list(m) << '\n';
  if (!g.out.empty()) emit("euler.json", io::euler_to_json(z.complex(), c, m));
}

void cmd_bundle_make(const std::string& complex_path, const std::vector<std::int64_t>& m, std::size_t steps) {
  const auto k = io::complex_from_json(io::read_json(complex_path));
  const auto h = homology(k);
  const auto z = make_bundle(k, h, m, steps);
  info() << "b2 = " << h.betti[2] << ", m=" << list(m) << '\n';
  emit("bundle.json", io::continuous_cocycle_to_json(z));
}

void cmd_tribar(const std::string& input) {
  const auto cfg = load_config();
  const PositiveCochain gc = input.empty() ? from_distances(3, tribar_distances())
                                           : io::positive_cochain_from_json(io::read_json(input));
  const auto t = is_coboundary_positive(gc, cfg.tol_coboundary);
  if (t.is_coboundary) {
    std::cout << "coboundary: consistent depths " << list(t.s) << '\n';
  } else {
    std::cout << "NOT a coboundary: witness cycle " << list(t.witness) << ", log violation "
              << fmt(t.max_log_violation) << '\n';
  }
}

void cmd_pipeline() {
  const auto cfg = load_config();
  const auto r = run_pipeline(cfg);
  info() << "epsilon " << fmt(r.epsilon) << ", delta " << fmt(r.delta) << ", "
         << (r.is_coboundary ? "coboundary" : "NOT a coboundary") << ", betti " << list(r.betti);
  if (r.euler) info() << ", m=" << list(*r.euler);
  info() << '\n' << "report: " << r.report_path.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cocycle analysis of cryo-EM style image stacks"};
  app.set_version_flag("--version", std::string(library_version()));
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--config", g.config, "Pipeline config JSON")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Random seed");
  auto* eps = app.add_option("--epsilon", g.epsilon, "Neighborhood radius");
  app.add_option("--epsilon-sweep", g.epsilon_sweep, "Sweep a:b:steps")->excludes(eps);
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol-cocycle", g.tol_cocycle, "Tolerance on delta");
  app.add_option("--tol-tie", g.tol_tie, "Relative tie tolerance for alignment");
  app.add_flag("--quiet,-q", g.quiet, "Only print results");

  std::string input, complex_path, method = "spectral", m_list;
  double sigma = 0.0, guard = 0.05;
  bool normalized = false;
  std::size_t steps = 16;

  auto* phantom = app.add_subcommand("phantom", "Emit the molecule as JSON");
  auto* project = app.add_subcommand("project", "Project the molecule into a PIS stack");
  auto* noise = app.add_subcommand("noise", "Add Gaussian pixel noise to a stack");
  noise->add_option("input", input, "Stack (.pis)")->required()->check(CLI::ExistingFile);
  noise->add_option("--sigma", sigma, "Noise level relative to the stack RMS")->required();
  auto* align = app.add_subcommand("align", "Pairwise distances and rotations");
  align->add_option("input", input, "Stack (.pis)")->required()->check(CLI::ExistingFile);
  auto* complex = app.add_subcommand("complex", "Clique complex and homology at epsilon");
  complex->add_option("input", input, "Comparisons JSON")->required()->check(CLI::ExistingFile);
  auto* check = app.add_subcommand("cocycle-check", "Cocycle residuals and coboundary test");
  check->add_option("input", input, "Cocycle JSON")->required()->check(CLI::ExistingFile);
  auto* sync = app.add_subcommand("sync", "Synchronize vertex angles");
  sync->add_option("input", input, "Cocycle JSON")->required()->check(CLI::ExistingFile);
  sync->add_option("--method", method, "spectral or spanning-tree");
  sync->add_flag("--normalized", normalized, "Degree-normalized spectral method");
  auto* euler = app.add_subcommand("euler", "Euler class of a continuous cocycle");
  euler->add_option("input", input, "Bundle JSON")->required()->check(CLI::ExistingFile);
  euler->add_option("--guard", guard, "Allowed distance of a defect from an integer");
  auto* bundle = app.add_subcommand("bundle-make", "Continuous cocycle with a prescribed Euler vector");
  bundle->add_option("--complex", complex_path, "Complex JSON")->required()->check(CLI::ExistingFile);
  bundle->add_option("--m", m_list, "Comma separated Euler vector, e.g. 2 or 1,-1")->required();
  bundle->add_option("--steps", steps, "Samples per path");
  auto* tribar = app.add_subcommand("tribar", "Coboundary test for an impossible-figure fixture");
  tribar->add_option("input", input, "Figure fixture JSON (default: built-in tribar)")->check(CLI::ExistingFile);
  auto* pipeline = app.add_subcommand("pipeline", "Run every stage and write a report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*phantom) cmd_phantom();
    if (*project) cmd_project();
    if (*noise) cmd_noise(input, sigma);
    if (*align) cmd_align(input);
    if (*complex) cmd_complex(input);
    if (*check) cmd_cocycle_check(input);
    if (*sync) cmd_sync(input, method, normalized);
    if (*euler) cmd_euler(input, guard);
    if (*bundle) {
      std::vector<std::int64_t> m;
      std::stringstream in(m_list);
      for (std::string tok; std::getline(in, tok, ',');) {
        try {
          std::size_t used = 0;
          m.push_back(std::stoll(tok, &used));
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::logic_error&) {
          throw ValidationError("--m expects integers separated by commas, got '" + m_list + "'");
        }
      }
      cmd_bundle_make(complex_path, m, steps);
    }
    if (*tribar) cmd_tribar(input);
    if (*pipeline) cmd_pipeline();
  } catch (const StageError& e) {
    std::cerr << "error in stage " << e.stage() << ": " << e.what() << '\n';
    return e.numeric() ? 2 : 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
