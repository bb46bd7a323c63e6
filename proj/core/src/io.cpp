#include "cocyclem/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "cocyclem/errors.hpp"

namespace cocyclem::io {
namespace {

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ValidationError(std::string(what) + ": " + e.what());
  }
}

std::string format_double(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + " is not valid JSON: " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

json complex_to_json(const SimplicialComplex2& k) {
  return {{"vertices", k.vertex_count()}, {"edges", k.edges()}, {"triangles", k.triangles()}};
}

SimplicialComplex2 complex_from_json(const json& j) {
  return guarded("complex JSON", [&] {
    return SimplicialComplex2(j.at("vertices").get<std::size_t>(), j.value("edges", std::vector<Edge>{}),
                              j.value("triangles", std::vector<Triangle>{}));
  });
}

json homology_to_json(const HomologyProfile& h) {
  return {{"betti", h.betti}, {"torsion_h1", h.torsion_h1}, {"h2_generators", h.h2_generators}};
}

json sweep_to_json(const std::vector<SweepRecord>& sweep) {
  json out = json::array();
  for (const auto& r : sweep) {
    out.push_back({{"epsilon", r.epsilon},
                   {"edges", r.edge_count},
                   {"triangles", r.triangle_count},
                   {"betti", r.homology.betti},
                   {"torsion_h1", r.homology.torsion_h1}});
  }
  return out;
}

json molecule_to_json(const Molecule& m) {
  json comps = json::array();
  for (const auto& c : m.components()) comps.push_back({{"w", c.weight}, {"mu", c.center}, {"s", c.width}});
  return {{"components", comps}};
}

Molecule molecule_from_json(const json& j) {
  return guarded("molecule JSON", [&] {
    std::vector<GaussianComponent> comps;
    for (const auto& c : j.at("components")) {
      comps.push_back({c.at("w").get<double>(), c.at("mu").get<Vec3>(), c.at("s").get<double>()});
    }
    return Molecule(std::move(comps));
  });
}

json ground_truth_to_json(const std::vector<GroundTruth>& truth) {
  json frames = json::array();
  for (const auto& t : truth) {
    frames.push_back({{"a", t.frame.a},
                      {"b", t.frame.b},
                      {"c", t.frame.c},
                      {"in_plane_angle", t.in_plane_angle},
                      {"cluster", t.cluster}});
  }
  return {{"n", truth.size()}, {"frames", frames}};
}

std::vector<GroundTruth> ground_truth_from_json(const json& j) {
  return guarded("ground truth JSON", [&] {
    std::vector<GroundTruth> out;
    for (const auto& f : j.at("frames")) {
      GroundTruth t;
      t.frame = {f.at("a").get<Vec3>(), f.at("b").get<Vec3>(), f.at("c").get<Vec3>()};
      t.in_plane_angle = f.at("in_plane_angle").get<double>();
      t.cluster = f.value("cluster", std::size_t{0});
      out.push_back(t);
    }
    return out;
  });
}

json comparisons_to_json(const PairwiseComparisons& d) {
  json pairs = json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      pairs.push_back({{"i", i}, {"j", j}, {"d", d.distance(i, j)}, {"theta", d.rotation(i, j).signed_angle()}, {"gap", d.gap(i, j)}});
    }
  }
  return {{"n", d.size()}, {"pairs", pairs}};
}

PairwiseComparisons comparisons_from_json(const json& j) {
  return guarded("comparisons JSON", [&] {
    const auto n = j.at("n").get<std::size_t>();
    PairwiseComparisons d(n);
    std::vector<char> seen(n * n, 0);
    for (const auto& p : j.at("pairs")) {
      const auto i = p.at("i").get<std::size_t>(), jj = p.at("j").get<std::size_t>();
      if (!(i < jj) || jj >= n) throw ValidationError("comparison pairs must satisfy i < j < n");
      AlignmentResult r;
      r.distance = p.at("d").get<double>();
      r.g = Rotation(p.at("theta").get<double>());
      r.ambiguity_gap = p.value("gap", 0.0);
      d.set(i, jj, r);
      seen[i * n + jj] = 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t jj = i + 1; jj < n; ++jj) {
        if (!seen[i * n + jj]) {
          throw ValidationError("comparisons JSON is missing pair (" + std::to_string(i) + "," + std::to_string(jj) + ")");
        }
      }
    }
    return d;
  });
}

std::string distances_to_csv(const PairwiseComparisons& d) {
  std::ostringstream out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) out << (j ? "," : "") << format_double(d.distance(i, j));
    out << '\n';
  }
  return out.str();
}

json cocycle_to_json(const DiscreteCocycle& z) {
  json edges = json::array();
  const auto& k = z.complex();
  for (std::size_t e = 0; e < k.edges().size(); ++e) {
    edges.push_back({{"i", k.edges()[e][0]}, {"j", k.edges()[e][1]}, {"theta", z.theta()[e]}});
  }
  return {{"vertices", k.vertex_count()}, {"edges", edges}, {"triangles", k.triangles()}};
}

DiscreteCocycle cocycle_from_json(const json& j) {
  return guarded("cocycle JSON", [&] {
    std::vector<std::pair<Edge, double>> entries;
    std::size_t n = 0;
    for (const auto& e : j.at("edges")) {
      std::size_t a = e.at("i").get<std::size_t>(), b = e.at("j").get<std::size_t>();
      double theta = e.at("theta").get<double>();
      if (a > b) {
        std::swap(a, b);
        theta = -theta;
      }
      n = std::max(n, b + 1);
      entries.push_back({{a, b}, theta});
    }
    if (j.contains("vertices")) n = std::max(n, j.at("vertices").get<std::size_t>());
    if (n == 0) n = 1;
    std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<Edge> edges;
    std::vector<double> theta;
    for (const auto& [e, t] : entries) {
      edges.push_back(e);
      theta.push_back(t);
    }
    SimplicialComplex2 k = j.contains("triangles")
                               ? SimplicialComplex2(n, edges, j.at("triangles").get<std::vector<Triangle>>())
                               : clique_complex(EpsilonGraph{n, 1.0, edges});
    return DiscreteCocycle(std::move(k), std::move(theta));
  });
}

json residuals_to_json(const DiscreteCocycle& z, const ResidualReport& r, std::size_t worst) {
  json out = {{"delta", r.delta}, {"delta_i", r.delta_i}, {"triangles", r.per_triangle.size()}};
  if (r.rho_i) {
    out["rho_i"] = *r.rho_i;
    std::vector<std::size_t> order(r.rho_i->size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return (*r.rho_i)[a] > (*r.rho_i)[b]; });
    json ranked = json::array();
    for (auto v : order) ranked.push_back({{"vertex", v}, {"rho", (*r.rho_i)[v]}});
    out["rho_ranked"] = ranked;
  } else {
    out["rho_i"] = nullptr;
    out["rho_ranked"] = json::array();
  }
  std::vector<std::size_t> tri(r.per_triangle.size());
  std::iota(tri.begin(), tri.end(), 0);
  std::stable_sort(tri.begin(), tri.end(),
                   [&](auto a, auto b) { return std::abs(r.per_triangle[a]) > std::abs(r.per_triangle[b]); });
  json w = json::array();
  for (std::size_t k = 0; k < std::min(worst, tri.size()); ++k) {
    w.push_back({{"triangle", z.complex().triangles()[tri[k]]}, {"theta", r.per_triangle[tri[k]]}});
  }
  out["worst_triangles"] = w;
  return out;
}

std::string rho_to_csv(const ResidualReport& r) {
  std::ostringstream out;
  out << "vertex,delta_i,rho_i\n";
  for (std::size_t v = 0; v < r.delta_i.size(); ++v) {
    out << v << ',' << format_double(r.delta_i[v]) << ',' << (r.rho_i ? format_double((*r.rho_i)[v]) : "") << '\n';
  }
  return out.str();
}

json sync_to_json(const Synchronization& s) {
  return {{"method", to_string(s.method)},
          {"phi", s.phi},
          {"residual_after", s.residual_after},
          {"iterations", s.iterations}};
}

json continuous_cocycle_to_json(const ContinuousCocycle& z) {
  const auto& k = z.complex();
  json anchors = json::array();
  for (std::size_t e = 0; e < k.edges().size(); ++e) {
    anchors.push_back({{"i", k.edges()[e][0]}, {"j", k.edges()[e][1]}, {"theta", z.anchors()[e]}});
  }
  json paths = json::array();
  for (std::size_t t = 0; t < k.triangles().size(); ++t) {
    const auto& [a, b, c] = k.triangles()[t];
    const std::array<Edge, 3> slots{Edge{a, b}, Edge{b, c}, Edge{a, c}};
    for (std::size_t s = 0; s < 3; ++s) {
      paths.push_back({{"triangle", k.triangles()[t]}, {"edge", slots[s]}, {"samples", z.paths()[t][s]}});
    }
  }
  return {{"complex", complex_to_json(k)},
          {"steps", z.steps()},
          {"cocycle_tolerance", z.cocycle_tolerance()},
          {"anchors", anchors},
          {"paths", paths}};
}

ContinuousCocycle continuous_cocycle_from_json(const json& j) {
  return guarded("continuous cocycle JSON", [&] {
    SimplicialComplex2 k = complex_from_json(j.at("complex"));
    std::vector<double> anchors(k.edges().size(), 0.0);
    std::vector<char> have_anchor(anchors.size(), 0);
    for (const auto& a : j.at("anchors")) {
      const auto e = k.edge_index(a.at("i").get<std::size_t>(), a.at("j").get<std::size_t>());
      if (!e) throw ValidationError("anchor on an edge not in the complex");
      anchors[*e] = a.at("theta").get<double>();
      have_anchor[*e] = 1;
    }
    if (std::find(have_anchor.begin(), have_anchor.end(), 0) != have_anchor.end()) {
      throw ValidationError("every edge needs an anchor");
    }
    std::map<Triangle, std::size_t> tri_index;
    for (std::size_t t = 0; t < k.triangles().size(); ++t) tri_index[k.triangles()[t]] = t;
    std::vector<ContinuousCocycle::TrianglePaths> paths(k.triangles().size());
    for (const auto& p : j.at("paths")) {
      const auto tri = p.at("triangle").get<Triangle>();
      const auto edge = p.at("edge").get<Edge>();
      auto it = tri_index.find(tri);
      if (it == tri_index.end()) throw ValidationError("path on a triangle not in the complex");
      const auto& [a, b, c] = tri;
      std::size_t slot = 3;
      if (edge == Edge{a, b}) slot = 0;
      if (edge == Edge{b, c}) slot = 1;
      if (edge == Edge{a, c}) slot = 2;
      if (slot == 3) throw ValidationError("path edge is not a face of its triangle");
      paths[it->second][slot] = p.at("samples").get<std::vector<double>>();
    }
    return ContinuousCocycle(std::move(k), std::move(anchors), std::move(paths), j.value("cocycle_tolerance", 1e-6));
  });
}

json euler_to_json(const SimplicialComplex2& k, const EulerCochain& c, const EulerVector& m) {
  json cochain = json::array();
  for (std::size_t t = 0; t < c.c.size(); ++t) cochain.push_back({{"triangle", k.triangles()[t]}, {"c", c.c[t]}});
  return {{"b2", m.size()}, {"cochain", cochain}, {"m", m}};
}

json positive_cochain_to_json(const PositiveCochain& g) {
  json entries = json::array();
  for (const auto& e : g.entries()) entries.push_back({{"i", e.i}, {"j", e.j}, {"g", e.g}});
  return {{"n", g.size()}, {"g", entries}};
}

PositiveCochain positive_cochain_from_json(const json& j) {
  return guarded("cochain JSON", [&] {
    const auto n = j.at("n").get<std::size_t>();
    if (j.contains("distances")) {
      std::vector<EndDistances> d;
      for (const auto& x : j.at("distances")) {
        d.push_back({x.at("i").get<std::size_t>(), x.at("j").get<std::size_t>(), x.at("d_ij").get<double>(),
                     x.at("d_ji").get<double>()});
      }
      return from_distances(n, d);
    }
    std::vector<PositiveCochain::Entry> entries;
    for (const auto& x : j.at("g")) {
      entries.push_back({x.at("i").get<std::size_t>(), x.at("j").get<std::size_t>(), x.at("g").get<double>()});
    }
    return PositiveCochain(n, std::move(entries));
  });
}

json distances_fixture_to_json(std::size_t n, const std::vector<EndDistances>& d) {
  json list = json::array();
  for (const auto& x : d) list.push_back({{"i", x.i}, {"j", x.j}, {"d_ij", x.d_ij}, {"d_ji", x.d_ji}});
  return {{"n", n}, {"distances", list}};
}

}  // namespace cocyclem::io
