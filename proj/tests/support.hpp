#pragma once

// Shared fixtures for the test suites: catalog access, random graphs and a
// brute-force flow oracle that does not touch the solver.

#include <random>
#include <string>
#include <vector>

#include "flowforge/flowforge.hpp"

namespace fftest {

using namespace flowforge;

inline std::string data_path(const std::string& rel) { return std::string(FLOWFORGE_DATA_DIR) + "/" + rel; }

inline std::vector<MultiGraph> catalog(const std::string& file) {
  return parse_graph6_lines(detail::slurp(data_path("catalog/" + file)));
}

inline std::vector<MultiGraph> catalog_filtered(const std::string& file, const std::string& filter) {
  std::vector<MultiGraph> out;
  for (auto& g : catalog(file))
    if (passes_filter(g, filter)) out.push_back(std::move(g));
  return out;
}

// Random multigraph on n vertices: a random spanning tree plus extra edges,
// optionally with loops and parallels.
inline MultiGraph random_multigraph(std::mt19937_64& rng, std::size_t n, std::size_t extra, bool loops = true) {
  MultiGraph g(n);
  for (std::size_t i = 1; i < n; ++i) g.add_edge(static_cast<VertexId>(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng)), static_cast<VertexId>(i));
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t k = 0; k < extra; ++k) {
    VertexId a = static_cast<VertexId>(pick(rng)), b = static_cast<VertexId>(pick(rng));
    if (!loops)
      while (a == b && n > 1) b = static_cast<VertexId>(pick(rng));
    g.add_edge(a, b);
  }
  return g;
}

inline Orientation random_orientation(std::mt19937_64& rng, const MultiGraph& g) {
  Orientation o;
  for (const Edge& e : g.edges()) {
    const bool flip = rng() & 1;
    o.set(e.id, flip ? Arc{e.v, e.u} : Arc{e.u, e.v});
  }
  return o;
}

inline std::map<VertexId, std::uint8_t> random_zero_sum(std::mt19937_64& rng, const MultiGraph& g) {
  std::map<VertexId, std::uint8_t> mu;
  unsigned s = 0;
  for (std::size_t i = 0; i + 1 < g.vertex_count(); ++i) {
    const auto x = static_cast<std::uint8_t>(rng() % 3);
    mu[g.vertices()[i]] = x;
    s += x;
  }
  if (g.vertex_count()) mu[g.vertices().back()] = static_cast<std::uint8_t>((3 - s % 3) % 3);
  return mu;
}

// Max support over all |A|^m labellings with boundary mu, computed edge by
// edge without using the cycle space; -1 if none exists.
inline long brute_force_optimum(const MultiGraph& g, const Orientation& o, const VertexWeights& mu, const GroupSpec& group) {
  const std::size_t m = g.edge_count();
  const std::uint32_t q = group.order();
  std::vector<Element> val(m, 0);
  long best = -1;
  while (true) {
    std::map<VertexId, Element> b;
    for (VertexId v : g.vertices()) b[v] = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Edge& e = g.edges()[i];
      const Arc& a = o.arc(e.id);
      if (a.tail == a.head) continue;
      b[a.tail] = group.add(b[a.tail], val[i]);
      b[a.head] = group.sub(b[a.head], val[i]);
    }
    bool ok = true;
    for (VertexId v : g.vertices()) ok = ok && b[v] == mu.at(v);
    if (ok) {
      long s = 0;
      for (auto x : val) s += x != 0;
      best = std::max(best, s);
    }
    std::size_t k = 0;
    while (k < m && ++val[k] == q) val[k++] = 0;
    if (k == m) break;
  }
  return best;
}

inline VertexWeights elements(const std::map<VertexId, std::uint8_t>& mu) {
  VertexWeights w;
  for (auto [v, x] : mu) w.emplace(v, x);
  return w;
}

inline VertexWeights zeros(const MultiGraph& g) {
  VertexWeights w;
  for (VertexId v : g.vertices()) w.emplace(v, 0);
  return w;
}

inline bool is_cubic(const MultiGraph& g) {
  for (VertexId v : g.vertices())
    if (g.degree(v) != 3) return false;
  return g.vertex_count() > 0;
}

}  // namespace fftest
