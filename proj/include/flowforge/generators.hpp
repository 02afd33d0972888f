#pragma once

// Named graphs, tripod unions and truncations, subdivisions, the
// twice-subdivided tightness instances, and a heuristic canonical hash.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "flowforge/errors.hpp"
#include "flowforge/flow_algebra.hpp"
#include "flowforge/multigraph.hpp"

namespace flowforge {

namespace detail {

inline MultiGraph complete(std::size_t n) {
  MultiGraph g(n);
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline MultiGraph complete_bipartite(std::size_t a, std::size_t b) {
  MultiGraph g(a + b);
  for (VertexId i = 0; i < a; ++i)
    for (VertexId j = 0; j < b; ++j) g.add_edge(i, static_cast<VertexId>(a + j));
  return g;
}

inline MultiGraph cycle(std::size_t n) {
  MultiGraph g(n);
  for (VertexId i = 0; i < n; ++i) g.add_edge(i, static_cast<VertexId>((i + 1) % n));
  return g;
}

inline bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace detail

// Theta, Prism, Cube, V8, Petersen, Heawood, K<n>, C<n>, K<a>_<b> (or K<a>,<b>).
inline MultiGraph named(const std::string& name) {
  if (name == "Theta") {
    MultiGraph g(2);
    for (int i = 0; i < 3; ++i) g.add_edge(0, 1);
    return g;
  }
  if (name == "Prism") {
    MultiGraph g(6);
    for (VertexId i = 0; i < 3; ++i) g.add_edge(i, (i + 1) % 3);
    for (VertexId i = 0; i < 3; ++i) g.add_edge(3 + i, 3 + (i + 1) % 3);
    for (VertexId i = 0; i < 3; ++i) g.add_edge(i, i + 3);
    return g;
  }
  if (name == "Cube") {
    MultiGraph g(8);
    for (VertexId u = 0; u < 8; ++u)
      for (VertexId b = 1; b < 8; b <<= 1)
        if ((u ^ b) > u) g.add_edge(u, u ^ b);
    return g;
  }
  if (name == "V8") {
    MultiGraph g = detail::cycle(8);
    for (VertexId i = 0; i < 4; ++i) g.add_edge(i, i + 4);
    return g;
  }
  if (name == "Petersen") {
    MultiGraph g(10);
    for (VertexId i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5);
    for (VertexId i = 0; i < 5; ++i) g.add_edge(i, i + 5);
    for (VertexId i = 0; i < 5; ++i) g.add_edge(5 + i, 5 + (i + 2) % 5);
    return g;
  }
  if (name == "Heawood") {
    MultiGraph g = detail::cycle(14);
    for (VertexId i = 0; i < 14; i += 2) g.add_edge(i, (i + 5) % 14);
    return g;
  }
  if (name.size() >= 2 && name[0] == 'C' && detail::all_digits(name.substr(1))) {
    const auto n = std::stoul(name.substr(1));
    if (n == 0) throw InvalidArgument("C0 is not a graph");
    return detail::cycle(n);
  }
  if (name.size() >= 2 && name[0] == 'K') {
    const std::string rest = name.substr(1);
    const auto sep = rest.find_first_of("_,");
    if (sep == std::string::npos && detail::all_digits(rest)) return detail::complete(std::stoul(rest));
    if (sep != std::string::npos && detail::all_digits(rest.substr(0, sep)) && detail::all_digits(rest.substr(sep + 1)))
      return detail::complete_bipartite(std::stoul(rest.substr(0, sep)), std::stoul(rest.substr(sep + 1)));
  }
  throw InvalidArgument("unknown graph name '" + name + "'");
}

// ---------------------------------------------------------------- tripods ----

struct TripodUnion {
  MultiGraph graph;
  bool three_edge_connected = false;
};

// Tripod t has triangle vertices and three pendant edges ending at the shared
// leaf vertices leaves[t][0..2]. Shared vertices come first (ids 0..L-1).
inline TripodUnion tripod_union(const std::vector<std::array<VertexId, 3>>& leaves) {
  if (leaves.empty()) throw InvalidArgument("tripod union needs at least one tripod");
  VertexId shared = 0;
  for (const auto& t : leaves)
    for (VertexId v : t) shared = std::max<VertexId>(shared, v + 1);
  std::vector<char> used(shared, 0);
  for (const auto& t : leaves)
    for (VertexId v : t) used[v] = 1;
  for (VertexId v = 0; v < shared; ++v)
    if (!used[v]) throw InvalidArgument("leaf ids must be dense; " + std::to_string(v) + " is unused");
  TripodUnion out;
  MultiGraph& g = out.graph;
  for (VertexId v = 0; v < shared; ++v) g.add_vertex(v);
  for (const auto& t : leaves) {
    const VertexId a = g.add_vertex(), b = g.add_vertex(), c = g.add_vertex();
    g.add_edge(a, b);
    g.add_edge(b, c);
    g.add_edge(c, a);
    g.add_edge(a, t[0]);
    g.add_edge(b, t[1]);
    g.add_edge(c, t[2]);
  }
  out.three_edge_connected = is_k_edge_connected(g, 3);
  return out;
}

// Two-colouring of a bipartite graph; nullopt-like empty result if not bipartite.
inline std::vector<int> bipartition(const MultiGraph& g) {
  std::vector<int> side(g.vertex_count(), -1);
  for (std::size_t r = 0; r < g.vertex_count(); ++r) {
    if (side[r] >= 0) continue;
    side[r] = 0;
    std::vector<VertexId> q{g.vertices()[r]};
    for (std::size_t h = 0; h < q.size(); ++h) {
      const VertexId x = q[h];
      for (std::size_t pos : g.incident(x)) {
        const VertexId y = g.edges()[pos].other(x);
        const auto ix = g.index_of(x), iy = g.index_of(y);
        if (side[iy] < 0) {
          side[iy] = 1 - side[ix];
          q.push_back(y);
        } else if (side[iy] == side[ix]) {
          return {};
        }
      }
    }
  }
  return side;
}

// Truncates every vertex of the colour class U (all of degree 3) of a
// bipartite graph: U-vertices become tripods whose leaves are the V-vertices.
// U is the class of the first vertex if it is cubic, otherwise the other one.
inline TripodUnion truncation(const MultiGraph& h) {
  const auto side = bipartition(h);
  if (side.empty()) throw InvalidArgument("truncation needs a bipartite graph");
  auto cubic_class = [&](int c) {
    for (std::size_t i = 0; i < h.vertex_count(); ++i)
      if (side[i] == c && h.degree(h.vertices()[i]) != 3) return false;
    return true;
  };
  int u = side[0];
  if (!cubic_class(u)) u = 1 - u;
  if (!cubic_class(u)) throw InvalidArgument("no colour class of degree-3 vertices to truncate");
  std::map<VertexId, VertexId> leaf_id;
  for (std::size_t i = 0; i < h.vertex_count(); ++i)
    if (side[i] != u) leaf_id.emplace(h.vertices()[i], static_cast<VertexId>(leaf_id.size()));
  std::vector<std::array<VertexId, 3>> leaves;
  for (std::size_t i = 0; i < h.vertex_count(); ++i) {
    if (side[i] != u) continue;
    const VertexId x = h.vertices()[i];
    std::array<VertexId, 3> t{};
    std::size_t k = 0;
    for (std::size_t pos : h.incident(x)) t[k++] = leaf_id.at(h.edges()[pos].other(x));
    leaves.push_back(t);
  }
  return tripod_union(leaves);
}

// ------------------------------------------------------------ subdivision ----

struct Subdivision {
  MultiGraph graph;
  Orientation orientation;                       // every path runs u -> ... -> v
  std::map<EdgeId, std::vector<EdgeId>> paths;   // original edge -> new edges
};

// Edge e becomes a path of lengths[e] edges (default 1). Original vertices keep
// their ids; new vertices and all edges get fresh dense ids in edge order.
inline Subdivision subdivide(const MultiGraph& g, const std::map<EdgeId, std::size_t>& lengths) {
  for (auto& [e, l] : lengths) {
    if (!g.has_edge(e)) throw InvalidArgument("unknown edge id " + std::to_string(e));
    if (l < 1) throw InvalidArgument("subdivision length must be >= 1");
  }
  Subdivision s;
  for (VertexId v : g.vertices()) s.graph.add_vertex(v);
  for (const Edge& e : g.edges()) {
    auto it = lengths.find(e.id);
    const std::size_t len = it == lengths.end() ? 1 : it->second;
    VertexId at = e.u;
    auto& path = s.paths[e.id];
    for (std::size_t i = 0; i < len; ++i) {
      const VertexId to = i + 1 == len ? e.v : s.graph.add_vertex();
      const EdgeId id = s.graph.add_edge(at, to);
      s.orientation.set(id, Arc{at, to});
      path.push_back(id);
      at = to;
    }
  }
  return s;
}

inline Subdivision subdivide_uniform(const MultiGraph& g, std::size_t len) {
  std::map<EdgeId, std::size_t> l;
  for (const Edge& e : g.edges()) l.emplace(e.id, len);
  return subdivide(g, l);
}

struct TightnessInstance {
  WeightedGraph wg;
  std::map<EdgeId, std::vector<EdgeId>> paths;
};

// Every edge of a 3-edge-connected base with |E| ≡ 0 (mod 3) becomes a directed
// 3-edge path; μ = 1 on the new degree-2 vertices and 0 elsewhere.
inline TightnessInstance tightness_instance(const MultiGraph& base) {
  if (base.edge_count() % 3 != 0) throw PreconditionError("tightness base needs |E| divisible by 3");
  if (!is_k_edge_connected(base, 3)) throw PreconditionError("tightness base must be 3-edge-connected");
  Subdivision s = subdivide_uniform(base, 3);
  std::map<VertexId, std::uint8_t> mu;
  for (VertexId v : s.graph.vertices()) mu.emplace(v, base.has_vertex(v) ? 0 : 1);
  return TightnessInstance{WeightedGraph(s.graph, s.orientation, std::move(mu)), s.paths};
}

// ---------------------------------------------------------------- hashing ----

// Colour refinement seeded by degree, loop count, triangles through the
// vertex and its BFS distance profile; the sorted final colour multiset is
// hashed. Isomorphic graphs always agree; the converse is only heuristic.
inline std::string canonical_hash(const MultiGraph& g) {
  const std::size_t n = g.vertex_count();
  auto mix = [](std::uint64_t h, std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  };
  std::vector<std::map<std::size_t, std::size_t>> mult(n);  // neighbour index -> multiplicity
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) continue;
    const auto a = g.index_of(e.u), b = g.index_of(e.v);
    ++mult[a][b];
    ++mult[b][a];
  }
  std::vector<std::uint64_t> col(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t loops = 0;
    for (std::size_t pos : g.incident(g.vertices()[i])) loops += g.edges()[pos].is_loop();
    std::uint64_t tri = 0;
    for (auto [a, ka] : mult[i])
      for (auto [b, kb] : mult[i])
        if (a < b && mult[a].count(b)) tri += ka * kb * mult[a].at(b);
    std::vector<std::size_t> dist(n, SIZE_MAX);
    std::vector<std::size_t> q{i};
    dist[i] = 0;
    for (std::size_t h = 0; h < q.size(); ++h)
      for (auto [y, k] : mult[q[h]])
        if (dist[y] == SIZE_MAX) {
          dist[y] = dist[q[h]] + 1;
          q.push_back(y);
        }
    std::sort(dist.begin(), dist.end());
    std::uint64_t c = mix(mix(g.degree(g.vertices()[i]), loops), tri);
    for (auto d : dist) c = mix(c, d);
    col[i] = c;
  }
  for (std::size_t round = 0; round < n; ++round) {
    std::vector<std::uint64_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      const VertexId v = g.vertices()[i];
      std::vector<std::uint64_t> nb;
      for (std::size_t pos : g.incident(v)) {
        const Edge& e = g.edges()[pos];
        if (!e.is_loop()) nb.push_back(col[g.index_of(e.other(v))]);
      }
      std::sort(nb.begin(), nb.end());
      std::uint64_t h = col[i];
      for (auto x : nb) h = mix(h, x);
      next[i] = h;
    }
    col = std::move(next);
  }
  std::sort(col.begin(), col.end());
  std::uint64_t h = mix(n, g.edge_count());
  for (auto x : col) h = mix(h, x);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct CatalogEntry {
  std::string name;
  std::string generator;  // "generator(params)" as written in the manifest
  MultiGraph graph;
  std::string provenance;
};

}  // namespace flowforge
