#pragma once

// Multigraphs with loops and parallel edges, cut arithmetic, edge-connectivity
// predicates and the structural surgery used throughout the library
// (deletion with cleanup, contraction, degree-2 suppression).
//
// Vertex and edge ids are stable: surgery returns a fresh graph in which every
// surviving vertex/edge keeps its id, and new elements get ids above the
// previous maximum.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "flowforge/errors.hpp"

namespace flowforge {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  EdgeId id;
  VertexId u;
  VertexId v;

  bool is_loop() const noexcept { return u == v; }
  VertexId other(VertexId x) const noexcept { return x == u ? v : u; }
  bool operator==(const Edge&) const = default;
};

class MultiGraph {
 public:
  MultiGraph() = default;

  // Vertices 0..n-1, no edges.
  explicit MultiGraph(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) add_vertex(static_cast<VertexId>(i));
  }

  VertexId add_vertex() { return add_vertex(next_vertex_id_); }

  VertexId add_vertex(VertexId id) {
    if (id < next_vertex_id_ && has_vertex(id))
      throw InvalidArgument("duplicate vertex id " + std::to_string(id));
    if (vpos_.size() <= id) vpos_.resize(id + 1, -1);
    // keep vertices_ sorted
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id);
    const auto pos = static_cast<std::size_t>(it - vertices_.begin());
    vertices_.insert(it, id);
    incidence_.insert(incidence_.begin() + static_cast<std::ptrdiff_t>(pos), std::vector<std::size_t>{});
    degree_.insert(degree_.begin() + static_cast<std::ptrdiff_t>(pos), 0);
    for (std::size_t i = pos; i < vertices_.size(); ++i) vpos_[vertices_[i]] = static_cast<std::int32_t>(i);
    next_vertex_id_ = std::max<VertexId>(next_vertex_id_, id + 1);
    return id;
  }

  EdgeId add_edge(VertexId u, VertexId v) { return add_edge_with_id(next_edge_id_, u, v); }

  // Ids must be added in increasing order so edges() stays sorted by id.
  EdgeId add_edge_with_id(EdgeId id, VertexId u, VertexId v) {
    if (id < next_edge_id_) throw InvalidArgument("edge ids must increase; got " + std::to_string(id));
    const std::size_t pu = index_of(u);
    const std::size_t pv = index_of(v);
    const std::size_t pos = edges_.size();
    edges_.push_back(Edge{id, u, v});
    if (epos_.size() <= id) epos_.resize(id + 1, -1);
    epos_[id] = static_cast<std::int32_t>(pos);
    incidence_[pu].push_back(pos);
    degree_[pu] += 1;
    if (pu != pv) incidence_[pv].push_back(pos);
    degree_[pv] += 1;
    next_edge_id_ = id + 1;
    return id;
  }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }

  std::span<const VertexId> vertices() const noexcept { return vertices_; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  bool has_vertex(VertexId v) const noexcept { return v < vpos_.size() && vpos_[v] >= 0; }
  bool has_edge(EdgeId e) const noexcept { return e < epos_.size() && epos_[e] >= 0; }

  // Dense position of a vertex in vertices().
  std::size_t index_of(VertexId v) const {
    if (!has_vertex(v)) throw InvalidArgument("unknown vertex id " + std::to_string(v));
    return static_cast<std::size_t>(vpos_[v]);
  }

  // Dense position of an edge in edges().
  std::size_t edge_index(EdgeId e) const {
    if (!has_edge(e)) throw InvalidArgument("unknown edge id " + std::to_string(e));
    return static_cast<std::size_t>(epos_[e]);
  }

  const Edge& edge(EdgeId e) const { return edges_[edge_index(e)]; }

  // Positions (into edges()) of the edges incident with v, in id order; a loop
  // is listed once.
  std::span<const std::size_t> incident(VertexId v) const { return incidence_[index_of(v)]; }

  // A loop contributes 2.
  std::size_t degree(VertexId v) const { return degree_[index_of(v)]; }

  VertexId next_vertex_id() const noexcept { return next_vertex_id_; }
  EdgeId next_edge_id() const noexcept { return next_edge_id_; }

  bool operator==(const MultiGraph& o) const { return vertices_ == o.vertices_ && edges_ == o.edges_; }

 private:
  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::int32_t> vpos_;
  std::vector<std::int32_t> epos_;
  std::vector<std::vector<std::size_t>> incidence_;
  std::vector<std::size_t> degree_;
  VertexId next_vertex_id_ = 0;
  EdgeId next_edge_id_ = 0;
};

struct VertexSet {
  std::vector<VertexId> members;

  VertexSet() = default;
  VertexSet(std::initializer_list<VertexId> vs) : members(vs) {}
  explicit VertexSet(std::vector<VertexId> vs) : members(std::move(vs)) {}
};

// Direction of every edge. Defaults to (u -> v) as stored in the graph.
struct Arc {
  VertexId tail;
  VertexId head;
  bool operator==(const Arc&) const = default;
};

class Orientation {
 public:
  Orientation() = default;

  static Orientation of(const MultiGraph& g) {
    Orientation o;
    for (const Edge& e : g.edges()) o.arcs_.emplace(e.id, Arc{e.u, e.v});
    return o;
  }

  const Arc& arc(EdgeId e) const {
    auto it = arcs_.find(e);
    if (it == arcs_.end()) throw InvalidArgument("orientation has no entry for edge " + std::to_string(e));
    return it->second;
  }

  VertexId tail(EdgeId e) const { return arc(e).tail; }
  VertexId head(EdgeId e) const { return arc(e).head; }

  void set(EdgeId e, Arc a) { arcs_[e] = a; }

  void reverse(EdgeId e) {
    Arc& a = arcs_.at(e);
    std::swap(a.tail, a.head);
  }

  bool contains(EdgeId e) const { return arcs_.count(e) != 0; }
  std::size_t size() const noexcept { return arcs_.size(); }
  const std::map<EdgeId, Arc>& arcs() const noexcept { return arcs_; }

  // Every edge of g has exactly one consistent entry and nothing else is present.
  bool consistent_with(const MultiGraph& g) const {
    if (arcs_.size() != g.edge_count()) return false;
    for (const Edge& e : g.edges()) {
      auto it = arcs_.find(e.id);
      if (it == arcs_.end()) return false;
      const Arc& a = it->second;
      if (!((a.tail == e.u && a.head == e.v) || (a.tail == e.v && a.head == e.u))) return false;
    }
    return true;
  }

  bool operator==(const Orientation&) const = default;

 private:
  std::map<EdgeId, Arc> arcs_;
};

// ---------------------------------------------------------------- cuts ----

inline std::vector<char> membership(const MultiGraph& g, const VertexSet& x) {
  std::vector<char> in(g.vertex_count(), 0);
  for (VertexId v : x.members) in[g.index_of(v)] = 1;
  return in;
}

// d(X): edges with exactly one endpoint in X.
inline std::size_t cut_size(const MultiGraph& g, const VertexSet& x) {
  const auto in = membership(g, x);
  std::size_t d = 0;
  for (const Edge& e : g.edges())
    if (in[g.index_of(e.u)] != in[g.index_of(e.v)]) ++d;
  return d;
}

// Edges inside X minus |X| plus number of components of G[X].
inline long cyclomatic_number(const MultiGraph& g, const VertexSet& x) {
  const auto in = membership(g, x);
  std::vector<std::size_t> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  long inside = 0;
  long comps = 0;
  for (std::size_t i = 0; i < in.size(); ++i) comps += in[i];
  for (const Edge& e : g.edges()) {
    const auto a = g.index_of(e.u), b = g.index_of(e.v);
    if (!in[a] || !in[b]) continue;
    ++inside;
    const auto ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --comps;
    }
  }
  return inside - static_cast<long>(x.members.size()) + comps;
}

inline std::vector<std::vector<VertexId>> connected_components(const MultiGraph& g) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<std::vector<VertexId>> out;
  for (VertexId s : g.vertices()) {
    if (seen[g.index_of(s)]) continue;
    std::vector<VertexId> comp{s};
    seen[g.index_of(s)] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      for (std::size_t ep : g.incident(comp[i])) {
        const VertexId y = g.edges()[ep].other(comp[i]);
        if (!seen[g.index_of(y)]) {
          seen[g.index_of(y)] = 1;
          comp.push_back(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

inline bool is_connected(const MultiGraph& g) { return g.vertex_count() <= 1 || connected_components(g).size() == 1; }

// Connected (ignoring isolated vertices) with every degree even.
inline bool is_eulerian(const MultiGraph& g) {
  for (VertexId v : g.vertices())
    if (g.degree(v) % 2 != 0) return false;
  std::size_t nontrivial = 0;
  for (const auto& c : connected_components(g))
    if (c.size() > 1 || g.degree(c.front()) > 0) ++nontrivial;
  return nontrivial <= 1;
}

namespace detail {

inline constexpr std::size_t kExhaustiveCutLimit = 20;

// Dense adjacency summary for bitmask work on graphs with <= 64 vertices.
struct MaskGraph {
  std::size_t n = 0;
  std::vector<std::uint64_t> adj;                                  // neighbour masks (non-loop)
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> mult;  // (neighbour, multiplicity)
  std::vector<std::size_t> nonloop_degree;
  std::vector<std::pair<std::size_t, std::size_t>> edge_ends;  // every edge incl. loops

  explicit MaskGraph(const MultiGraph& g) : n(g.vertex_count()), adj(n, 0), mult(n), nonloop_degree(n, 0) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> m;
    for (const Edge& e : g.edges()) {
      const auto a = g.index_of(e.u), b = g.index_of(e.v);
      edge_ends.emplace_back(a, b);
      if (a == b) continue;
      adj[a] |= std::uint64_t{1} << b;
      adj[b] |= std::uint64_t{1} << a;
      ++nonloop_degree[a];
      ++nonloop_degree[b];
      ++m[{std::min(a, b), std::max(a, b)}];
    }
    for (const auto& [ab, k] : m) {
      mult[ab.first].emplace_back(ab.second, k);
      mult[ab.second].emplace_back(ab.first, k);
    }
  }

  std::size_t cut(std::uint64_t x) const {
    std::size_t d = 0;
    for (const auto& [a, b] : edge_ends) d += ((x >> a) & 1) != ((x >> b) & 1);
    return d;
  }

  long cyclomatic(std::uint64_t x) const {
    long inside = 0;
    for (const auto& [a, b] : edge_ends) inside += ((x >> a) & 1) && ((x >> b) & 1);
    long comps = 0;
    std::uint64_t rest = x;
    while (rest) {
      std::uint64_t frontier = rest & (~rest + 1);
      std::uint64_t comp = frontier;
      while (frontier) {
        const auto i = static_cast<std::size_t>(std::countr_zero(frontier));
        frontier &= frontier - 1;
        const std::uint64_t nb = adj[i] & x & ~comp;
        comp |= nb;
        frontier |= nb;
      }
      rest &= ~comp;
      ++comps;
    }
    return inside - std::popcount(x) + comps;
  }
};

// Calls visit(mask, d(mask)) for every nonempty X avoiding the last vertex,
// i.e. once per unordered cut {X, V\X}. Gray-code order, O(deg) per step.
template <class Visit>
void for_each_cut(const MaskGraph& mg, Visit&& visit) {
  if (mg.n < 2) return;
  const std::size_t bits = mg.n - 1;
  std::uint64_t x = 0;
  long d = 0;
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (std::uint64_t k = 1; k < total; ++k) {
    const auto i = static_cast<std::size_t>(std::countr_zero(k));
    long toward_x = 0;
    for (const auto& [j, m] : mg.mult[i])
      if ((x >> j) & 1) toward_x += static_cast<long>(m);
    const long deg = static_cast<long>(mg.nonloop_degree[i]);
    if ((x >> i) & 1) {
      x &= ~(std::uint64_t{1} << i);
      d = d - deg + 2 * toward_x;
    } else {
      x |= std::uint64_t{1} << i;
      d = d + deg - 2 * toward_x;
    }
    if (!visit(x, static_cast<std::size_t>(d))) return;
  }
}

inline bool is_k_edge_connected_exhaustive(const MultiGraph& g, std::size_t k) {
  if (g.vertex_count() <= 1) return true;
  if (g.vertex_count() > 63) throw InvalidArgument("exhaustive cut enumeration limited to 63 vertices");
  MaskGraph mg(g);
  bool ok = true;
  for_each_cut(mg, [&](std::uint64_t, std::size_t d) {
    if (d < k) ok = false;
    return ok;
  });
  return ok;
}

// Unit-capacity augmenting paths from s to t, stopping once `cap` paths are found.
inline std::size_t edge_disjoint_paths(const MultiGraph& g, std::size_t s, std::size_t t, std::size_t cap) {
  const std::size_t n = g.vertex_count();
  // arc 2i: u->v, arc 2i+1: v->u; flow[a] in {0,1}; residual of arc a = 1 - flow[a] + flow[a^1]
  std::vector<int> flow(2 * g.edge_count(), 0);
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    if (e.is_loop()) continue;
    out[g.index_of(e.u)].push_back(2 * i);
    out[g.index_of(e.v)].push_back(2 * i + 1);
  }
  auto head = [&](std::size_t a) {
    const Edge& e = g.edges()[a / 2];
    return g.index_of(a % 2 == 0 ? e.v : e.u);
  };
  std::size_t found = 0;
  while (found < cap) {
    std::vector<std::ptrdiff_t> via(n, -1);
    std::vector<char> seen(n, 0);
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty() && !seen[t]) {
      const auto x = q.front();
      q.pop();
      for (std::size_t a : out[x]) {
        const auto y = head(a);
        if (seen[y] || 1 - flow[a] + flow[a ^ 1] <= 0) continue;
        seen[y] = 1;
        via[y] = static_cast<std::ptrdiff_t>(a);
        q.push(y);
      }
    }
    if (!seen[t]) break;
    for (std::size_t y = t; y != s;) {
      const auto a = static_cast<std::size_t>(via[y]);
      if (flow[a ^ 1] > 0)
        flow[a ^ 1] = 0;
      else
        flow[a] = 1;
      const Edge& e = g.edges()[a / 2];
      y = g.index_of(a % 2 == 0 ? e.u : e.v);
    }
    ++found;
  }
  return found;
}

inline bool is_k_edge_connected_flow(const MultiGraph& g, std::size_t k) {
  if (g.vertex_count() <= 1) return true;
  if (!is_connected(g)) return false;
  for (std::size_t t = 1; t < g.vertex_count(); ++t)
    if (edge_disjoint_paths(g, 0, t, k) < k) return false;
  return true;
}

inline bool is_cyclically_k_edge_connected_exhaustive(const MultiGraph& g, std::size_t k) {
  if (k >= 2 && !is_k_edge_connected_exhaustive(g, k - 1)) return false;
  if (g.vertex_count() <= 1) return true;
  MaskGraph mg(g);
  const std::uint64_t all = (g.vertex_count() == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << g.vertex_count()) - 1);
  bool ok = true;
  for_each_cut(mg, [&](std::uint64_t x, std::size_t d) {
    if (d < k && mg.cyclomatic(x) >= 1 && mg.cyclomatic(all & ~x) >= 1) ok = false;
    return ok;
  });
  return ok;
}

// Any cut of size < k is δ(X) for X a union of components of G - S with
// S = δ(X); so enumerating edge sets of size k-1 finds every candidate once
// (k-1)-edge-connectivity is known.
inline bool is_cyclically_k_edge_connected_edge_subsets(const MultiGraph& g, std::size_t k) {
  if (k >= 2 && !is_k_edge_connected_flow(g, k - 1)) return false;
  if (g.vertex_count() <= 1 || k <= 1) return true;
  const std::size_t m = g.edge_count();
  const std::size_t s = k - 1;
  if (s > m) return true;
  std::vector<std::size_t> pick(s);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  const std::size_t n = g.vertex_count();
  while (true) {
    std::vector<char> removed(m, 0);
    for (auto p : pick) removed[p] = 1;
    // components of G - S
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (std::size_t i = 0; i < m; ++i) {
      if (removed[i]) continue;
      const Edge& e = g.edges()[i];
      parent[find(g.index_of(e.u))] = find(g.index_of(e.v));
    }
    std::map<std::size_t, std::size_t> comp_id;
    std::vector<std::size_t> comp(n);
    for (std::size_t v = 0; v < n; ++v) comp[v] = comp_id.emplace(find(v), comp_id.size()).first->second;
    const std::size_t c = comp_id.size();
    if (c >= 2 && c <= 20) {
      // per-component cyclomatic contribution: edges inside component (all of G-S
      // edges are inside some component) + S-edges with both ends in it
      for (std::uint64_t side = 1; side < (std::uint64_t{1} << (c - 1)); ++side) {
        auto in_x = [&](std::size_t v) { return ((side >> comp[v]) & 1) != 0; };
        std::size_t d = 0;
        long inside_x = 0, inside_y = 0;
        for (const Edge& e : g.edges()) {
          const bool a = in_x(g.index_of(e.u)), b = in_x(g.index_of(e.v));
          if (a != b)
            ++d;
          else if (a)
            ++inside_x;
          else
            ++inside_y;
        }
        if (d >= k) continue;
        // components of G[X]: components of G - S inside X, merged by S-edges inside X
        std::vector<std::size_t> cp(c);
        std::iota(cp.begin(), cp.end(), std::size_t{0});
        auto cf = [&](std::size_t a) {
          while (cp[a] != a) a = cp[a] = cp[cp[a]];
          return a;
        };
        for (auto p : pick) {
          const Edge& e = g.edges()[p];
          const auto ca = comp[g.index_of(e.u)], cb = comp[g.index_of(e.v)];
          if (((side >> ca) & 1) == ((side >> cb) & 1)) cp[cf(ca)] = cf(cb);
        }
        long vx = 0, vy = 0, cx = 0, cy = 0;
        for (std::size_t v = 0; v < n; ++v) (in_x(v) ? vx : vy) += 1;
        for (std::size_t i = 0; i < c; ++i)
          if (cf(i) == i) (((side >> i) & 1) ? cx : cy) += 1;
        if (inside_x - vx + cx >= 1 && inside_y - vy + cy >= 1) return false;
      }
    }
    // next combination
    std::size_t i = s;
    while (i > 0 && pick[i - 1] == m - s + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
  }
  return true;
}

}  // namespace detail

inline bool is_k_edge_connected(const MultiGraph& g, std::size_t k) {
  if (g.vertex_count() <= 1) return true;
  if (!is_connected(g)) return false;
  if (g.vertex_count() <= detail::kExhaustiveCutLimit) return detail::is_k_edge_connected_exhaustive(g, k);
  return detail::is_k_edge_connected_flow(g, k);
}

inline bool is_cyclically_k_edge_connected(const MultiGraph& g, std::size_t k) {
  if (g.vertex_count() <= detail::kExhaustiveCutLimit) return detail::is_cyclically_k_edge_connected_exhaustive(g, k);
  return detail::is_cyclically_k_edge_connected_edge_subsets(g, k);
}

// 2-edge-connected and cyclically 3-edge-connected.
inline bool is_subdivision_of_3ec(const MultiGraph& g) {
  return is_k_edge_connected(g, 2) && is_cyclically_k_edge_connected(g, 3);
}

// ------------------------------------------------------------- surgery ----

// Merges the ends of e into the smaller-id endpoint; e disappears and any other
// edge parallel to e becomes a loop. Contracting a loop just deletes it.
inline MultiGraph contract_edge(const MultiGraph& g, EdgeId e) {
  const Edge ce = g.edge(e);
  const VertexId keep = std::min(ce.u, ce.v);
  const VertexId gone = std::max(ce.u, ce.v);
  MultiGraph out;
  for (VertexId v : g.vertices())
    if (ce.is_loop() || v != gone) out.add_vertex(v);
  for (const Edge& f : g.edges()) {
    if (f.id == e) continue;
    const VertexId a = f.u == gone ? keep : f.u;
    const VertexId b = f.v == gone ? keep : f.v;
    out.add_edge_with_id(f.id, a, b);
  }
  return out;
}

// (g - edges)^x: drop the listed edges, then every vertex left with degree 0.
inline MultiGraph delete_and_clean(const MultiGraph& g, const std::set<EdgeId>& edges) {
  for (EdgeId e : edges)
    if (!g.has_edge(e)) throw InvalidArgument("unknown edge id " + std::to_string(e));
  std::vector<std::size_t> deg(g.vertex_count(), 0);
  for (const Edge& f : g.edges()) {
    if (edges.count(f.id)) continue;
    deg[g.index_of(f.u)] += 1;
    deg[g.index_of(f.v)] += 1;
  }
  MultiGraph out;
  for (VertexId v : g.vertices())
    if (deg[g.index_of(v)] > 0) out.add_vertex(v);
  for (const Edge& f : g.edges())
    if (!edges.count(f.id)) out.add_edge_with_id(f.id, f.u, f.v);
  return out;
}

// A maximal trail through degree-2 vertices; vertices.size() == edges.size() + 1.
struct Chain {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  bool closed() const { return vertices.front() == vertices.back(); }
};

namespace detail {

struct ChainSplit {
  std::vector<Chain> chains;  // both ends have degree != 2
  std::vector<Chain> cycles;  // components in which every vertex has degree 2
};

// Walks from each vertex of degree != 2 (ascending id) along each unvisited
// incident edge (ascending id) through degree-2 vertices.
inline ChainSplit trace_chains(const MultiGraph& g) {
  ChainSplit out;
  std::vector<char> used(g.edge_count(), 0);
  auto walk = [&](VertexId start, std::size_t first_pos) {
    Chain c;
    c.vertices.push_back(start);
    std::size_t pos = first_pos;
    VertexId at = start;
    while (true) {
      used[pos] = 1;
      const Edge& e = g.edges()[pos];
      c.edges.push_back(e.id);
      at = e.other(at);
      c.vertices.push_back(at);
      if (g.degree(at) != 2 || at == start) break;
      std::size_t next = pos;
      for (std::size_t p : g.incident(at))
        if (p != pos) next = p;
      if (next == pos || used[next]) break;
      pos = next;
    }
    return c;
  };
  for (VertexId v : g.vertices()) {
    if (g.degree(v) == 2) continue;
    for (std::size_t p : g.incident(v))
      if (!used[p]) out.chains.push_back(walk(v, p));
  }
  for (VertexId v : g.vertices()) {
    for (std::size_t p : g.incident(v))
      if (!used[p]) out.cycles.push_back(walk(v, p));
  }
  return out;
}

}  // namespace detail

struct Suppression {
  MultiGraph graph;
  // new edge id -> original edges in path order starting at the new edge's u
  std::map<EdgeId, std::vector<EdgeId>> paths;
  std::map<EdgeId, std::vector<VertexId>> path_vertices;
};

// Replaces every maximal path through degree-2 vertices by one edge. New edge
// ids are dense in trace order; surviving vertices keep their ids. A component
// that is a cycle of degree-2 vertices has nothing to anchor to and is rejected.
inline Suppression suppress_degree_two(const MultiGraph& g) {
  auto split = detail::trace_chains(g);
  if (!split.cycles.empty())
    throw PreconditionError("component is a cycle of degree-2 vertices (through vertex " +
                            std::to_string(split.cycles.front().vertices.front()) + "); nothing to suppress onto");
  Suppression s;
  for (VertexId v : g.vertices())
    if (g.degree(v) != 2) s.graph.add_vertex(v);
  for (auto& c : split.chains) {
    const EdgeId id = s.graph.add_edge(c.vertices.front(), c.vertices.back());
    s.paths.emplace(id, std::move(c.edges));
    s.path_vertices.emplace(id, std::move(c.vertices));
  }
  return s;
}

}  // namespace flowforge
