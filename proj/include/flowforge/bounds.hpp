#pragma once

// Constructive support bounds: the 3/4 three-flow obtained from a nowhere-zero
// Z3 x Z3 flow, the 14/15 four-flow from a pair of perfect matchings, and the
// 2j/(2j+1) two-flow from one perfect matching.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flowforge/errors.hpp"
#include "flowforge/flow_algebra.hpp"
#include "flowforge/group.hpp"
#include "flowforge/multigraph.hpp"
#include "flowforge/solver.hpp"

namespace flowforge {

namespace detail {

inline MultiGraph without_loops(const MultiGraph& g) {
  std::set<EdgeId> loops;
  for (const Edge& e : g.edges())
    if (e.is_loop()) loops.insert(e.id);
  MultiGraph h;
  for (VertexId v : g.vertices()) h.add_vertex(v);
  for (const Edge& e : g.edges())
    if (!loops.count(e.id)) h.add_edge_with_id(e.id, e.u, e.v);
  return h;
}

inline VertexWeights zero_weights(const MultiGraph& g) {
  VertexWeights mu;
  for (VertexId v : g.vertices()) mu.emplace(v, 0);
  return mu;
}

}  // namespace detail

// ±1 relative to the host orientation, so that every vertex is balanced on
// the listed edges (which must induce even degrees). Closed trails are walked
// greedily from the smallest vertex with an unused edge.
inline std::map<EdgeId, int> balanced_signs(const MultiGraph& g, const Orientation& o, const std::set<EdgeId>& edges) {
  std::map<VertexId, std::size_t> deg;
  for (EdgeId e : edges) {
    const Edge& f = g.edge(e);
    ++deg[f.u];
    ++deg[f.v];
  }
  for (auto& [v, d] : deg)
    if (d % 2) throw InvalidArgument("edge set has odd degree at vertex " + std::to_string(v));
  std::map<EdgeId, int> sign;
  std::set<EdgeId> left = edges;
  while (!left.empty()) {
    // stuck only back at the start, since every degree is even
    VertexId at = g.edge(*left.begin()).u;
    while (true) {
      std::optional<EdgeId> next;
      for (std::size_t pos : g.incident(at))
        if (left.count(g.edges()[pos].id)) {
          next = g.edges()[pos].id;
          break;
        }
      if (!next) break;
      left.erase(*next);
      sign[*next] = o.tail(*next) == at ? +1 : -1;
      at = g.edge(*next).other(at);
    }
  }
  return sign;
}

// -------------------------------------------------------------- 3 / 4 ----

inline FlowCertificate eulerian_two_flow(const MultiGraph& g, const GroupSpec& group, Element one) {
  const Orientation o = Orientation::of(g);
  std::set<EdgeId> all;
  for (const Edge& e : g.edges()) all.insert(e.id);
  const auto s = balanced_signs(g, o, all);
  EdgeLabelling phi(group);
  IntegerFlow f;
  f.bound = 2;
  for (const Edge& e : g.edges()) {
    const int x = s.at(e.id);
    phi.values[e.id] = x > 0 ? one : group.neg(one);
    f.values[e.id] = x;
  }
  auto c = certify(g, o, detail::zero_weights(g), phi);
  c.integer_witness = f;
  return c;
}

// Z3 x Z3 automorphism sending inverse-pair class `cls` to {(1,2),(2,1)}.
inline Element send_class_to_last(const GroupSpec& g33, std::size_t cls, Element a) {
  const long long x = g33.component(a, 0), y = g33.component(a, 1);
  switch (cls) {
    case 0: return g33.make({x + y, 2 * y});
    case 1: return g33.make({x, 2 * x + y});
    case 2: return g33.make({x, 2 * y});
    default: return a;
  }
}

struct ThreeQuarterResult {
  FlowCertificate certificate;
  std::array<std::size_t, 4> class_counts{};
  std::size_t dropped_class = 3;
  bool eulerian = false;
};

inline ThreeQuarterResult three_quarter_flow_detailed(const MultiGraph& g, const SolveOptions& opt = {}) {
  if (!is_k_edge_connected(g, 2)) throw PreconditionError("3/4 construction needs a 2-edge-connected graph");
  ThreeQuarterResult out;
  const Orientation o = Orientation::of(g);
  if (is_eulerian(g)) {
    out.eulerian = true;
    out.certificate = eulerian_two_flow(g, GroupSpec::z3(), 1);
    return out;
  }
  const MultiGraph h = detail::without_loops(g);
  const GroupSpec g33 = GroupSpec::z3z3();
  SolveOptions so = opt;
  so.stop_when_full = true;
  so.threads = 1;
  const auto r = max_support_flow(h, Orientation::of(h), detail::zero_weights(h), g33, so);
  if (r.optimum != h.edge_count()) throw PreconditionError("no nowhere-zero Z3 x Z3 flow found within the enumeration budget");
  const EdgeLabelling& pair = r.certificate.labelling;
  out.class_counts = pair_class_counts(pair);
  out.dropped_class = static_cast<std::size_t>(std::min_element(out.class_counts.begin(), out.class_counts.end()) - out.class_counts.begin());
  EdgeLabelling phi(GroupSpec::z3());
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) {
      phi.values[e.id] = 1;
      continue;
    }
    const Element t = send_class_to_last(g33, out.dropped_class, pair.at(e.id));
    phi.values[e.id] = static_cast<Element>((g33.component(t, 0) + g33.component(t, 1)) % 3);
  }
  out.certificate = certify(g, o, detail::zero_weights(g), phi);
  if (!out.certificate.boundary_ok) throw InvariantViolation("3/4 construction produced a non-flow");
  out.certificate.integer_witness = lift_modular_to_integer(g, o, phi);
  return out;
}

inline FlowCertificate three_quarter_flow(const MultiGraph& g, const SolveOptions& opt = {}) {
  return three_quarter_flow_detailed(g, opt).certificate;
}

// ------------------------------------------------------------- lifting ----

struct LiftStep {
  VertexId at;
  EdgeId e;
  EdgeId f;
  VertexId new_vertex;
};

struct WeightedCubicReduction {
  MultiGraph lifted;         // G'
  Suppression suppressed;    // G'' with the paths P_e
  std::map<EdgeId, std::size_t> w;  // |P_e|
  std::vector<LiftStep> trace;

  std::size_t total_weight() const {
    std::size_t s = 0;
    for (auto& [e, x] : w) s += x;
    return s;
  }
};

enum class LiftTarget { subcubic, two_flow };

inline MultiGraph lift_pair(const MultiGraph& g, VertexId v, EdgeId e, EdgeId f, VertexId x) {
  MultiGraph h;
  for (VertexId u : g.vertices()) h.add_vertex(u);
  h.add_vertex(x);
  for (const Edge& d : g.edges()) {
    if (d.id == e || d.id == f) {
      const VertexId other = d.other(v);
      h.add_edge_with_id(d.id, x, other);
    } else {
      h.add_edge_with_id(d.id, d.u, d.v);
    }
  }
  return h;
}

// Lifts at the smallest vertex that still exceeds its degree target, trying
// pairs in edge-id order and keeping the first that passes the connectivity
// recheck. Targets: subcubic (every degree <= 3), or for the 2-flow bound
// with parameter j, even degrees >= 4 and odd degrees >= 2j+3 are lifted.
inline WeightedCubicReduction mader_lift_to_subcubic(const MultiGraph& g, LiftTarget target = LiftTarget::subcubic, int j = 1) {
  if (!is_k_edge_connected(g, 2)) throw PreconditionError("lifting needs a 2-edge-connected graph");
  for (const Edge& e : g.edges())
    if (e.is_loop()) throw PreconditionError("lifting expects a loopless graph");
  const bool keep_cyclic3 = is_cyclically_k_edge_connected(g, 3);
  auto needs = [&](const MultiGraph& h, VertexId v) {
    const std::size_t d = h.degree(v);
    if (target == LiftTarget::subcubic) return d > 3;
    return (d % 2 == 0 && d >= 4) || (d % 2 == 1 && d >= static_cast<std::size_t>(2 * j + 3));
  };
  WeightedCubicReduction r;
  MultiGraph cur = g;
  while (true) {
    std::optional<VertexId> v;
    for (VertexId u : cur.vertices())
      if (needs(cur, u)) {
        v = u;
        break;
      }
    if (!v) break;
    std::vector<EdgeId> inc;
    for (std::size_t pos : cur.incident(*v)) inc.push_back(cur.edges()[pos].id);
    bool done = false;
    for (std::size_t a = 0; a < inc.size() && !done; ++a)
      for (std::size_t b = a + 1; b < inc.size() && !done; ++b) {
        const VertexId x = cur.next_vertex_id();
        MultiGraph h = lift_pair(cur, *v, inc[a], inc[b], x);
        if (!is_k_edge_connected(h, 2)) continue;
        if (keep_cyclic3 && !is_cyclically_k_edge_connected(h, 3)) continue;
        r.trace.push_back({*v, inc[a], inc[b], x});
        cur = std::move(h);
        done = true;
      }
    if (!done) throw InvariantViolation("no admissible lift at vertex " + std::to_string(*v));
  }
  r.lifted = cur;
  r.suppressed = suppress_degree_two(cur);
  for (auto& [e, path] : r.suppressed.paths) r.w.emplace(e, path.size());
  if (r.total_weight() != g.edge_count()) throw InvariantViolation("path weights do not add up to |E|");
  return r;
}

// ----------------------------------------------------------- matchings ----

// Every perfect matching (as sorted edge-id lists), branching on the lowest
// unmatched vertex. Loops never match. Throws once `cap` matchings are exceeded.
inline std::vector<std::vector<EdgeId>> perfect_matchings(const MultiGraph& g, std::size_t cap = 1000000) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<EdgeId>> out;
  if (n % 2) return out;
  std::vector<char> matched(n, 0);
  std::vector<EdgeId> cur;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    while (from < n && matched[from]) ++from;
    if (from == n) {
      out.push_back(cur);
      std::sort(out.back().begin(), out.back().end());
      if (out.size() > cap) throw PreconditionError("perfect matching enumeration exceeded its cap");
      return;
    }
    const VertexId v = g.vertices()[from];
    for (std::size_t pos : g.incident(v)) {
      const Edge& e = g.edges()[pos];
      if (e.is_loop()) continue;
      const std::size_t y = g.index_of(e.other(v));
      if (matched[y]) continue;
      matched[from] = matched[y] = 1;
      cur.push_back(e.id);
      self(self, from + 1);
      cur.pop_back();
      matched[from] = matched[y] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

struct MatchingPair {
  std::vector<EdgeId> m1, m2;
  std::uint64_t intersection_weight = 0;
  std::uint64_t total_weight = 0;
};

inline MatchingPair matching_pair_small_intersection(const MultiGraph& g, const std::map<EdgeId, std::size_t>& w) {
  for (VertexId v : g.vertices())
    if (g.degree(v) != 3) throw PreconditionError("matching pair needs a cubic graph");
  if (!is_k_edge_connected(g, 2)) throw PreconditionError("matching pair needs a bridgeless graph");
  auto weight = [&](EdgeId e) -> std::uint64_t {
    auto it = w.find(e);
    return it == w.end() ? 1 : it->second;
  };
  const auto ms = perfect_matchings(g);
  if (ms.empty()) throw InvariantViolation("bridgeless cubic graph without a perfect matching");
  MatchingPair best;
  for (const Edge& e : g.edges()) best.total_weight += weight(e.id);
  bool have = false;
  for (std::size_t a = 0; a < ms.size(); ++a)
    for (std::size_t b = a; b < ms.size(); ++b) {
      std::uint64_t s = 0;
      std::size_t i = 0, k = 0;
      while (i < ms[a].size() && k < ms[b].size()) {
        if (ms[a][i] == ms[b][k]) {
          s += weight(ms[a][i]);
          ++i;
          ++k;
        } else if (ms[a][i] < ms[b][k]) {
          ++i;
        } else {
          ++k;
        }
      }
      if (!have || s < best.intersection_weight) {
        have = true;
        best.m1 = ms[a];
        best.m2 = ms[b];
        best.intersection_weight = s;
      }
    }
  if (15 * best.intersection_weight > best.total_weight)
    throw InvariantViolation("best matching pair exceeds w(E)/15");
  return best;
}

// ---------------------------------------------------------------- 14/15 ----

inline FlowCertificate fourteen_fifteenths_flow(const MultiGraph& g) {
  if (!is_k_edge_connected(g, 2)) throw PreconditionError("14/15 construction needs a 2-edge-connected graph");
  const GroupSpec g22 = GroupSpec::z2z2();
  const Element one0 = g22.make({1, 0});
  if (is_eulerian(g)) return eulerian_two_flow(g, g22, one0);
  const MultiGraph h = detail::without_loops(g);
  const auto red = mader_lift_to_subcubic(h, LiftTarget::subcubic);
  const auto pair = matching_pair_small_intersection(red.suppressed.graph, red.w);
  const std::set<EdgeId> m1(pair.m1.begin(), pair.m1.end()), m2(pair.m2.begin(), pair.m2.end());
  EdgeLabelling phi(g22);
  for (const Edge& e : g.edges())
    if (e.is_loop()) phi.values[e.id] = one0;
  for (auto& [e2, path] : red.suppressed.paths)
    for (EdgeId e : path) phi.values[e] = g22.make({m1.count(e2) ? 0 : 1, m2.count(e2) ? 0 : 1});
  auto c = certify(g, Orientation::of(g), detail::zero_weights(g), phi);
  if (!c.boundary_ok) throw InvariantViolation("14/15 construction produced a non-flow");
  return c;
}

// ---------------------------------------------------------------- 2-flow ----

inline FlowCertificate two_flow_bound(const MultiGraph& g, int j = 1) {
  if (j < 1) throw InvalidArgument("j must be positive");
  if (!is_k_edge_connected(g, static_cast<std::size_t>(2 * j))) throw PreconditionError("2-flow bound needs a 2j-edge-connected graph");
  const GroupSpec z2 = GroupSpec::z2();
  if (is_eulerian(g)) return eulerian_two_flow(g, z2, 1);
  const MultiGraph h = detail::without_loops(g);
  const auto red = mader_lift_to_subcubic(h, LiftTarget::two_flow, j);
  const MultiGraph& gs = red.suppressed.graph;
  const auto ms = perfect_matchings(gs);
  if (ms.empty()) throw InvariantViolation("reduced graph has no perfect matching");
  const std::vector<EdgeId>* best = nullptr;
  std::uint64_t bw = 0;
  for (const auto& m : ms) {
    std::uint64_t s = 0;
    for (EdgeId e : m) s += red.w.at(e);
    if (!best || s < bw) {
      best = &m;
      bw = s;
    }
  }
  if (j == 1 && 3 * bw > g.edge_count()) throw InvariantViolation("lightest perfect matching exceeds |E|/3");
  std::set<EdgeId> gone;
  for (EdgeId e2 : *best)
    for (EdgeId e : red.suppressed.paths.at(e2)) gone.insert(e);
  std::set<EdgeId> rest;
  for (const Edge& e : g.edges())
    if (!gone.count(e.id)) rest.insert(e.id);
  const Orientation o = Orientation::of(g);
  const auto signs = balanced_signs(g, o, rest);
  EdgeLabelling phi(z2);
  IntegerFlow f;
  f.bound = 2;
  for (const Edge& e : g.edges()) {
    auto it = signs.find(e.id);
    phi.values[e.id] = it == signs.end() ? 0 : 1;
    f.values[e.id] = it == signs.end() ? 0 : it->second;
  }
  auto c = certify(g, o, detail::zero_weights(g), phi);
  if (!c.boundary_ok) throw InvariantViolation("2-flow construction produced a non-flow");
  c.integer_witness = f;
  return c;
}

}  // namespace flowforge
