#pragma once

// Ears, ear decompositions, the three ear labellings of an ear, equitability
// and bonus, ψ-removal / putback, and flow assembly from a full decomposition.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "flowforge/errors.hpp"
#include "flowforge/flow_algebra.hpp"
#include "flowforge/group.hpp"
#include "flowforge/multigraph.hpp"

namespace flowforge {

enum class EarKind { open_path, anchored_cycle, whole_cycle };

inline const char* to_string(EarKind k) {
  switch (k) {
    case EarKind::open_path: return "open_path";
    case EarKind::anchored_cycle: return "anchored_cycle";
    case EarKind::whole_cycle: return "whole_cycle";
  }
  return "?";
}

// v1, e1, ..., em, v_{m+1}; e_i joins v_i and v_{i+1}.
struct Ear {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  EarKind kind = EarKind::open_path;

  std::size_t length() const noexcept { return edges.size(); }
  VertexId first() const { return vertices.front(); }
  VertexId last() const { return vertices.back(); }
  std::vector<VertexId> interior() const { return {vertices.begin() + 1, vertices.end() - 1}; }
  bool operator==(const Ear&) const = default;
};

using EarLabelling = EdgeLabelling;

inline Ear ear_from_chain(const Chain& c, EarKind kind) { return Ear{c.vertices, c.edges, kind}; }

// Ears of g: maximal chains between vertices of degree != 2, plus every
// component that is a cycle of degree-2 vertices. Partitions E(g).
inline std::vector<Ear> find_ears(const MultiGraph& g) {
  auto split = detail::trace_chains(g);
  std::vector<Ear> out;
  for (const auto& c : split.chains)
    out.push_back(ear_from_chain(c, c.closed() ? EarKind::anchored_cycle : EarKind::open_path));
  for (const auto& c : split.cycles) out.push_back(ear_from_chain(c, EarKind::whole_cycle));
  return out;
}

// Index into `ears` of the ear containing edge e.
inline std::size_t ear_index_of(const std::vector<Ear>& ears, EdgeId e) {
  for (std::size_t i = 0; i < ears.size(); ++i)
    if (std::find(ears[i].edges.begin(), ears[i].edges.end(), e) != ears[i].edges.end()) return i;
  throw InvalidArgument("edge " + std::to_string(e) + " is in no ear");
}

// Throws unless p is a walk of g whose interior vertices have degree 2 and
// whose shape matches its kind.
inline void check_ear(const MultiGraph& g, const Ear& p) {
  if (p.edges.empty() || p.vertices.size() != p.edges.size() + 1) throw InvalidArgument("ear has inconsistent vertex/edge sequences");
  std::set<EdgeId> seen;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    const Edge& e = g.edge(p.edges[i]);
    if (!seen.insert(e.id).second) throw InvalidArgument("ear repeats edge " + std::to_string(e.id));
    const VertexId a = p.vertices[i], b = p.vertices[i + 1];
    if (!((e.u == a && e.v == b) || (e.u == b && e.v == a)))
      throw InvalidArgument("ear edge " + std::to_string(e.id) + " does not join its listed vertices");
  }
  for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i)
    if (g.degree(p.vertices[i]) != 2)
      throw InvalidArgument("ear interior vertex " + std::to_string(p.vertices[i]) + " has degree " + std::to_string(g.degree(p.vertices[i])));
  const bool closed = p.first() == p.last();
  switch (p.kind) {
    case EarKind::open_path:
      if (closed) throw InvalidArgument("open ear has equal endpoints");
      if (g.degree(p.first()) < 3 || g.degree(p.last()) < 3) throw InvalidArgument("open ear endpoint has degree < 3");
      break;
    case EarKind::anchored_cycle:
      if (!closed) throw InvalidArgument("anchored ear is not closed");
      if (g.degree(p.first()) == 2) throw InvalidArgument("anchored ear's anchor has degree 2");
      break;
    case EarKind::whole_cycle:
      if (!closed || p.length() != g.edge_count()) throw InvalidArgument("whole-cycle ear is not the whole graph");
      break;
  }
}

// --------------------------------------------------------- labellings ----

// Host-orientation value of an edge carrying forward value x along p.
inline Element to_host(const Orientation& o, const Ear& p, std::size_t i, Element x) {
  return o.tail(p.edges[i]) == p.vertices[i] ? x : static_cast<Element>((3 - x) % 3);
}

inline std::vector<Element> forward_values(const Orientation& o, const Ear& p, const EarLabelling& psi) {
  std::vector<Element> f(p.length());
  for (std::size_t i = 0; i < p.length(); ++i) f[i] = to_host(o, p, i, psi.at(p.edges[i]));
  return f;
}

// ψ_1, ψ_2, ψ_3 with forward value 0, 1, 2 on e1 and forced propagation
// ψ(e_j) = ψ(e_1) + Σ_{i=2..j} μ(v_i).
inline std::array<EarLabelling, 3> ear_labellings(const Ear& p, const WeightedGraph& wg) {
  check_ear(wg.graph(), p);
  std::vector<Element> base(p.length());
  Element acc = 0;
  for (std::size_t j = 0; j < p.length(); ++j) {
    if (j > 0) acc = static_cast<Element>((acc + wg.mu(p.vertices[j])) % 3);
    base[j] = acc;
  }
  std::array<EarLabelling, 3> out;
  for (Element s = 0; s < 3; ++s) {
    out[s] = EarLabelling(GroupSpec::z3());
    for (std::size_t j = 0; j < p.length(); ++j)
      out[s].values[p.edges[j]] = to_host(wg.orientation(), p, j, static_cast<Element>((base[j] + s) % 3));
  }
  return out;
}

struct EarClass {
  bool equitable = false;
  int bonus = 4;
  std::array<std::size_t, 3> zero_counts{};
};

inline int bonus_value(bool equitable, std::size_t length) {
  if (equitable) return 0;
  return length % 3 == 2 ? 3 : 4;
}

inline EarClass classify_equitable(const Ear& p, const WeightedGraph& wg) {
  const auto ls = ear_labellings(p, wg);
  EarClass c;
  for (std::size_t i = 0; i < 3; ++i) c.zero_counts[i] = p.length() - ls[i].support();
  c.equitable = p.length() % 3 == 0 && c.zero_counts[0] == c.zero_counts[1] && c.zero_counts[1] == c.zero_counts[2];
  c.bonus = bonus_value(c.equitable, p.length());
  return c;
}

// Max support among the three; ties go to the smallest host value on e1.
inline EarLabelling best_labelling(const Ear& p, const WeightedGraph& wg) {
  const auto ls = ear_labellings(p, wg);
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    const auto si = ls[i].support(), sb = ls[best].support();
    if (si > sb || (si == sb && ls[i].at(p.edges[0]) < ls[best].at(p.edges[0]))) best = i;
  }
  return ls[best];
}

inline std::int64_t labelling_gain(const EarLabelling& psi) { return gain(psi.support(), psi.values.size()); }

// ∂ψ restricted to the ear's edges (zero off the ear).
inline std::map<VertexId, Element> ear_boundary(const Ear& p, const Orientation& o, const EarLabelling& psi) {
  std::map<VertexId, Element> b;
  for (EdgeId e : p.edges) {
    const Arc& a = o.arc(e);
    const Element x = psi.at(e);
    b[a.tail] = static_cast<Element>((b[a.tail] + x) % 3);
    b[a.head] = static_cast<Element>((b[a.head] + 3 - x) % 3);
  }
  return b;
}

inline bool is_ear_labelling(const Ear& p, const WeightedGraph& wg, const EarLabelling& psi) {
  if (psi.values.size() != p.length()) return false;
  for (EdgeId e : p.edges)
    if (!psi.values.count(e) || psi.values.at(e) > 2) return false;
  const auto b = ear_boundary(p, wg.orientation(), psi);
  for (VertexId v : p.interior())
    if (b.at(v) != wg.mu(v)) return false;
  if (p.kind == EarKind::whole_cycle && p.first() == p.last() && b.at(p.first()) != wg.mu(p.first())) return false;
  return true;
}

// (G − E(P))^x with μ' = μ − ∂ψ.
inline WeightedGraph psi_removal(const WeightedGraph& wg, const Ear& p, const EarLabelling& psi) {
  check_ear(wg.graph(), p);
  if (!is_ear_labelling(p, wg, psi)) throw InvalidArgument("labelling is not an ear labelling of this ear (interior boundary mismatch)");
  const auto b = ear_boundary(p, wg.orientation(), psi);
  const std::set<EdgeId> cut(p.edges.begin(), p.edges.end());
  MultiGraph h = delete_and_clean(wg.graph(), cut);
  Orientation o;
  for (const Edge& e : h.edges()) o.set(e.id, wg.orientation().arc(e.id));
  std::map<VertexId, std::uint8_t> mu;
  for (VertexId v : wg.graph().vertices()) {
    auto it = b.find(v);
    const std::uint8_t x = static_cast<std::uint8_t>((wg.mu(v) + 3 - (it == b.end() ? 0 : it->second)) % 3);
    if (h.has_vertex(v))
      mu.emplace(v, x);
    else if (x != 0)
      throw InvalidArgument("removal leaves nonzero weight on deleted vertex " + std::to_string(v));
  }
  return WeightedGraph(std::move(h), std::move(o), std::move(mu));
}

// φ' on G' together with ψ on P; checks ∂φ' = μ_{G'} first.
inline EdgeLabelling putback(const WeightedGraph& wg, const Ear& p, const EarLabelling& psi, const EdgeLabelling& phi_prime) {
  const WeightedGraph gp = psi_removal(wg, p, psi);
  const auto c = is_flow_with_boundary(gp, phi_prime);
  if (!c.boundary_ok) throw InvalidArgument("putback: labelling on the removal graph does not have boundary μ'");
  EdgeLabelling phi(GroupSpec::z3());
  phi.values = phi_prime.values;
  for (auto& [e, x] : psi.values) phi.values[e] = x;
  return phi;
}

// ------------------------------------------------------ decompositions ----

struct EarDecomposition {
  std::vector<Ear> ears;
  bool full = false;
};

inline MultiGraph union_of(const MultiGraph& g, const std::vector<Ear>& ears, std::size_t count) {
  std::set<EdgeId> keep;
  for (std::size_t i = 0; i < count; ++i) keep.insert(ears[i].edges.begin(), ears[i].edges.end());
  std::set<EdgeId> drop;
  for (const Edge& e : g.edges())
    if (!keep.count(e.id)) drop.insert(e.id);
  return delete_and_clean(g, drop);
}

// Empty string when valid, otherwise a diagnosis. For a full decomposition of
// g the ears must cover E(g) and each P_j is an ear of P_1 ∪ ... ∪ P_j; for a
// partial one P_j is an ear of g minus P_{j+1}, ..., P_l.
inline std::string decomposition_problem(const MultiGraph& g, const EarDecomposition& d) {
  std::set<EdgeId> used;
  for (std::size_t i = 0; i < d.ears.size(); ++i)
    for (EdgeId e : d.ears[i].edges) {
      if (!g.has_edge(e)) return "ear " + std::to_string(i) + " uses unknown edge " + std::to_string(e);
      if (!used.insert(e).second) return "edge " + std::to_string(e) + " appears in two ears";
    }
  if (d.full && used.size() != g.edge_count()) return "ears do not cover every edge";
  for (std::size_t j = 0; j < d.ears.size(); ++j) {
    MultiGraph host;
    if (d.full) {
      host = union_of(g, d.ears, j + 1);
    } else {
      std::set<EdgeId> drop;
      for (std::size_t i = j + 1; i < d.ears.size(); ++i) drop.insert(d.ears[i].edges.begin(), d.ears[i].edges.end());
      host = delete_and_clean(g, drop);
    }
    try {
      check_ear(host, d.ears[j]);
    } catch (const InvalidArgument& ex) {
      return "ear " + std::to_string(j) + ": " + ex.what();
    }
    if (d.full && !is_k_edge_connected(host, 2)) return "prefix " + std::to_string(j + 1) + " is not 2-edge-connected";
  }
  return {};
}

inline void validate_decomposition(const MultiGraph& g, const EarDecomposition& d) {
  const auto why = decomposition_problem(g, d);
  if (!why.empty()) throw InvalidArgument("invalid ear decomposition: " + why);
}

namespace detail {

// BFS from `from` over edges not in `blocked`, stopping at the first vertex in
// `targets`; neighbours are explored in edge-id order. Returns vertex/edge path.
inline std::optional<std::pair<std::vector<VertexId>, std::vector<EdgeId>>> bfs_to_set(
    const MultiGraph& g, VertexId from, const std::vector<char>& blocked, const std::vector<char>& targets) {
  const std::size_t n = g.vertex_count();
  std::vector<std::ptrdiff_t> via(n, -1);
  std::vector<char> seen(n, 0);
  std::queue<VertexId> q;
  q.push(from);
  seen[g.index_of(from)] = 1;
  while (!q.empty()) {
    const VertexId x = q.front();
    q.pop();
    for (std::size_t pos : g.incident(x)) {
      if (blocked[pos]) continue;
      const Edge& e = g.edges()[pos];
      if (e.is_loop()) continue;
      const VertexId y = e.other(x);
      const auto iy = g.index_of(y);
      if (seen[iy]) continue;
      seen[iy] = 1;
      via[iy] = static_cast<std::ptrdiff_t>(pos);
      if (targets[iy]) {
        std::vector<VertexId> vs{y};
        std::vector<EdgeId> es;
        VertexId at = y;
        while (at != from) {
          const Edge& f = g.edges()[static_cast<std::size_t>(via[g.index_of(at)])];
          es.push_back(f.id);
          at = f.other(at);
          vs.push_back(at);
        }
        std::reverse(vs.begin(), vs.end());
        std::reverse(es.begin(), es.end());
        return std::make_pair(std::move(vs), std::move(es));
      }
      q.push(y);
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Greedy full decomposition: P1 is a shortest cycle through the smallest edge;
// afterwards the smallest uncovered edge touching the current union starts
// the next ear, closed off by a shortest uncovered path back to the union.
inline EarDecomposition full_ear_decomposition(const MultiGraph& g) {
  EarDecomposition d;
  d.full = true;
  if (g.edge_count() == 0) return d;
  if (!is_k_edge_connected(g, 2)) throw PreconditionError("full ear decomposition needs a 2-edge-connected graph");
  const std::size_t m = g.edge_count();
  std::vector<char> covered(m, 0);
  std::vector<char> in_h(g.vertex_count(), 0);
  auto take = [&](Ear p) {
    for (EdgeId e : p.edges) covered[g.edge_index(e)] = 1;
    for (VertexId v : p.vertices) in_h[g.index_of(v)] = 1;
    d.ears.push_back(std::move(p));
  };

  const Edge& e0 = g.edges()[0];
  if (e0.is_loop()) {
    take(Ear{{e0.u, e0.u}, {e0.id}, EarKind::whole_cycle});
  } else {
    std::vector<char> blocked(m, 0);
    blocked[0] = 1;
    std::vector<char> target(g.vertex_count(), 0);
    target[g.index_of(e0.u)] = 1;
    auto path = detail::bfs_to_set(g, e0.v, blocked, target);
    if (!path) throw InvariantViolation("no cycle through an edge of a 2-edge-connected graph");
    Ear p;
    p.kind = EarKind::whole_cycle;
    p.vertices.push_back(e0.u);
    p.edges.push_back(e0.id);
    for (VertexId v : path->first) p.vertices.push_back(v);
    for (EdgeId e : path->second) p.edges.push_back(e);
    take(std::move(p));
  }

  while (true) {
    std::ptrdiff_t pick = -1;
    for (std::size_t i = 0; i < m && pick < 0; ++i) {
      if (covered[i]) continue;
      const Edge& e = g.edges()[i];
      if (in_h[g.index_of(e.u)] || in_h[g.index_of(e.v)]) pick = static_cast<std::ptrdiff_t>(i);
    }
    if (pick < 0) break;
    const Edge& e = g.edges()[static_cast<std::size_t>(pick)];
    const bool uin = in_h[g.index_of(e.u)], vin = in_h[g.index_of(e.v)];
    if (e.is_loop()) {
      take(Ear{{e.u, e.u}, {e.id}, EarKind::anchored_cycle});
      continue;
    }
    if (uin && vin) {
      take(Ear{{e.u, e.v}, {e.id}, EarKind::open_path});
      continue;
    }
    const VertexId x = uin ? e.u : e.v;
    const VertexId y = e.other(x);
    std::vector<char> blocked = covered;
    blocked[static_cast<std::size_t>(pick)] = 1;
    auto path = detail::bfs_to_set(g, y, blocked, in_h);
    if (!path) throw InvariantViolation("ear search failed in a 2-edge-connected graph");
    Ear p;
    p.vertices.push_back(x);
    p.edges.push_back(e.id);
    for (VertexId v : path->first) p.vertices.push_back(v);
    for (EdgeId f : path->second) p.edges.push_back(f);
    p.kind = p.first() == p.last() ? EarKind::anchored_cycle : EarKind::open_path;
    take(std::move(p));
  }
  for (char c : covered)
    if (!c) throw InvariantViolation("ear decomposition left an edge uncovered");
  return d;
}

// Σ 8 r_i with r_i = |E(P_i)| mod 3.
inline std::int64_t decomposition_gain(const EarDecomposition& d) {
  std::int64_t s = 0;
  for (const Ear& p : d.ears) s += 8 * static_cast<std::int64_t>(p.length() % 3);
  return s;
}

// Remove P_l, ..., P_1 with best labellings, then glue the labellings.
inline FlowCertificate construct_flow_via_decomposition(const WeightedGraph& wg, const EarDecomposition& d) {
  if (!d.full) throw InvalidArgument("flow assembly needs a full ear decomposition");
  validate_decomposition(wg.graph(), d);
  EdgeLabelling phi(GroupSpec::z3());
  WeightedGraph cur = wg;
  for (std::size_t j = d.ears.size(); j-- > 0;) {
    const Ear& p = d.ears[j];
    const auto psi = best_labelling(p, cur);
    for (auto& [e, x] : psi.values) phi.values[e] = x;
    cur = psi_removal(cur, p, psi);
  }
  for (const Edge& e : wg.graph().edges()) phi.values.emplace(e.id, 0);
  return is_flow_with_boundary(wg, phi);
}

// p is a single-edge ear at a degree-3 vertex v shared with q and q', and q is
// inequitable. Tries both nonzero labellings of p and returns the first whose
// removal leaves q ∪ q' inequitable.
inline EarLabelling choose_labelling_inequitable_merge(const WeightedGraph& wg, const Ear& p, const Ear& q, const Ear& q_prime) {
  const MultiGraph& g = wg.graph();
  check_ear(g, p);
  check_ear(g, q);
  check_ear(g, q_prime);
  if (p.length() != 1) throw PreconditionError("p must be a single-edge ear");
  if (p.kind != EarKind::open_path) throw PreconditionError("p must be a path ear");
  auto ends = [](const Ear& e) { return std::set<VertexId>{e.first(), e.last()}; };
  std::optional<VertexId> v;
  for (VertexId x : ends(p))
    if (ends(q).count(x) && ends(q_prime).count(x) && g.degree(x) == 3) v = x;
  if (!v) throw PreconditionError("p, q, q' do not share a degree-3 endpoint");
  if (p.edges == q.edges || p.edges == q_prime.edges || q.edges == q_prime.edges) throw PreconditionError("ears must be distinct");
  if (classify_equitable(q, wg).equitable) throw PreconditionError("q must be inequitable");
  const auto ls = ear_labellings(p, wg);
  for (const auto& psi : ls) {
    if (psi.support() != 1) continue;
    const WeightedGraph h = psi_removal(wg, p, psi);
    const auto ears = find_ears(h.graph());
    const Ear& merged = ears[ear_index_of(ears, q.edges.front())];
    const auto qe = ears[ear_index_of(ears, q_prime.edges.front())];
    if (!(merged == qe)) throw InvariantViolation("q and q' did not merge after removing p");
    if (!classify_equitable(merged, h).equitable) return psi;
  }
  throw InvariantViolation("no nonzero labelling of p leaves q ∪ q' inequitable");
}

}  // namespace flowforge
