#pragma once

// Minimal-counterexample machinery as executable checks: bonus accounting,
// contractible/reducible verification, the pushed 3-cut graph G•, the
// triangle-contracted graph GΔ, and exhaustive checks of gain ≥ bonus.

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "flowforge/ears.hpp"
#include "flowforge/errors.hpp"
#include "flowforge/flow_algebra.hpp"
#include "flowforge/generators.hpp"
#include "flowforge/multigraph.hpp"
#include "flowforge/rational.hpp"
#include "flowforge/solver.hpp"

namespace flowforge {

// ------------------------------------------------------------------ bonus ----

struct LedgerEntry {
  Ear ear;
  std::size_t length = 0;
  unsigned residue = 0;
  bool equitable = false;
  int bonus = 0;
  bool usable = true;
};

struct BonusLedger {
  std::vector<LedgerEntry> entries;
  int total = 0;
  int usable_total = 0;
};

inline BonusLedger bonus_of(const WeightedGraph& wg) {
  if (!is_k_edge_connected(wg.graph(), 2)) throw PreconditionError("bonus needs a 2-edge-connected graph");
  BonusLedger l;
  for (Ear& p : find_ears(wg.graph())) {
    const EarClass c = classify_equitable(p, wg);
    LedgerEntry e{std::move(p), 0, 0, c.equitable, c.bonus, true};
    e.length = e.ear.length();
    e.residue = static_cast<unsigned>(e.length % 3);
    l.total += e.bonus;
    l.usable_total += e.bonus;
    l.entries.push_back(std::move(e));
  }
  return l;
}

// -------------------------------------------------------- contractibility ----

// h must be a union of ears of wg; d a full ear decomposition of the subgraph
// they form. True iff the decomposition gain reaches the bonus of those ears.
inline bool verify_contractible(const WeightedGraph& wg, const std::set<EdgeId>& h, const EarDecomposition& d) {
  const MultiGraph& g = wg.graph();
  for (EdgeId e : h)
    if (!g.has_edge(e)) throw InvalidArgument("h names unknown edge " + std::to_string(e));
  const BonusLedger ledger = bonus_of(wg);
  int bonus_h = 0;
  for (const auto& en : ledger.entries) {
    const auto inside = static_cast<std::size_t>(
        std::count_if(en.ear.edges.begin(), en.ear.edges.end(), [&](EdgeId e) { return h.count(e) != 0; }));
    if (inside != 0 && inside != en.ear.edges.size()) throw InvalidArgument("h is not a union of ears (splits an ear)");
    if (inside) bonus_h += en.bonus;
  }
  if (!d.full) throw InvalidArgument("contractibility needs a full ear decomposition of h");
  std::set<EdgeId> rest;
  for (const Edge& e : g.edges())
    if (!h.count(e.id)) rest.insert(e.id);
  validate_decomposition(delete_and_clean(g, rest), d);
  return decomposition_gain(d) >= bonus_h;
}

// ------------------------------------------------------------ reducibility ----

struct ReducibleReport {
  std::array<bool, 4> clauses{};
  std::string diagnosis;
  std::int64_t gain_total = 0;
  int bonus_before = 0;
  int bonus_after = 0;
  bool ok = false;
};

// ears[0..l-1] with P_l removed first; labellings[j] labels ears[j] in the
// graph left after removing the later ears.
inline ReducibleReport verify_reducible(const WeightedGraph& wg, const std::vector<Ear>& ears,
                                        const std::vector<EarLabelling>& labellings) {
  if (ears.empty()) throw InvalidArgument("reducibility needs at least one ear");
  if (ears.size() != labellings.size()) throw InvalidArgument("one labelling per ear is required");
  const MultiGraph& g = wg.graph();
  ReducibleReport r;
  const auto why = decomposition_problem(g, EarDecomposition{ears, false});
  if (!why.empty()) {
    r.diagnosis = "clause 1: " + why;
    return r;
  }
  r.clauses[0] = true;

  std::set<EdgeId> used;
  for (const Ear& p : ears) used.insert(p.edges.begin(), p.edges.end());
  const MultiGraph rest = delete_and_clean(g, used);
  r.clauses[1] = rest.edge_count() == 0 || is_subdivision_of_3ec(rest);
  if (!r.clauses[1]) r.diagnosis = "clause 2: remainder is not a subdivision of a 3-edge-connected graph";

  WeightedGraph cur = wg;
  r.clauses[2] = true;
  for (std::size_t k = ears.size(); k-- > 0;) {
    const EarLabelling& psi = labellings[k];
    if (!(psi.group == GroupSpec::z3()) || !is_ear_labelling(ears[k], cur, psi)) {
      r.clauses[2] = false;
      if (r.diagnosis.empty()) r.diagnosis = "clause 3: labelling " + std::to_string(k) + " violates an interior boundary";
      break;
    }
    try {
      cur = psi_removal(cur, ears[k], psi);
    } catch (const Error& e) {
      r.clauses[2] = false;
      if (r.diagnosis.empty()) r.diagnosis = "clause 3: removal " + std::to_string(k) + " fails: " + e.what();
      break;
    }
    r.gain_total += labelling_gain(psi);
  }
  if (!r.clauses[2]) return r;

  r.bonus_before = bonus_of(wg).total;
  if (cur.graph().edge_count() == 0) {
    r.bonus_after = 0;
  } else if (is_k_edge_connected(cur.graph(), 2)) {
    r.bonus_after = bonus_of(cur).total;
  } else {
    if (r.diagnosis.empty()) r.diagnosis = "clause 4: removal graph is not 2-edge-connected";
    return r;
  }
  r.clauses[3] = r.gain_total >= r.bonus_before - r.bonus_after;
  if (!r.clauses[3] && r.diagnosis.empty()) r.diagnosis = "clause 4: gain below bonus drop";
  r.ok = r.clauses[0] && r.clauses[1] && r.clauses[2] && r.clauses[3];
  return r;
}

struct ReducibleWitness {
  std::vector<Ear> ears;
  std::vector<EarLabelling> labellings;
};

// Shallow search: single ears, then ordered ear pairs.
inline std::optional<ReducibleWitness> find_reducible_witness(const WeightedGraph& wg, std::size_t max_ears = 2) {
  const auto top = find_ears(wg.graph());
  for (const Ear& p : top)
    for (const auto& psi : ear_labellings(p, wg))
      if (verify_reducible(wg, {p}, {psi}).ok) return ReducibleWitness{{p}, {psi}};
  if (max_ears < 2) return std::nullopt;
  for (const Ear& q : top) {
    for (const auto& psi_q : ear_labellings(q, wg)) {
      WeightedGraph g2;
      try {
        g2 = psi_removal(wg, q, psi_q);
      } catch (const Error&) {
        continue;
      }
      if (g2.graph().edge_count() == 0) continue;
      for (const Ear& p : find_ears(g2.graph()))
        for (const auto& psi_p : ear_labellings(p, g2))
          if (verify_reducible(wg, {p, q}, {psi_p, psi_q}).ok) return ReducibleWitness{{p, q}, {psi_p, psi_q}};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- G bullet ----

struct BulletGraph {
  WeightedGraph graph;
  VertexSet x;                 // chosen cut side, in source ids
  VertexSet w_side;            // W: identified into w
  VertexId w = 0;
  std::vector<EdgeId> cut_edges;
  std::vector<Ear> ears;
  std::vector<char> usable;    // per ear: false iff the ear ends at w
};

namespace detail {

inline std::uint64_t mask_of(const MultiGraph& g, const std::vector<VertexId>& vs) {
  std::uint64_t m = 0;
  for (VertexId v : vs) m |= std::uint64_t{1} << g.index_of(v);
  return m;
}

inline std::vector<VertexId> members_of(const MultiGraph& g, std::uint64_t m) {
  std::vector<VertexId> out;
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    if ((m >> i) & 1) out.push_back(g.vertices()[i]);
  return out;
}

// Smallest (then numerically first) branch-vertex mask with d = 3 and
// cyclomatic number >= 2. Odd degree sum is necessary for an odd cut.
inline std::optional<std::uint64_t> minimal_three_cut(const MultiGraph& s) {
  const std::size_t n = s.vertex_count();
  if (n > kExhaustiveCutLimit) throw PreconditionError("cut search is exhaustive; suppressed graph has more than 20 vertices");
  const MaskGraph mg(s);
  std::vector<std::size_t> deg(n);
  for (std::size_t i = 0; i < n; ++i) deg[i] = s.degree(s.vertices()[i]);
  for (std::size_t k = 1; k < n; ++k) {
    const std::uint64_t end = std::uint64_t{1} << n;
    for (std::uint64_t x = (std::uint64_t{1} << k) - 1; x < end;) {
      std::size_t par = 0;
      for (std::uint64_t r = x; r; r &= r - 1) par += deg[static_cast<std::size_t>(std::countr_zero(r))];
      if ((par & 1) && mg.cut(x) == 3 && mg.cyclomatic(x) >= 2) return x;
      const std::uint64_t c = x & (~x + 1), nx = x + c;
      x = (((nx ^ x) >> 2) / c) | nx;
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline BulletGraph push_three_cut(const WeightedGraph& wg) {
  const MultiGraph& g = wg.graph();
  if (!is_subdivision_of_3ec(g)) throw PreconditionError("push_three_cut needs a subdivision of a 3-edge-connected graph");
  if (std::all_of(g.vertices().begin(), g.vertices().end(), [&](VertexId v) { return g.degree(v) == 2; }))
    throw PreconditionError("no qualifying cut: graph is a cycle");
  const Suppression s = suppress_degree_two(g);
  const auto xs = detail::minimal_three_cut(s.graph);
  if (!xs) throw PreconditionError("no qualifying cut: no 3-edge-cut with at least two cycles on one side");

  std::set<VertexId> x, crossing_interior;
  for (VertexId v : detail::members_of(s.graph, *xs)) x.insert(v);
  const std::set<VertexId> branch_x = x;
  for (const auto& [id, verts] : s.path_vertices) {
    const bool a = branch_x.count(verts.front()) != 0, b = branch_x.count(verts.back()) != 0;
    if (a && b) x.insert(verts.begin() + 1, verts.end() - 1);
    else if (a != b) crossing_interior.insert(verts.begin() + 1, verts.end() - 1);
  }

  BulletGraph b;
  std::set<VertexId> w_side;
  for (VertexId v : g.vertices())
    if (!x.count(v) && !crossing_interior.count(v)) w_side.insert(v);
  b.x = VertexSet(std::vector<VertexId>(x.begin(), x.end()));
  b.w_side = VertexSet(std::vector<VertexId>(w_side.begin(), w_side.end()));
  b.w = g.next_vertex_id();

  MultiGraph out;
  for (VertexId v : g.vertices())
    if (!w_side.count(v)) out.add_vertex(v);
  out.add_vertex(b.w);
  Orientation o;
  auto image = [&](VertexId v) { return w_side.count(v) ? b.w : v; };
  for (const Edge& e : g.edges()) {
    const VertexId u = image(e.u), v = image(e.v);
    if (u == b.w && v == b.w) continue;
    out.add_edge_with_id(e.id, u, v);
    const Arc a = wg.orientation().arc(e.id);
    o.set(e.id, Arc{image(a.tail), image(a.head)});
    if (u == b.w || v == b.w) b.cut_edges.push_back(e.id);
  }
  std::map<VertexId, std::uint8_t> mu;
  unsigned at_w = 0;
  for (auto [v, m] : wg.mu()) {
    if (w_side.count(v)) at_w += m;
    else mu.emplace(v, m);
  }
  mu.emplace(b.w, static_cast<std::uint8_t>(at_w % 3));
  if (b.cut_edges.size() != 3) throw InvariantViolation("identified vertex does not have degree 3");
  b.graph = WeightedGraph(std::move(out), std::move(o), std::move(mu));
  b.ears = find_ears(b.graph.graph());
  std::size_t unusable = 0;
  for (const Ear& p : b.ears) {
    const bool at = p.first() == b.w || p.last() == b.w;
    b.usable.push_back(!at);
    unusable += at;
  }
  if (unusable != 3) throw InvariantViolation("expected exactly 3 ears at the identified vertex");
  return b;
}

// Ledger over the ears of G• with the three ears at w tagged unusable.
inline BonusLedger bonus_of(const BulletGraph& b) {
  BonusLedger l = bonus_of(b.graph);
  l.usable_total = 0;
  for (auto& e : l.entries) {
    e.usable = e.ear.first() != b.w && e.ear.last() != b.w;
    if (e.usable) l.usable_total += e.bonus;
  }
  return l;
}

// Branch-level sets Z of G• with w ∉ Z and d(Z) = 3 that neither contain X nor
// induce at most one cycle. Empty means the observation holds exhaustively.
inline std::vector<VertexSet> bullet3ec_violations(const BulletGraph& b) {
  const Suppression s = suppress_degree_two(b.graph.graph());
  const MultiGraph& sg = s.graph;
  if (sg.vertex_count() > detail::kExhaustiveCutLimit) throw PreconditionError("bullet cut check is exhaustive; too many branch vertices");
  const detail::MaskGraph mg(sg);
  std::vector<VertexId> xb;
  for (VertexId v : b.x.members)
    if (sg.has_vertex(v)) xb.push_back(v);
  const std::uint64_t xmask = detail::mask_of(sg, xb);
  const std::uint64_t wbit = std::uint64_t{1} << sg.index_of(b.w);
  const std::uint64_t all = (std::uint64_t{1} << sg.vertex_count()) - 1;
  std::vector<VertexSet> bad;
  for (std::uint64_t z = 1; z <= all; ++z) {
    if (z & wbit) continue;
    if (mg.cut(z) != 3) continue;
    if ((z & xmask) == xmask || mg.cyclomatic(z) <= 1) continue;
    bad.emplace_back(detail::members_of(sg, z));
  }
  return bad;
}

// ------------------------------------------------------- inner triangles ----

struct InnerTriangle {
  std::array<std::size_t, 3> ears{};   // indices into BulletGraph::ears
  std::array<VertexId, 3> corners{};
  VertexSet vertices;
};

inline std::vector<VertexId> cycle_vertices(const BulletGraph& b, const std::array<std::size_t, 3>& es) {
  std::set<VertexId> vs;
  for (std::size_t i : es) vs.insert(b.ears[i].vertices.begin(), b.ears[i].vertices.end());
  return {vs.begin(), vs.end()};
}

// Cycles of G• - w made of three open ears on three distinct corners whose
// vertex set has exactly three edges leaving it.
inline std::vector<InnerTriangle> find_inner_triangles(const BulletGraph& b) {
  const MultiGraph& g = b.graph.graph();
  std::map<std::pair<VertexId, VertexId>, std::vector<std::size_t>> between;
  for (std::size_t i = 0; i < b.ears.size(); ++i) {
    const Ear& p = b.ears[i];
    if (p.kind != EarKind::open_path || p.first() == b.w || p.last() == b.w) continue;
    between[{std::min(p.first(), p.last()), std::max(p.first(), p.last())}].push_back(i);
  }
  auto ears_between = [&](VertexId a, VertexId c) -> const std::vector<std::size_t>& {
    static const std::vector<std::size_t> none;
    auto it = between.find({std::min(a, c), std::max(a, c)});
    return it == between.end() ? none : it->second;
  };
  std::vector<InnerTriangle> out;
  for (const auto& [ab, e1s] : between) {
    const auto [a, bb] = ab;
    for (const auto& [cd, e2s] : between) {
      // second side starts at bb and reaches a corner c > bb
      if (cd.first != bb) continue;
      const VertexId c = cd.second;
      for (std::size_t e1 : e1s)
        for (std::size_t e2 : e2s)
          for (std::size_t e3 : ears_between(a, c)) {
            const std::array<std::size_t, 3> es{e1, e2, e3};
            const auto vs = cycle_vertices(b, es);
            if (cut_size(g, VertexSet(vs)) != 3) continue;
            out.push_back(InnerTriangle{es, {a, bb, c}, VertexSet(vs)});
          }
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      const auto& p = out[i].vertices.members;
      const auto& q = out[j].vertices.members;
      std::vector<VertexId> common;
      std::set_intersection(p.begin(), p.end(), q.begin(), q.end(), std::back_inserter(common));
      if (!common.empty())
        throw InvariantViolation("inner triangles overlap at vertex " + std::to_string(common.front()));
    }
  return out;
}

struct TriangleType {
  std::string code;        // sorted residues, e.g. "112"
  bool violation = false;  // contains 0 or is "122"
  std::array<std::size_t, 3> lengths{};
};

inline TriangleType classify_triangle(const BulletGraph& b, const InnerTriangle& t) {
  for (std::size_t i : t.ears)
    if (i >= b.ears.size()) throw InvalidArgument("triangle refers to an unknown ear");
  const auto vs = cycle_vertices(b, t.ears);
  if (vs != t.vertices.members || cut_size(b.graph.graph(), t.vertices) != 3)
    throw InvalidArgument("not an inner triangle of this graph");
  TriangleType r;
  std::array<std::size_t, 3> res{};
  for (std::size_t k = 0; k < 3; ++k) {
    r.lengths[k] = b.ears[t.ears[k]].length();
    res[k] = r.lengths[k] % 3;
  }
  std::sort(res.begin(), res.end());
  for (auto x : res) r.code += static_cast<char>('0' + x);
  r.violation = !(r.code == "111" || r.code == "112" || r.code == "222");
  return r;
}

// ---------------------------------------------------------------- G delta ----

enum class DeltaOrigin { triad, inner_triangle, other };

struct DeltaVertex {
  DeltaOrigin origin = DeltaOrigin::other;
  std::size_t triangle = 0;  // index into triangles when origin == inner_triangle
};

struct DeltaGraph {
  MultiGraph graph;
  std::map<VertexId, DeltaVertex> provenance;
  std::map<EdgeId, unsigned> residue;
  std::map<EdgeId, std::vector<EdgeId>> paths;  // GΔ edge -> G• edges
  std::vector<InnerTriangle> triangles;
  VertexId w = 0;
  bool cubic = false;
  bool cyclically_4ec = false;
};

inline DeltaGraph build_delta(const BulletGraph& b) {
  const MultiGraph& g = b.graph.graph();
  DeltaGraph d;
  d.w = b.w;
  d.triangles = find_inner_triangles(b);
  std::map<VertexId, VertexId> image;
  std::set<EdgeId> dropped;
  VertexId next = g.next_vertex_id();
  std::vector<VertexId> tri_vertex;
  for (const auto& t : d.triangles) {
    tri_vertex.push_back(next);
    for (VertexId v : t.vertices.members) image[v] = next;
    for (std::size_t i : t.ears) dropped.insert(b.ears[i].edges.begin(), b.ears[i].edges.end());
    ++next;
  }
  MultiGraph h;
  for (VertexId v : g.vertices())
    if (!image.count(v)) h.add_vertex(v);
  for (VertexId t : tri_vertex) h.add_vertex(t);
  auto img = [&](VertexId v) {
    auto it = image.find(v);
    return it == image.end() ? v : it->second;
  };
  for (const Edge& e : g.edges())
    if (!dropped.count(e.id)) h.add_edge_with_id(e.id, img(e.u), img(e.v));

  Suppression s = suppress_degree_two(h);
  d.graph = std::move(s.graph);
  d.paths = std::move(s.paths);
  for (const auto& [e, path] : d.paths) d.residue[e] = static_cast<unsigned>(path.size() % 3);
  for (VertexId v : d.graph.vertices()) {
    DeltaVertex dv;
    const auto it = std::find(tri_vertex.begin(), tri_vertex.end(), v);
    if (it != tri_vertex.end()) {
      dv.origin = DeltaOrigin::inner_triangle;
      dv.triangle = static_cast<std::size_t>(it - tri_vertex.begin());
    } else if (g.degree(v) == 3) {
      dv.origin = DeltaOrigin::triad;
    }
    d.provenance.emplace(v, dv);
  }
  d.cubic = d.graph.vertex_count() > 0 &&
            std::all_of(d.graph.vertices().begin(), d.graph.vertices().end(), [&](VertexId v) { return d.graph.degree(v) == 3; });
  d.cyclically_4ec = is_k_edge_connected(d.graph, 3) && is_cyclically_k_edge_connected(d.graph, 4);
  return d;
}

// Sources whose G• mirrors the hypotheses under which GΔ is claimed cubic and
// cyclically 4-edge-connected: a subdivision of a cubic 3-edge-connected graph
// whose G• satisfies the 3-cut observation exhaustively.
inline bool conforming_source(const MultiGraph& g, const BulletGraph& b) {
  if (!is_subdivision_of_3ec(g)) return false;
  const Suppression s = suppress_degree_two(g);
  for (VertexId v : s.graph.vertices())
    if (s.graph.degree(v) != 3) return false;
  if (!is_k_edge_connected(s.graph, 3)) return false;
  return bullet3ec_violations(b).empty();
}

// --------------------------------------------------------------- workhorse ----

struct WorkhorseReport {
  RatioReport solve;
  BonusLedger ledger;
  std::int64_t gain = 0;
  std::int64_t bonus = 0;
  std::int64_t slack = 0;
  bool complete = false;  // optimum proven within budget
  bool holds = false;
};

inline WorkhorseReport workhorse_verify(const WeightedGraph& wg, SolveOptions opt = {}) {
  if (!is_subdivision_of_3ec(wg.graph())) throw PreconditionError("graph is not a subdivision of a 3-edge-connected graph");
  opt.stop_when_full = true;
  WorkhorseReport r;
  r.ledger = bonus_of(wg);
  r.solve = max_support_flow(wg, GroupSpec::z3(), opt);
  r.gain = r.solve.certificate.gain;
  r.bonus = r.ledger.total;
  r.slack = r.gain - r.bonus;
  r.complete = r.solve.optimal;
  r.holds = r.complete && r.slack >= 0;
  return r;
}

// ------------------------------------------------------------------- sweep ----

struct MuMode {
  enum class Kind { zero, exhaustive, sampled };
  Kind kind = Kind::zero;
  std::size_t exhaustive_max_n = 6;  // exhaustive: all zero-sum μ up to this order
  std::uint64_t seed = 0;
  std::size_t count = 0;             // sampled: μ per instance besides μ = 0
};

struct FailureBundle {
  std::string instance;
  MultiGraph graph;
  Orientation orientation;
  std::map<VertexId, std::uint8_t> mu;
  std::string reason;
  WorkhorseReport report;
};

struct TightCase {
  std::string instance;
  std::map<VertexId, std::uint8_t> mu;
};

struct SweepSummary {
  std::size_t instances = 0;
  std::size_t completed = 0;
  std::size_t checks = 0;
  std::optional<std::int64_t> min_slack;
  std::vector<std::string> tight_instances;
  std::size_t tight_checks = 0;
  std::vector<TightCase> tight_examples;  // first tight μ per tight instance
  std::optional<Rational> min_ratio;      // μ = 0 on 3-edge-connected instances
  std::vector<FailureBundle> failures;
  std::vector<std::pair<std::string, std::string>> skipped;
};

namespace detail {

inline std::vector<std::map<VertexId, std::uint8_t>> mu_choices(const MultiGraph& g, const MuMode& mode, std::size_t index) {
  std::vector<std::map<VertexId, std::uint8_t>> out;
  std::map<VertexId, std::uint8_t> zero;
  for (VertexId v : g.vertices()) zero.emplace(v, 0);
  out.push_back(zero);
  const std::size_t n = g.vertex_count();
  if (n == 0) return out;
  auto complete_last = [&](std::map<VertexId, std::uint8_t>& mu) {
    unsigned s = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) s += mu[g.vertices()[i]];
    mu[g.vertices()[n - 1]] = static_cast<std::uint8_t>((3 - s % 3) % 3);
  };
  if (mode.kind == MuMode::Kind::exhaustive && n <= mode.exhaustive_max_n) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) total *= 3;
    for (std::uint64_t code = 1; code < total; ++code) {
      std::map<VertexId, std::uint8_t> mu;
      std::uint64_t c = code;
      for (std::size_t i = 0; i + 1 < n; ++i, c /= 3) mu[g.vertices()[i]] = static_cast<std::uint8_t>(c % 3);
      complete_last(mu);
      out.push_back(std::move(mu));
    }
  } else if (mode.kind == MuMode::Kind::sampled) {
    std::mt19937_64 rng(mode.seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
    std::uniform_int_distribution<int> digit(0, 2);
    for (std::size_t k = 0; k < mode.count; ++k) {
      std::map<VertexId, std::uint8_t> mu;
      for (std::size_t i = 0; i + 1 < n; ++i) mu[g.vertices()[i]] = static_cast<std::uint8_t>(digit(rng));
      complete_last(mu);
      out.push_back(std::move(mu));
    }
  }
  return out;
}

struct InstanceOutcome {
  bool skipped = false;
  std::string skip_reason;
  std::size_t checks = 0;
  std::optional<std::int64_t> min_slack;
  std::size_t tight_checks = 0;
  std::optional<std::map<VertexId, std::uint8_t>> first_tight;
  std::optional<Rational> zero_ratio;
  std::vector<FailureBundle> failures;
};

inline InstanceOutcome sweep_instance(const CatalogEntry& entry, const MuMode& mode, std::size_t index, const SolveOptions& opt) {
  InstanceOutcome out;
  const MultiGraph& g = entry.graph;
  if (!is_subdivision_of_3ec(g)) {
    out.skipped = true;
    out.skip_reason = "not a subdivision of a 3-edge-connected graph";
    return out;
  }
  const bool three_ec = is_k_edge_connected(g, 3);
  const Orientation o = Orientation::of(g);
  const auto mus = mu_choices(g, mode, index);
  for (std::size_t k = 0; k < mus.size(); ++k) {
    const WeightedGraph wg(g, o, mus[k]);
    WorkhorseReport rep = workhorse_verify(wg, opt);
    if (!rep.complete) {
      out.skipped = true;
      out.skip_reason = "budget exceeded (coset size " + std::to_string(rep.solve.coset_size) + ")";
      out.failures.clear();
      return out;
    }
    ++out.checks;
    if (!out.min_slack || rep.slack < *out.min_slack) out.min_slack = rep.slack;
    if (rep.slack == 0) {
      ++out.tight_checks;
      if (!out.first_tight) out.first_tight = mus[k];
    }
    std::string reason;
    if (!rep.holds) reason = "optimum gain below bonus";
    if (k == 0 && three_ec) {
      out.zero_ratio = rep.solve.ratio;
      if (g.edge_count() > 0 && Rational(6 * static_cast<long long>(rep.solve.optimum), 5 * static_cast<long long>(g.edge_count())) < Rational(1, 1))
        reason += reason.empty() ? "support below 5/6" : "; support below 5/6";
    }
    if (!reason.empty()) out.failures.push_back(FailureBundle{entry.name, g, o, mus[k], reason, std::move(rep)});
  }
  return out;
}

}  // namespace detail

// Every instance is checked with μ = 0 plus the μ set chosen by mode. Results
// are aggregated in catalog order whatever the thread count.
inline SweepSummary counterexample_sweep(const std::vector<CatalogEntry>& catalog, const MuMode& mode, const SolveOptions& opt = {},
                                         unsigned threads = 1) {
  std::vector<detail::InstanceOutcome> outcomes(catalog.size());
  SolveOptions inner = opt;
  inner.threads = 1;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < catalog.size();) outcomes[i] = detail::sweep_instance(catalog[i], mode, i, inner);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  SweepSummary s;
  s.instances = catalog.size();
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    auto& o = outcomes[i];
    if (o.skipped) {
      s.skipped.emplace_back(catalog[i].name, o.skip_reason);
      continue;
    }
    ++s.completed;
    s.checks += o.checks;
    if (o.min_slack && (!s.min_slack || *o.min_slack < *s.min_slack)) s.min_slack = o.min_slack;
    if (o.tight_checks) {
      s.tight_instances.push_back(catalog[i].name);
      s.tight_checks += o.tight_checks;
      s.tight_examples.push_back(TightCase{catalog[i].name, *o.first_tight});
    }
    if (o.zero_ratio && (!s.min_ratio || *o.zero_ratio < *s.min_ratio)) s.min_ratio = o.zero_ratio;
    for (auto& f : o.failures) s.failures.push_back(std::move(f));
  }
  return s;
}

// -------------------------------------------------------------- tightness ----

struct TightnessReport {
  std::size_t edges = 0;
  std::size_t expected = 0;  // 2|E|/3 of the subdivided graph
  std::uint64_t coset_size = 0;
  std::uint64_t enumerated = 0;
  std::size_t min_support = 0;
  std::size_t max_support = 0;
  bool all_paths_distinct = true;
  bool complete = false;

  bool ok() const { return complete && min_support == expected && max_support == expected && all_paths_distinct; }
};

inline TightnessReport verify_subdivision_tightness(const MultiGraph& base, std::uint64_t budget = kDefaultBudget) {
  const TightnessInstance t = tightness_instance(base);
  const MultiGraph& g = t.wg.graph();
  TightnessReport r;
  r.edges = g.edge_count();
  r.expected = 2 * r.edges / 3;
  const auto phi0 = particular_solution(t.wg);
  if (!phi0) throw InvariantViolation("tightness instance has no solution");
  r.coset_size = coset_size(flow_space_basis(g, t.wg.orientation()).nullity(), 3);
  std::vector<std::array<std::size_t, 3>> paths;
  for (const auto& [e, p] : t.paths) paths.push_back({g.edge_index(p[0]), g.edge_index(p[1]), g.edge_index(p[2])});
  r.min_support = SIZE_MAX;
  r.enumerated = for_each_coset_member(g, t.wg.orientation(), *phi0, budget, [&](const detail::CosetEngine& e) {
    r.min_support = std::min(r.min_support, e.support());
    r.max_support = std::max(r.max_support, e.support());
    for (const auto& p : paths) {
      const auto a = e.comp(0, p[0]), b = e.comp(0, p[1]), c = e.comp(0, p[2]);
      if (a == b || b == c || a == c) r.all_paths_distinct = false;
    }
    return true;
  });
  r.complete = r.enumerated == r.coset_size;
  return r;
}

}  // namespace flowforge
