#pragma once

// Group-valued edge labellings, the boundary operator, support/gain
// arithmetic, zero-sum weighted graphs and the modular -> integer flow lift.

#include <array>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "flowforge/errors.hpp"
#include "flowforge/group.hpp"
#include "flowforge/multigraph.hpp"
#include "flowforge/rational.hpp"

namespace flowforge {

struct EdgeLabelling {
  GroupSpec group;
  std::map<EdgeId, Element> values;

  EdgeLabelling() = default;
  explicit EdgeLabelling(GroupSpec g) : group(std::move(g)) {}

  static EdgeLabelling zero(const MultiGraph& g, GroupSpec group = GroupSpec::z3()) {
    EdgeLabelling l(std::move(group));
    for (const Edge& e : g.edges()) l.values.emplace(e.id, 0);
    return l;
  }

  Element at(EdgeId e) const {
    auto it = values.find(e);
    if (it == values.end()) throw InvalidArgument("labelling has no value for edge " + std::to_string(e));
    return it->second;
  }

  std::size_t support() const {
    std::size_t s = 0;
    for (const auto& [e, x] : values) s += x != 0;
    return s;
  }

  bool covers_exactly(const MultiGraph& g) const {
    if (values.size() != g.edge_count()) return false;
    for (const Edge& e : g.edges())
      if (!values.count(e.id)) return false;
    return true;
  }

  bool operator==(const EdgeLabelling&) const = default;
};

// Integer-valued labelling with magnitude bound: every |value| <= bound - 1.
struct IntegerFlow {
  int bound = 3;
  std::map<EdgeId, long> values;

  std::size_t support() const {
    std::size_t s = 0;
    for (const auto& [e, x] : values) s += x != 0;
    return s;
  }
};

using VertexWeights = std::map<VertexId, Element>;

// Graph + orientation + zero-sum Z3 weight.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  WeightedGraph(MultiGraph g, Orientation o, std::map<VertexId, std::uint8_t> mu)
      : graph_(std::move(g)), orientation_(std::move(o)), mu_(std::move(mu)) {
    if (!orientation_.consistent_with(graph_)) throw InvalidArgument("orientation does not match graph");
    if (mu_.size() != graph_.vertex_count()) throw InvalidArgument("weight must be defined on exactly V(G)");
    unsigned total = 0;
    for (auto& [v, x] : mu_) {
      if (!graph_.has_vertex(v)) throw InvalidArgument("weight on unknown vertex " + std::to_string(v));
      if (x > 2) throw InvalidArgument("weight values must be in {0,1,2}");
      total += x;
    }
    if (total % 3 != 0) throw InvalidArgument("vertex weight is not zero-sum");
  }

  WeightedGraph(MultiGraph g, std::map<VertexId, std::uint8_t> mu)
      : WeightedGraph(g, Orientation::of(g), std::move(mu)) {}

  static WeightedGraph zero(const MultiGraph& g) {
    std::map<VertexId, std::uint8_t> mu;
    for (VertexId v : g.vertices()) mu.emplace(v, 0);
    return WeightedGraph(g, Orientation::of(g), std::move(mu));
  }

  const MultiGraph& graph() const noexcept { return graph_; }
  const Orientation& orientation() const noexcept { return orientation_; }
  const std::map<VertexId, std::uint8_t>& mu() const noexcept { return mu_; }
  std::uint8_t mu(VertexId v) const { return mu_.at(v); }

  VertexWeights mu_elements() const {
    VertexWeights w;
    for (auto [v, x] : mu_) w.emplace(v, x);
    return w;
  }

 private:
  MultiGraph graph_;
  Orientation orientation_;
  std::map<VertexId, std::uint8_t> mu_;
};

// ∂φ(v) = Σ_{out} φ − Σ_{in} φ. A loop is both in and out, so contributes 0.
inline VertexWeights boundary(const MultiGraph& g, const Orientation& o, const EdgeLabelling& phi) {
  if (!phi.covers_exactly(g)) throw InvalidArgument("labelling domain does not match the edge set");
  const GroupSpec& G = phi.group;
  VertexWeights b;
  for (VertexId v : g.vertices()) b.emplace(v, 0);
  for (const auto& [e, x] : phi.values) {
    const Arc& a = o.arc(e);
    if (a.tail == a.head) continue;
    b[a.tail] = G.add(b[a.tail], x);
    b[a.head] = G.sub(b[a.head], x);
  }
  return b;
}

inline std::int64_t gain(std::size_t support, std::size_t edges) {
  return 24 * static_cast<std::int64_t>(support) - 16 * static_cast<std::int64_t>(edges);
}

struct FlowCertificate {
  EdgeLabelling labelling;
  Orientation orientation;
  VertexWeights mu;
  bool boundary_ok = false;
  std::size_t support = 0;
  std::size_t edges = 0;
  std::int64_t gain = 0;
  Rational ratio;
  std::string digest;
  std::optional<IntegerFlow> integer_witness;
};

// FNV-1a over a canonical rendering of group, arcs, values and weights.
inline std::string certificate_digest(const EdgeLabelling& phi, const Orientation& o, const VertexWeights& mu) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  mix(phi.group.name() + ";");
  for (const auto& [e, x] : phi.values) {
    const Arc& a = o.arc(e);
    mix(std::to_string(e) + ":" + std::to_string(a.tail) + ">" + std::to_string(a.head) + "=" + std::to_string(x) + ";");
  }
  mix("|");
  for (const auto& [v, x] : mu) mix(std::to_string(v) + "=" + std::to_string(x) + ";");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline FlowCertificate certify(const MultiGraph& g, const Orientation& o, const VertexWeights& mu, const EdgeLabelling& phi) {
  FlowCertificate c;
  c.labelling = phi;
  c.orientation = o;
  c.mu = mu;
  const auto b = boundary(g, o, phi);
  c.boundary_ok = true;
  for (VertexId v : g.vertices()) {
    auto it = mu.find(v);
    const Element want = it == mu.end() ? 0 : it->second;
    if (b.at(v) != want) c.boundary_ok = false;
  }
  c.support = phi.support();
  c.edges = g.edge_count();
  c.gain = gain(c.support, c.edges);
  c.ratio = c.edges == 0 ? Rational(0) : Rational(static_cast<std::int64_t>(c.support), static_cast<std::int64_t>(c.edges));
  c.digest = certificate_digest(phi, o, mu);
  return c;
}

inline FlowCertificate is_flow_with_boundary(const WeightedGraph& wg, const EdgeLabelling& phi) {
  return certify(wg.graph(), wg.orientation(), wg.mu_elements(), phi);
}

// Recomputes every derived field and compares; used by the verifier.
inline bool certificate_consistent(const MultiGraph& g, const FlowCertificate& c) {
  if (!c.labelling.covers_exactly(g) || !c.orientation.consistent_with(g)) return false;
  const FlowCertificate r = certify(g, c.orientation, c.mu, c.labelling);
  return r.boundary_ok == c.boundary_ok && r.support == c.support && r.edges == c.edges && r.gain == c.gain &&
         r.ratio == c.ratio && r.digest == c.digest;
}

// ---------------------------------------------------------------- lift ----

// Integer flow f with |f| <= 2, f ≡ φ (mod 3) edgewise, zero integer boundary
// and supp(f) = supp(φ). Starts from the representatives {1,2} and repairs the
// integer boundary by ±3 moves along augmenting paths (each support edge can
// switch between φ and φ−3). A nowhere-zero Z3 flow on the support always
// admits such an f, so a failed search is an invariant violation.
inline IntegerFlow lift_modular_to_integer(const MultiGraph& g, const Orientation& o, const EdgeLabelling& phi) {
  if (phi.group.orders() != std::vector<std::uint32_t>{3}) throw InvalidArgument("lift expects a Z3 labelling");
  const auto b3 = boundary(g, o, phi);
  for (const auto& [v, x] : b3)
    if (x != 0) throw InvalidArgument("labelling is not a Z3 flow (nonzero boundary at vertex " + std::to_string(v) + ")");

  const std::size_t n = g.vertex_count();
  const std::size_t m = g.edge_count();
  std::vector<long> f(m, 0);
  std::vector<long> bnd(n, 0);
  std::vector<std::size_t> tail(m), head(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Edge& e = g.edges()[i];
    const Arc& a = o.arc(e.id);
    tail[i] = g.index_of(a.tail);
    head[i] = g.index_of(a.head);
    f[i] = static_cast<long>(phi.at(e.id));
    if (tail[i] != head[i]) {
      bnd[tail[i]] += f[i];
      bnd[head[i]] -= f[i];
    }
  }
  std::vector<std::vector<std::size_t>> inc(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (f[i] == 0 || tail[i] == head[i]) continue;
    inc[tail[i]].push_back(i);
    inc[head[i]].push_back(i);
  }
  long excess = 0;
  for (long x : bnd) excess += x > 0 ? x / 3 : 0;
  const long cap = excess + static_cast<long>(m) + 1;
  for (long iter = 0;; ++iter) {
    if (iter > cap) throw InvariantViolation("integer lift did not terminate within its iteration cap");
    std::vector<std::ptrdiff_t> via(n, -1);
    std::vector<char> seen(n, 0);
    std::queue<std::size_t> q;
    for (std::size_t v = 0; v < n; ++v)
      if (bnd[v] > 0) {
        seen[v] = 1;
        q.push(v);
      }
    if (q.empty()) break;
    std::ptrdiff_t sink = -1;
    while (!q.empty() && sink < 0) {
      const auto x = q.front();
      q.pop();
      for (std::size_t i : inc[x]) {
        // moving 3 units out of x: x is tail with f>0 (f -= 3) or head with f<0 (f += 3)
        std::size_t y;
        if (tail[i] == x && f[i] > 0)
          y = head[i];
        else if (head[i] == x && f[i] < 0)
          y = tail[i];
        else
          continue;
        if (seen[y]) continue;
        seen[y] = 1;
        via[y] = static_cast<std::ptrdiff_t>(i);
        if (bnd[y] < 0) {
          sink = static_cast<std::ptrdiff_t>(y);
          break;
        }
        q.push(y);
      }
    }
    if (sink < 0)
      throw InvariantViolation("integer lift: no augmenting path from a positive-boundary vertex; contradicts Tutte's theorem");
    std::size_t y = static_cast<std::size_t>(sink);
    bnd[y] += 3;
    while (via[y] >= 0) {
      const auto i = static_cast<std::size_t>(via[y]);
      const std::size_t x = (head[i] == y) ? tail[i] : head[i];
      f[i] += f[i] > 0 ? -3 : 3;
      y = x;
    }
    bnd[y] -= 3;
  }
  IntegerFlow out;
  out.bound = 3;
  for (std::size_t i = 0; i < m; ++i) out.values.emplace(g.edges()[i].id, f[i]);
  return out;
}

// Independent check of a lift: conservation, magnitude, congruence, support.
inline bool verify_integer_lift(const MultiGraph& g, const Orientation& o, const EdgeLabelling& phi, const IntegerFlow& f) {
  if (f.values.size() != g.edge_count()) return false;
  std::map<VertexId, long> b;
  for (const Edge& e : g.edges()) {
    auto it = f.values.find(e.id);
    if (it == f.values.end()) return false;
    const long x = it->second;
    if (x > f.bound - 1 || x < -(f.bound - 1)) return false;
    if (phi.group.factors() == 1) {
      const long q = phi.group.order();
      if (static_cast<Element>(((x % q) + q) % q) != phi.at(e.id)) return false;
    }
    if ((x != 0) != (phi.at(e.id) != 0)) return false;
    const Arc& a = o.arc(e.id);
    b[a.tail] += x;
    b[a.head] -= x;
  }
  for (auto& [v, x] : b)
    if (x != 0) return false;
  return true;
}

// Edge counts per inverse-pair class of Z3 x Z3 \ {0}:
// {(0,±1)}, {(±1,0)}, {(1,1),(2,2)}, {(1,2),(2,1)}.
inline std::array<std::size_t, 4> pair_class_counts(const EdgeLabelling& phi2) {
  if (!(phi2.group == GroupSpec::z3z3())) throw InvalidArgument("pair classes need a Z3 x Z3 labelling");
  std::array<std::size_t, 4> c{};
  for (const auto& [e, x] : phi2.values) {
    const auto a = phi2.group.component(x, 0), b = phi2.group.component(x, 1);
    if (a == 0 && b == 0) throw InvalidArgument("zero value on edge " + std::to_string(e));
    if (a == 0)
      ++c[0];
    else if (b == 0)
      ++c[1];
    else if (a == b)
      ++c[2];
    else
      ++c[3];
  }
  return c;
}

}  // namespace flowforge
