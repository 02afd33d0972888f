#pragma once

// Exact maximum-support flows with prescribed boundary: walk the coset
// φ0 + (cycle space) in reflected mixed-radix Gray order, touching one
// fundamental cycle per step.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "flowforge/errors.hpp"
#include "flowforge/flow_algebra.hpp"
#include "flowforge/group.hpp"
#include "flowforge/multigraph.hpp"
#include "flowforge/rational.hpp"

namespace flowforge {

inline constexpr std::uint64_t kDefaultBudget = 3486784401ull;  // 3^20

struct SolveOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned threads = 1;
  bool stop_when_full = false;
};

struct FlowSpaceBasis {
  std::vector<std::ptrdiff_t> parent_edge;  // per vertex position; -1 at roots
  std::vector<std::size_t> tree_edges;      // edge positions
  std::vector<std::size_t> non_tree_edges;  // edge positions; one cycle each
  // per cycle: (edge position, +1 / -1 relative to the host orientation)
  std::vector<std::vector<std::pair<std::size_t, int>>> cycles;
  std::size_t components = 0;

  std::size_t nullity() const noexcept { return cycles.size(); }

  EdgeLabelling cycle_labelling(const MultiGraph& g, std::size_t i, const GroupSpec& group, Element unit) const {
    auto l = EdgeLabelling::zero(g, group);
    for (auto [pos, s] : cycles[i]) l.values[g.edges()[pos].id] = s > 0 ? unit : group.neg(unit);
    return l;
  }
};

// BFS spanning forest (roots = smallest vertex of each component, neighbours
// in edge-id order) and its fundamental cycles.
inline FlowSpaceBasis flow_space_basis(const MultiGraph& g, const Orientation& o) {
  const std::size_t n = g.vertex_count(), m = g.edge_count();
  FlowSpaceBasis b;
  b.parent_edge.assign(n, -1);
  std::vector<std::size_t> depth(n, 0);
  std::vector<char> seen(n, 0), is_tree(m, 0);
  for (std::size_t r = 0; r < n; ++r) {
    if (seen[r]) continue;
    ++b.components;
    seen[r] = 1;
    std::vector<std::size_t> queue{r};
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const std::size_t x = queue[h];
      const VertexId vx = g.vertices()[x];
      for (std::size_t pos : g.incident(vx)) {
        const Edge& e = g.edges()[pos];
        const std::size_t y = g.index_of(e.other(vx));
        if (seen[y]) continue;
        seen[y] = 1;
        is_tree[pos] = 1;
        b.parent_edge[y] = static_cast<std::ptrdiff_t>(pos);
        depth[y] = depth[x] + 1;
        queue.push_back(y);
      }
    }
  }
  auto parent_of = [&](std::size_t x) {
    const Edge& e = g.edges()[static_cast<std::size_t>(b.parent_edge[x])];
    return g.index_of(e.other(g.vertices()[x]));
  };
  for (std::size_t pos = 0; pos < m; ++pos) {
    if (is_tree[pos]) {
      b.tree_edges.push_back(pos);
      continue;
    }
    b.non_tree_edges.push_back(pos);
    const Edge& e = g.edges()[pos];
    const Arc& a = o.arc(e.id);
    std::vector<std::pair<std::size_t, int>> cyc{{pos, +1}};
    if (a.tail != a.head) {
      // close the cycle head -> ... -> tail through the tree
      std::size_t x = g.index_of(a.head), y = g.index_of(a.tail);
      std::vector<std::pair<std::size_t, int>> down;
      while (x != y) {
        if (depth[x] >= depth[y]) {
          const auto pe = static_cast<std::size_t>(b.parent_edge[x]);
          // walking x -> parent
          cyc.emplace_back(pe, o.tail(g.edges()[pe].id) == g.vertices()[x] ? +1 : -1);
          x = parent_of(x);
        } else {
          const auto pe = static_cast<std::size_t>(b.parent_edge[y]);
          // later walked parent -> y
          down.emplace_back(pe, o.head(g.edges()[pe].id) == g.vertices()[y] ? +1 : -1);
          y = parent_of(y);
        }
      }
      cyc.insert(cyc.end(), down.rbegin(), down.rend());
    }
    b.cycles.push_back(std::move(cyc));
  }
  return b;
}

// ∂φ0 = μ by leaf-to-root propagation on the spanning forest; nullopt when
// some component's weights do not sum to zero.
inline std::optional<EdgeLabelling> particular_solution(const MultiGraph& g, const Orientation& o, const VertexWeights& mu,
                                                        const GroupSpec& group) {
  const auto basis = flow_space_basis(g, o);
  const std::size_t n = g.vertex_count();
  auto phi = EdgeLabelling::zero(g, group);
  std::vector<Element> bnd(n, 0);
  // order vertices so children come after parents, then sweep backwards
  std::vector<std::size_t> order;
  std::vector<std::vector<std::size_t>> kids(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (basis.parent_edge[x] < 0) continue;
    const Edge& e = g.edges()[static_cast<std::size_t>(basis.parent_edge[x])];
    kids[g.index_of(e.other(g.vertices()[x]))].push_back(x);
  }
  for (std::size_t r = 0; r < n; ++r) {
    if (basis.parent_edge[r] >= 0) continue;
    order.push_back(r);
    for (std::size_t h = order.size() - 1; h < order.size(); ++h)
      for (std::size_t c : kids[order[h]]) order.push_back(c);
  }
  auto want = [&](std::size_t x) {
    auto it = mu.find(g.vertices()[x]);
    return it == mu.end() ? Element{0} : it->second;
  };
  for (std::size_t h = order.size(); h-- > 0;) {
    const std::size_t x = order[h];
    if (basis.parent_edge[x] < 0) {
      if (bnd[x] != want(x)) return std::nullopt;
      continue;
    }
    const auto pe = static_cast<std::size_t>(basis.parent_edge[x]);
    const Edge& e = g.edges()[pe];
    const VertexId vx = g.vertices()[x];
    const std::size_t p = g.index_of(e.other(vx));
    const Element need = group.sub(want(x), bnd[x]);
    const bool out = o.tail(e.id) == vx;
    const Element val = out ? need : group.neg(need);
    phi.values[e.id] = val;
    bnd[x] = group.add(bnd[x], need);
    bnd[p] = group.add(bnd[p], group.neg(need));
  }
  return phi;
}

inline std::optional<EdgeLabelling> particular_solution(const WeightedGraph& wg) {
  return particular_solution(wg.graph(), wg.orientation(), wg.mu_elements(), GroupSpec::z3());
}

// |Γ|^nullity, saturating at UINT64_MAX.
inline std::uint64_t coset_size(std::size_t nullity, std::uint32_t order) {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < nullity; ++i) {
    if (s > UINT64_MAX / order) return UINT64_MAX;
    s *= order;
  }
  return s;
}

namespace detail {

// Incremental state of one coset walk. Values are kept per group factor
// (comp[f][edge position]); nonzero flags are packed 64 per word.
class CosetEngine {
 public:
  CosetEngine(const MultiGraph& g, const FlowSpaceBasis& basis, const GroupSpec& group, const EdgeLabelling& phi0)
      : basis_(basis), orders_(group.orders()), m_(g.edge_count()), F_(orders_.size()) {
    comp_.assign(F_, std::vector<std::uint8_t>(m_, 0));
    for (std::size_t pos = 0; pos < m_; ++pos) {
      const Element x = phi0.at(g.edges()[pos].id);
      for (std::size_t f = 0; f < F_; ++f) comp_[f][pos] = static_cast<std::uint8_t>(group.component(x, f));
    }
    flags_.assign((m_ + 63) / 64, 0);
    for (std::size_t pos = 0; pos < m_; ++pos)
      if (nonzero(pos)) flags_[pos / 64] |= std::uint64_t{1} << (pos % 64);
    support_ = 0;
    for (auto w : flags_) support_ += static_cast<std::size_t>(std::popcount(w));
    words_.resize(basis.cycles.size());
    for (std::size_t c = 0; c < basis.cycles.size(); ++c) {
      for (auto [pos, s] : basis.cycles[c]) words_[c].push_back(pos / 64);
      std::sort(words_[c].begin(), words_[c].end());
      words_[c].erase(std::unique(words_[c].begin(), words_[c].end()), words_[c].end());
    }
  }

  std::size_t digits() const noexcept { return basis_.cycles.size() * F_; }
  std::uint32_t radix(std::size_t d) const noexcept { return orders_[d % F_]; }
  std::size_t support() const noexcept { return support_; }
  std::size_t edges() const noexcept { return m_; }
  std::size_t factors() const noexcept { return F_; }
  std::uint8_t comp(std::size_t f, std::size_t pos) const noexcept { return comp_[f][pos]; }
  const std::vector<std::vector<std::uint8_t>>& comps() const noexcept { return comp_; }

  // Add delta * (unit of factor d % F) * C_{d / F}.
  void apply(std::size_t d, int delta) {
    const std::size_t c = d / F_, f = d % F_;
    const int q = static_cast<int>(orders_[f]);
    std::uint64_t before[8];
    const auto& ws = words_[c];
    const bool small = ws.size() <= 8;
    long diff = 0;
    if (small)
      for (std::size_t i = 0; i < ws.size(); ++i) before[i] = flags_[ws[i]];
    auto& row = comp_[f];
    for (auto [pos, s] : basis_.cycles[c]) {
      int v = row[pos] + s * delta;
      v = ((v % q) + q) % q;
      row[pos] = static_cast<std::uint8_t>(v);
      const std::uint64_t bit = std::uint64_t{1} << (pos % 64);
      if (small) {
        if (nonzero(pos))
          flags_[pos / 64] |= bit;
        else
          flags_[pos / 64] &= ~bit;
      } else {
        const bool was = (flags_[pos / 64] & bit) != 0;
        const bool now = nonzero(pos);
        if (was != now) {
          flags_[pos / 64] ^= bit;
          diff += now ? 1 : -1;
        }
      }
    }
    if (small)
      for (std::size_t i = 0; i < ws.size(); ++i) diff += std::popcount(flags_[ws[i]]) - std::popcount(before[i]);
    support_ = static_cast<std::size_t>(static_cast<long>(support_) + diff);
  }

  // Lexicographic comparison (edge by edge, factor by factor) against a
  // stored component table.
  bool less_than(const std::vector<std::vector<std::uint8_t>>& other) const {
    for (std::size_t pos = 0; pos < m_; ++pos)
      for (std::size_t f = 0; f < F_; ++f) {
        if (comp_[f][pos] != other[f][pos]) return comp_[f][pos] < other[f][pos];
      }
    return false;
  }

  // Knuth's loopless reflected mixed-radix Gray code over digits
  // [first, digits()). Visits the current state first; stops after `limit`
  // visits or when visit() returns false. Returns the number of visits.
  template <class Visit>
  std::uint64_t walk(std::size_t first, std::uint64_t limit, Visit&& visit) {
    const std::size_t n = digits() - first;
    std::vector<std::uint32_t> a(n, 0);
    std::vector<int> o(n, 1);
    std::vector<std::size_t> focus(n + 1);
    for (std::size_t j = 0; j <= n; ++j) focus[j] = j;
    std::uint64_t visits = 0;
    while (true) {
      if (visits >= limit) return visits;
      ++visits;
      if (!visit(*this)) return visits;
      const std::size_t j = focus[0];
      focus[0] = 0;
      if (j == n) return visits;
      a[j] = static_cast<std::uint32_t>(static_cast<int>(a[j]) + o[j]);
      apply(first + j, o[j]);
      if (a[j] == 0 || a[j] == radix(first + j) - 1) {
        o[j] = -o[j];
        focus[j] = focus[j + 1];
        focus[j + 1] = j + 1;
      }
    }
  }

 private:
  bool nonzero(std::size_t pos) const {
    for (std::size_t f = 0; f < F_; ++f)
      if (comp_[f][pos]) return true;
    return false;
  }

  const FlowSpaceBasis& basis_;
  std::vector<std::uint32_t> orders_;
  std::size_t m_, F_;
  std::vector<std::vector<std::uint8_t>> comp_;
  std::vector<std::uint64_t> flags_;
  std::vector<std::vector<std::size_t>> words_;
  std::size_t support_ = 0;
};

struct BestSoFar {
  std::size_t support = 0;
  std::size_t min_support = SIZE_MAX;
  std::vector<std::vector<std::uint8_t>> comps;
  std::uint64_t visited = 0;
  bool any = false;

  void offer(const CosetEngine& e) {
    ++visited;
    min_support = std::min(min_support, e.support());
    if (!any || e.support() > support || (e.support() == support && e.less_than(comps))) {
      any = true;
      support = e.support();
      comps = e.comps();
    }
  }

  void merge(const BestSoFar& o) {
    visited += o.visited;
    min_support = std::min(min_support, o.min_support);
    if (!o.any) return;
    if (!any || o.support > support || (o.support == support && lex_less(o.comps, comps))) {
      any = true;
      support = o.support;
      comps = o.comps;
    }
  }

 private:
  // edge by edge, then factor by factor; same order as CosetEngine::less_than
  static bool lex_less(const std::vector<std::vector<std::uint8_t>>& x, const std::vector<std::vector<std::uint8_t>>& y) {
    for (std::size_t pos = 0; pos < x.front().size(); ++pos)
      for (std::size_t f = 0; f < x.size(); ++f)
        if (x[f][pos] != y[f][pos]) return x[f][pos] < y[f][pos];
    return false;
  }
};

}  // namespace detail

struct RatioReport {
  FlowCertificate certificate;
  std::size_t optimum = 0;
  std::size_t min_support = 0;  // smallest support met during the walk
  Rational ratio;
  std::uint64_t coset_size = 0;
  std::uint64_t enumerated = 0;
  bool optimal = false;
  bool budget_exceeded = false;
  double wall_seconds = 0;
  std::optional<IntegerFlow> integer_witness;
};

// Full walk of φ0 + cycle space; visit(engine) sees every member once.
// Returns the number of members visited (capped by limit).
template <class Visit>
std::uint64_t for_each_coset_member(const MultiGraph& g, const Orientation& o, const EdgeLabelling& phi0, std::uint64_t limit,
                                    Visit&& visit) {
  const auto basis = flow_space_basis(g, o);
  detail::CosetEngine engine(g, basis, phi0.group, phi0);
  return engine.walk(0, limit, visit);
}

inline EdgeLabelling labelling_from(const MultiGraph& g, const GroupSpec& group, const std::vector<std::vector<std::uint8_t>>& comps) {
  EdgeLabelling l(group);
  for (std::size_t pos = 0; pos < g.edge_count(); ++pos) {
    std::vector<long long> c(group.factors());
    for (std::size_t f = 0; f < group.factors(); ++f) c[f] = comps[f][pos];
    l.values.emplace(g.edges()[pos].id, group.make(c));
  }
  return l;
}

inline RatioReport max_support_flow(const MultiGraph& g, const Orientation& o, const VertexWeights& mu, const GroupSpec& group,
                                    const SolveOptions& opt = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  if (!o.consistent_with(g)) throw InvalidArgument("orientation does not match graph");
  for (const auto& [v, x] : mu)
    if (!group.contains(x)) throw InvalidArgument("weight at vertex " + std::to_string(v) + " is not an element of " + group.name());
  const auto phi0 = particular_solution(g, o, mu, group);
  if (!phi0) throw Infeasible("weights do not sum to zero on some component");
  const auto basis = flow_space_basis(g, o);
  RatioReport r;
  r.coset_size = coset_size(basis.nullity(), group.order());
  const bool over = r.coset_size > opt.budget;
  const std::uint64_t limit = over ? opt.budget : r.coset_size;

  detail::BestSoFar best;
  const std::size_t m = g.edge_count();
  const bool shard = !over && !opt.stop_when_full && opt.threads > 1 && basis.nullity() > 0;
  if (!shard) {
    detail::CosetEngine engine(g, basis, group, *phi0);
    engine.walk(0, limit, [&](const detail::CosetEngine& e) {
      best.offer(e);
      return !(opt.stop_when_full && e.support() == m);
    });
  } else {
    // shard on the leading digit; each shard walks the remaining digits
    const std::uint32_t q0 = group.orders()[0];
    std::vector<detail::BestSoFar> parts(q0);
    auto run = [&](std::uint32_t a) {
      detail::CosetEngine engine(g, basis, group, *phi0);
      if (a) engine.apply(0, static_cast<int>(a));
      engine.walk(1, UINT64_MAX, [&](const detail::CosetEngine& e) {
        parts[a].offer(e);
        return true;
      });
    };
    std::vector<std::thread> pool;
    for (std::uint32_t a = 0; a < q0; ++a) {
      if (pool.size() >= opt.threads) {
        for (auto& t : pool) t.join();
        pool.clear();
      }
      pool.emplace_back(run, a);
    }
    for (auto& t : pool) t.join();
    for (auto& p : parts) best.merge(p);
  }

  r.enumerated = best.visited;
  r.budget_exceeded = over;
  r.optimal = !over || best.support == m;
  r.optimum = best.support;
  r.min_support = best.min_support;
  const EdgeLabelling phi = labelling_from(g, group, best.comps);
  r.certificate = certify(g, o, mu, phi);
  if (!r.certificate.boundary_ok) throw InvariantViolation("solver produced a labelling with the wrong boundary");
  if (r.certificate.support != r.optimum) throw InvariantViolation("solver support bookkeeping drifted");
  r.ratio = r.certificate.ratio;
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline RatioReport max_support_flow(const WeightedGraph& wg, const GroupSpec& group = GroupSpec::z3(), const SolveOptions& opt = {}) {
  VertexWeights mu;
  if (group == GroupSpec::z3()) {
    mu = wg.mu_elements();
  } else {
    for (auto [v, x] : wg.mu()) {
      if (x != 0) throw InvalidArgument("a Z3 weight can only be used with the Z3 group");
      mu.emplace(v, 0);
    }
  }
  return max_support_flow(wg.graph(), wg.orientation(), mu, group, opt);
}

inline GroupSpec group_for_flow_order(int k) {
  switch (k) {
    case 2: return GroupSpec::z2();
    case 3: return GroupSpec::z3();
    case 4: return GroupSpec::z2z2();
    case 6: return GroupSpec::z6();
    default: throw InvalidArgument("flow order must be 2, 3, 4 or 6");
  }
}

// h(G,k) with μ = 0; for k = 3 the witness is lifted to a genuine 3-flow.
inline RatioReport h_ratio(const MultiGraph& g, int k, const SolveOptions& opt = {}) {
  const GroupSpec group = group_for_flow_order(k);
  const Orientation o = Orientation::of(g);
  VertexWeights mu;
  for (VertexId v : g.vertices()) mu.emplace(v, 0);
  RatioReport r = max_support_flow(g, o, mu, group, opt);
  if (k == 3) {
    r.integer_witness = lift_modular_to_integer(g, o, r.certificate.labelling);
    r.certificate.integer_witness = r.integer_witness;
  }
  return r;
}

}  // namespace flowforge
