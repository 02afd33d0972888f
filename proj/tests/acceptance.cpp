// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "support.hpp"

using namespace flowforge;
using namespace fftest;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::size_t ceil_frac(std::size_t m, std::size_t num, std::size_t den) { return (num * m + den - 1) / den; }

std::size_t nullity(const MultiGraph& g) { return g.edge_count() - g.vertex_count() + connected_components(g).size(); }

// Integer conservation, value range, congruence mod 3 and equal support, checked
// directly against the graph rather than through the library verifier.
bool lift_ok(const MultiGraph& g, const Orientation& o, const EdgeLabelling& phi, const IntegerFlow& f) {
  std::map<VertexId, long> net;
  std::size_t support = 0;
  for (const Edge& e : g.edges()) {
    const auto it = f.values.find(e.id);
    if (it == f.values.end()) return false;
    const long x = it->second;
    if (x < -2 || x > 2) return false;
    if (((x % 3) + 3) % 3 != static_cast<long>(phi.at(e.id))) return false;
    support += x != 0;
    const Arc& a = o.arc(e.id);
    net[a.tail] += x;
    net[a.head] -= x;
  }
  for (auto [v, s] : net)
    if (s != 0) return false;
  return support == phi.support();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome run_cli(const std::string& args, std::string& out) {
  FILE* p = popen(("\"" FLOWFORGE_CLI "\" " + args + " 2>/dev/null").c_str(), "r");
  if (!p) return {false, "cannot start cli"};
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int st = pclose(p);
  const int code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return {code == 0, "exit " + std::to_string(code)};
}

Outcome k4_optimum() {
  const auto t0 = Clock::now();
  std::string out;
  auto r = run_cli("solve " + data_path("graphs/k4.txt") + " --mu zero --group z3", out);
  const double dt = seconds_since(t0);
  if (!r.pass) return r;
  const auto j = Json::parse(out);
  std::ostringstream d;
  d << "support " << j["optimum"] << ", ratio " << j["ratio"].get<std::string>() << ", " << dt << " s";
  return {j["optimum"] == 5 && j["ratio"] == "5/6" && j["optimal"] == true && dt < 1.0, d.str()};
}

Outcome tripods() {
  const auto t0 = Clock::now();
  const auto cat = load_manifest(data_path("manifests/tripods.txt"));
  std::size_t good = 0;
  bool k33 = false, all = true;
  for (const auto& c : cat) {
    if (nullity(c.graph) > 16) continue;
    const auto r = h_ratio(c.graph, 3);
    const bool exact = r.optimal && r.ratio == Rational(5, 6);
    all = all && exact;
    good += exact;
    k33 = k33 || (exact && c.generator == "truncation(K3_3)");
  }
  const double dt = seconds_since(t0);
  std::ostringstream d;
  d << good << " of " << cat.size() << " instances at 5/6, truncated K3_3 " << (k33 ? "included" : "missing") << ", " << dt << " s";
  return {all && good >= 5 && k33 && dt <= 120, d.str()};
}

Outcome small_sweep() {
  const auto t0 = Clock::now();
  const auto cat = load_manifest(data_path("manifests/small3ec.txt"));
  MuMode mode;
  mode.kind = MuMode::Kind::exhaustive;
  mode.exhaustive_max_n = 5;
  const auto s = counterexample_sweep(cat, mode, {}, std::max(1u, std::thread::hardware_concurrency()));
  const double dt = seconds_since(t0);
  std::ostringstream d;
  d << s.completed << " of " << s.instances << " graphs, " << s.checks << " checks, " << s.failures.size() << " failures, "
    << s.skipped.size() << " skipped, min ratio " << (s.min_ratio ? s.min_ratio->str() : "none") << ", " << dt << " s";
  const bool ok = s.failures.empty() && s.skipped.empty() && s.completed == s.instances && s.instances > 0 && s.min_ratio &&
                  *s.min_ratio >= Rational(5, 6) && dt <= 1800;
  return {ok, d.str()};
}

Outcome tightness() {
  const auto t0 = Clock::now();
  const auto th = verify_subdivision_tightness(named("Theta"));
  const auto k33 = verify_subdivision_tightness(named("K3_3"));
  const double dt = seconds_since(t0);
  std::ostringstream d;
  d << "Theta " << th.min_support << ".." << th.max_support << " of " << th.edges << ", K3_3 " << k33.min_support << ".."
    << k33.max_support << " of " << k33.edges << ", " << dt << " s";
  const bool ok = th.ok() && k33.ok() && 3 * th.expected == 2 * th.edges && 3 * k33.expected == 2 * k33.edges && dt <= 60;
  return {ok, d.str()};
}

Outcome three_quarter() {
  const auto t0 = Clock::now();
  std::vector<MultiGraph> pool;
  for (auto& g : catalog_filtered("connected_le7.g6", "2ec"))
    if (nullity(g) <= 8) pool.push_back(std::move(g));
  const std::size_t step = std::max<std::size_t>(1, pool.size() / 20);
  std::size_t tried = 0, good = 0;
  for (std::size_t i = 0; i < pool.size() && tried < 20; i += step, ++tried) {
    const auto& g = pool[i];
    const auto c = three_quarter_flow(g);
    const auto chk = is_flow_with_boundary(WeightedGraph::zero(g), c.labelling);
    good += chk.boundary_ok && chk.support == c.support && c.support >= ceil_frac(g.edge_count(), 3, 4);
  }
  const double dt = seconds_since(t0);
  std::ostringstream d;
  d << good << " of " << tried << " certificates verified at >= 3|E|/4, " << dt << " s";
  return {tried == 20 && good == 20 && dt <= 300, d.str()};
}

Outcome fourteen_fifteenths() {
  const auto t0 = Clock::now();
  const auto pet = fourteen_fifteenths_flow(named("Petersen"));
  std::size_t tried = 0, good = 0;
  for (const auto& g : catalog_filtered("cubic_le10.g6", "2ec")) {
    if (tried == 10) break;
    ++tried;
    const auto c = fourteen_fifteenths_flow(g);
    const auto chk = is_flow_with_boundary(WeightedGraph::zero(g), c.labelling);
    good += chk.boundary_ok && c.support >= ceil_frac(g.edge_count(), 14, 15);
  }
  const double dt = seconds_since(t0);
  std::ostringstream d;
  d << "Petersen support " << pet.support << ", " << good << " of " << tried << " cubic graphs at >= 14|E|/15, " << dt << " s";
  return {pet.support == 14 && pet.boundary_ok && tried == 10 && good == 10 && dt <= 300, d.str()};
}

Outcome two_flow() {
  const auto c = two_flow_bound(named("K4"), 1);
  const auto exact = h_ratio(named("K4"), 2);
  std::ostringstream d;
  d << "construction " << c.support << " of " << c.edges << ", exact optimum " << exact.optimum;
  return {c.boundary_ok && c.support == 4 && c.edges == 6 && exact.optimal && exact.optimum == 4, d.str()};
}

Outcome lifts() {
  std::mt19937_64 rng(8);
  std::vector<MultiGraph> pool;
  for (auto& g : catalog("connected_le7.g6"))
    if (g.edge_count() <= 12) pool.push_back(std::move(g));
  std::size_t done = 0, bad = 0;
  while (done < 1000) {
    const auto& g = pool[rng() % pool.size()];
    const auto o = random_orientation(rng, g);
    const auto r = max_support_flow(g, o, zeros(g), GroupSpec::z3());
    const auto f = lift_modular_to_integer(g, o, r.certificate.labelling);
    bad += !lift_ok(g, o, r.certificate.labelling, f);
    ++done;
  }
  return {bad == 0, std::to_string(done) + " lifts, " + std::to_string(bad) + " failures"};
}

Outcome properties() {
  std::mt19937_64 rng(9);
  std::size_t bad_uncross = 0, bad_total = 0, bad_triple = 0, bad_oracle = 0, oracle_graphs = 0;

  for (int it = 0; it < 1000; ++it) {
    const auto g = random_multigraph(rng, 2 + rng() % 10, rng() % 20);
    std::vector<VertexId> x, y, i, u, xy, yx;
    for (VertexId v : g.vertices()) {
      const bool a = rng() & 1, b = rng() & 1;
      if (a) x.push_back(v);
      if (b) y.push_back(v);
      if (a && b) i.push_back(v);
      if (a || b) u.push_back(v);
      if (a && !b) xy.push_back(v);
      if (b && !a) yx.push_back(v);
    }
    const auto d = [&](const std::vector<VertexId>& s) { return cut_size(g, VertexSet(s)); };
    bad_uncross += d(i) + d(u) > d(x) + d(y) || d(xy) + d(yx) > d(x) + d(y);
  }

  const GroupSpec groups[] = {GroupSpec::z2(), GroupSpec::z3(), GroupSpec::z2z2(), GroupSpec::z3z3(), GroupSpec::z6()};
  for (int it = 0; it < 1000; ++it) {
    const auto g = random_multigraph(rng, 1 + rng() % 9, rng() % 15);
    const auto& grp = groups[rng() % 5];
    const auto o = random_orientation(rng, g);
    EdgeLabelling l(grp);
    for (const Edge& e : g.edges()) l.values[e.id] = static_cast<Element>(rng() % grp.order());
    Element total = 0;
    for (auto [v, b] : boundary(g, o, l)) total = grp.add(total, b);
    bad_total += total != 0;
  }

  for (int it = 0; it < 1000; ++it) {
    const std::size_t len = 1 + rng() % 12;
    const auto s = subdivide(named("Theta"), {{0, len}});
    const auto o = random_orientation(rng, s.graph);
    const WeightedGraph wg(s.graph, o, random_zero_sum(rng, s.graph));
    for (const Ear& p : find_ears(s.graph)) {
      const auto ls = ear_labellings(p, wg);
      std::size_t total = 0;
      for (EdgeId e : p.edges) {
        int zeros_here = 0;
        for (const auto& l : ls) zeros_here += l.at(e) == 0;
        bad_triple += zeros_here != 1;
      }
      for (const auto& l : ls) total += l.support();
      bad_triple += total != 2 * p.length();
    }
  }

  for (const auto& g : catalog("connected_le7.g6")) {
    if (g.edge_count() > 8) continue;
    ++oracle_graphs;
    const auto o = random_orientation(rng, g);
    const auto mu = elements(random_zero_sum(rng, g));
    const auto r = max_support_flow(g, o, mu, GroupSpec::z3());
    bad_oracle += static_cast<long>(r.optimum) != brute_force_optimum(g, o, mu, GroupSpec::z3());
  }

  std::ostringstream d;
  d << "uncrossing " << bad_uncross << ", total-zero " << bad_total << ", ear triples " << bad_triple << ", oracle "
    << bad_oracle << " failures over " << oracle_graphs << " graphs";
  return {bad_uncross + bad_total + bad_triple + bad_oracle == 0 && oracle_graphs > 0, d.str()};
}

Outcome reductions() {
  const auto prism = named("Prism");
  const auto b = push_three_cut(WeightedGraph::zero(prism));
  const bool complement = b.w_side.members.size() == 1 && prism.degree(b.w_side.members.front()) == 3 &&
                          b.x.members.size() == prism.vertex_count() - 1 && b.cut_edges.size() == 3;

  std::mt19937_64 rng(10);
  std::size_t conforming = 0, good = 0;
  for (const auto& base : catalog_filtered("cubic_le10.g6", "3ec")) {
    if (base.vertex_count() == 4) continue;
    for (int rep = 0; rep < 3; ++rep) {
      std::map<EdgeId, std::size_t> len;
      for (const Edge& e : base.edges()) len[e.id] = rep == 0 ? 1 : 1 + rng() % 4;
      const auto s = subdivide(base, len);
      std::map<VertexId, std::uint8_t> mu;
      for (VertexId v : s.graph.vertices()) mu[v] = 0;
      const auto bs = push_three_cut(WeightedGraph(s.graph, s.orientation, mu));
      if (!conforming_source(s.graph, bs)) continue;
      ++conforming;
      const auto dg = build_delta(bs);
      good += dg.cubic && dg.cyclically_4ec;
    }
  }
  std::ostringstream d;
  d << "Prism cut " << (complement ? "isolates one degree-3 vertex" : "unexpected") << ", " << good << " of " << conforming
    << " delta graphs cubic and cyclically 4-edge-connected";
  return {complement && conforming > 0 && good == conforming, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"K4 optimum", k4_optimum},
      {"tripod tight family", tripods},
      {"small 3-edge-connected sweep", small_sweep},
      {"subdivision tightness", tightness},
      {"3/4 bound", three_quarter},
      {"14/15 bound", fourteen_fifteenths},
      {"2-flow construction", two_flow},
      {"lift correctness", lifts},
      {"property suites", properties},
      {"reduction constructions", reductions},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
