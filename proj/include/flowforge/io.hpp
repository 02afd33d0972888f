#pragma once

// Edgelist and graph6 ingestion, catalog manifests, μ and config files, and
// the JSON shapes shared by the CLI and the tests.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "flowforge/bounds.hpp"
#include "flowforge/errors.hpp"
#include "flowforge/flow_algebra.hpp"
#include "flowforge/generators.hpp"
#include "flowforge/multigraph.hpp"
#include "flowforge/reduction.hpp"
#include "flowforge/solver.hpp"

namespace flowforge {

using Json = nlohmann::ordered_json;
inline constexpr int kSchemaVersion = 1;

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::string strip_comment(const std::string& s) { return s.substr(0, s.find('#')); }

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline unsigned long parse_count(const std::string& w, std::size_t line) {
  if (w.empty() || !std::all_of(w.begin(), w.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError("expected a non-negative integer, got '" + w + "'", line);
  try {
    return std::stoul(w);
  } catch (const std::out_of_range&) {
    throw ParseError("integer out of range: " + w, line);
  }
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace detail

// ---------------------------------------------------------------- edgelist ----

// "n m", then m lines "u v" with 0 <= u, v < n. '#' starts a comment.
inline MultiGraph parse_edgelist(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool header = false;
  unsigned long n = 0, m = 0;
  MultiGraph g;
  while (std::getline(in, raw)) {
    ++line;
    const auto w = detail::words(detail::strip_comment(raw));
    if (w.empty()) continue;
    if (w.size() != 2) throw ParseError("expected two integers, got " + std::to_string(w.size()) + " fields", line);
    const auto a = detail::parse_count(w[0], line), b = detail::parse_count(w[1], line);
    if (!header) {
      header = true;
      n = a;
      m = b;
      if (n > (1ul << 24)) throw ParseError("vertex count too large", line);
      g = MultiGraph(n);
      continue;
    }
    if (g.edge_count() == m) throw ParseError("more edge lines than the declared " + std::to_string(m), line);
    if (a >= n || b >= n) throw ParseError("vertex out of range 0.." + std::to_string(n ? n - 1 : 0), line);
    g.add_edge(static_cast<VertexId>(a), static_cast<VertexId>(b));
  }
  if (!header) throw ParseError("missing 'n m' header", line ? line : 1);
  if (g.edge_count() != m)
    throw ParseError("declared " + std::to_string(m) + " edges, found " + std::to_string(g.edge_count()), line);
  return g;
}

// Vertices are written by position, so non-dense ids are renumbered.
inline std::string write_edgelist(const MultiGraph& g) {
  std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count()) + "\n";
  for (const Edge& e : g.edges()) out += std::to_string(g.index_of(e.u)) + " " + std::to_string(g.index_of(e.v)) + "\n";
  return out;
}

// ------------------------------------------------------------------ graph6 ----

inline MultiGraph parse_graph6(std::string s, std::size_t line = 1) {
  s = detail::trim(s);
  if (s.rfind(">>graph6<<", 0) == 0) s = s.substr(10);
  if (s.empty()) throw ParseError("empty graph6 string", line);
  if (s[0] == ':' || s[0] == ';') throw ParseError("sparse6 is not supported", line);
  if (s[0] == '&') throw ParseError("digraph6 is not supported", line);
  for (char c : s)
    if (c < 63 || c > 126) throw ParseError("invalid graph6 character", line);
  std::size_t pos = 0;
  auto take = [&]() -> unsigned {
    if (pos >= s.size()) throw ParseError("truncated graph6 string", line);
    return static_cast<unsigned>(s[pos++] - 63);
  };
  unsigned long n = take();
  if (n == 63) {
    if (pos < s.size() && s[pos] == 126) {
      ++pos;
      n = 0;
      for (int i = 0; i < 6; ++i) n = (n << 6) | take();
    } else {
      n = 0;
      for (int i = 0; i < 3; ++i) n = (n << 6) | take();
    }
  }
  const std::size_t bits = n * (n - (n ? 1 : 0)) / 2;
  if (s.size() - pos != (bits + 5) / 6) throw ParseError("graph6 length does not match vertex count " + std::to_string(n), line);
  MultiGraph g(n);
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::size_t k = 0;
  for (unsigned long j = 1; j < n; ++j)
    for (unsigned long i = 0; i < j; ++i, ++k) {
      const unsigned byte = static_cast<unsigned>(s[pos + k / 6] - 63);
      if ((byte >> (5 - k % 6)) & 1) edges.emplace_back(static_cast<VertexId>(i), static_cast<VertexId>(j));
    }
  std::sort(edges.begin(), edges.end());
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline std::string write_graph6(const MultiGraph& g) {
  const std::size_t n = g.vertex_count();
  std::set<std::pair<std::size_t, std::size_t>> adj;
  for (const Edge& e : g.edges()) {
    if (e.is_loop()) throw InvalidArgument("graph6 cannot represent loops");
    const auto a = g.index_of(e.u), b = g.index_of(e.v);
    if (!adj.emplace(std::min(a, b), std::max(a, b)).second) throw InvalidArgument("graph6 cannot represent multi-edges");
  }
  std::string out;
  if (n <= 62) {
    out += static_cast<char>(63 + n);
  } else if (n <= 258047) {
    out += static_cast<char>(126);
    for (int i = 2; i >= 0; --i) out += static_cast<char>(63 + ((n >> (6 * i)) & 63));
  } else {
    out += static_cast<char>(126);
    out += static_cast<char>(126);
    for (int i = 5; i >= 0; --i) out += static_cast<char>(63 + ((n >> (6 * i)) & 63));
  }
  unsigned acc = 0, used = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (adj.count({i, j}) ? 1u : 0u);
      if (++used == 6) {
        out += static_cast<char>(63 + acc);
        acc = used = 0;
      }
    }
  if (used) out += static_cast<char>(63 + (acc << (6 - used)));
  return out;
}

inline std::vector<MultiGraph> parse_graph6_lines(const std::string& text) {
  std::vector<MultiGraph> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (detail::trim(raw).empty()) continue;
    out.push_back(parse_graph6(raw, line));
  }
  return out;
}

enum class GraphFormat { edgelist, graph6 };

inline MultiGraph parse_graph(const std::string& text, GraphFormat f) {
  if (f == GraphFormat::edgelist) return parse_edgelist(text);
  const auto gs = parse_graph6_lines(text);
  if (gs.size() != 1) throw ParseError("expected exactly one graph6 line, found " + std::to_string(gs.size()), 1);
  return gs.front();
}

inline GraphFormat format_for_path(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  return ext == ".g6" || ext == ".graph6" ? GraphFormat::graph6 : GraphFormat::edgelist;
}

inline MultiGraph read_graph(const std::string& path) { return parse_graph(detail::slurp(path), format_for_path(path)); }

// ---------------------------------------------------------- μ and config ----

// Lines "vertex value"; vertices not listed get 0.
inline std::map<VertexId, std::uint8_t> parse_mu(const std::string& text, const MultiGraph& g) {
  std::map<VertexId, std::uint8_t> mu;
  for (VertexId v : g.vertices()) mu.emplace(v, 0);
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto w = detail::words(detail::strip_comment(raw));
    if (w.empty()) continue;
    if (w.size() != 2) throw ParseError("expected 'vertex value'", line);
    const auto v = detail::parse_count(w[0], line), x = detail::parse_count(w[1], line);
    if (v >= g.vertex_count()) throw ParseError("vertex out of range", line);
    if (x > 2) throw ParseError("weight must be 0, 1 or 2", line);
    mu[g.vertices()[v]] = static_cast<std::uint8_t>(x);
  }
  return mu;
}

inline std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = detail::trim(detail::strip_comment(raw));
    if (s.empty() || s.front() == '[') continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line);
    std::string key = detail::trim(s.substr(0, eq)), value = detail::trim(s.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line);
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    out[key] = value;
  }
  return out;
}

// --------------------------------------------------------------- manifests ----

inline bool passes_filter(const MultiGraph& g, const std::string& filter) {
  if (filter.empty() || filter == "any") return true;
  if (filter == "2ec") return is_k_edge_connected(g, 2);
  if (filter == "3ec") return is_k_edge_connected(g, 3);
  if (filter == "sub3ec") return is_subdivision_of_3ec(g);
  if (filter == "cubic3ec")
    return std::all_of(g.vertices().begin(), g.vertices().end(), [&](VertexId v) { return g.degree(v) == 3; }) &&
           is_k_edge_connected(g, 3);
  if (filter == "cubic2ec")
    return std::all_of(g.vertices().begin(), g.vertices().end(), [&](VertexId v) { return g.degree(v) == 3; }) &&
           is_k_edge_connected(g, 2);
  throw InvalidArgument("unknown filter '" + filter + "'");
}

namespace detail {

inline std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

}  // namespace detail

// One entry per line: `name: generator(args)`. Generators:
//   named(Name)                     tripods(a b c; d e f; ...)
//   truncation(Name)                subdivide(Name, L) or subdivide(Name, l1 l2 ...)
//   edgelist(path)                  g6(path[, filter[, max_n]])
// Paths are relative to base_dir. A g6 line expands to name/0, name/1, ...
inline std::vector<CatalogEntry> parse_manifest(const std::string& text, const std::string& base_dir = ".") {
  std::vector<CatalogEntry> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  auto path_of = [&](const std::string& p) { return (std::filesystem::path(base_dir) / p).string(); };
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = detail::trim(detail::strip_comment(raw));
    if (s.empty()) continue;
    const auto colon = s.find(':');
    const auto open = s.find('(');
    if (colon == std::string::npos || open == std::string::npos || open < colon || s.back() != ')')
      throw ParseError("expected 'name: generator(args)'", line);
    const std::string name = detail::trim(s.substr(0, colon));
    const std::string gen = detail::trim(s.substr(colon + 1, open - colon - 1));
    const std::string argtext = s.substr(open + 1, s.size() - open - 2);
    const auto args = detail::split_args(argtext);
    const std::string spec = gen + "(" + argtext + ")";
    auto need = [&](std::size_t lo, std::size_t hi) {
      if (args.size() < lo || args.size() > hi) throw ParseError(gen + " takes " + std::to_string(lo) + ".." + std::to_string(hi) + " arguments", line);
    };
    try {
      if (gen == "named") {
        need(1, 1);
        out.push_back({name, spec, named(args[0]), "named graph"});
      } else if (gen == "truncation") {
        need(1, 1);
        auto t = truncation(named(args[0]));
        if (!t.three_edge_connected) throw ParseError("truncation of " + args[0] + " is not 3-edge-connected", line);
        out.push_back({name, spec, std::move(t.graph), "tripod union (truncation)"});
      } else if (gen == "tripods") {
        std::vector<std::array<VertexId, 3>> leaves;
        std::istringstream groups(argtext);
        for (std::string grp; std::getline(groups, grp, ';');) {
          const auto w = detail::words(grp);
          if (w.size() != 3) throw ParseError("each tripod needs three leaf ids", line);
          leaves.push_back({static_cast<VertexId>(detail::parse_count(w[0], line)), static_cast<VertexId>(detail::parse_count(w[1], line)),
                            static_cast<VertexId>(detail::parse_count(w[2], line))});
        }
        auto t = tripod_union(leaves);
        out.push_back({name, spec, std::move(t.graph), t.three_edge_connected ? "tripod union" : "tripod union (not 3-edge-connected)"});
      } else if (gen == "subdivide") {
        need(2, 2);
        const MultiGraph base = named(args[0]);
        const auto ls = detail::words(args[1]);
        std::map<EdgeId, std::size_t> lengths;
        if (ls.size() == 1) {
          for (const Edge& e : base.edges()) lengths[e.id] = detail::parse_count(ls[0], line);
        } else if (ls.size() == base.edge_count()) {
          for (std::size_t i = 0; i < ls.size(); ++i) lengths[base.edges()[i].id] = detail::parse_count(ls[i], line);
        } else {
          throw ParseError("subdivide needs one length or one per edge", line);
        }
        out.push_back({name, spec, subdivide(base, lengths).graph, "subdivision of " + args[0]});
      } else if (gen == "edgelist") {
        need(1, 1);
        out.push_back({name, spec, read_graph(path_of(args[0])), "edgelist file"});
      } else if (gen == "g6") {
        need(1, 3);
        const std::string filter = args.size() > 1 ? args[1] : "any";
        const unsigned long max_n = args.size() > 2 ? detail::parse_count(args[2], line) : ~0ul;
        const auto gs = parse_graph6_lines(detail::slurp(path_of(args[0])));
        std::size_t k = 0;
        for (std::size_t i = 0; i < gs.size(); ++i) {
          if (gs[i].vertex_count() > max_n || !passes_filter(gs[i], filter)) continue;
          out.push_back({name + "/" + std::to_string(k++), spec, gs[i], "graph6 catalog line " + std::to_string(i + 1)});
        }
      } else {
        throw ParseError("unknown generator '" + gen + "'", line);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line);
    }
  }
  return out;
}

inline std::vector<CatalogEntry> load_manifest(const std::string& path) {
  return parse_manifest(detail::slurp(path), std::filesystem::path(path).parent_path().string());
}

// -------------------------------------------------------------------- JSON ----

inline Json element_json(const GroupSpec& group, Element x) {
  if (group.factors() == 1) return x;
  Json a = Json::array();
  for (auto c : group.components(x)) a.push_back(c);
  return a;
}

inline Element element_from_json(const GroupSpec& group, const Json& j) {
  std::vector<long long> c;
  if (j.is_array()) {
    for (const auto& x : j) c.push_back(x.get<long long>());
  } else {
    c.push_back(j.get<long long>());
  }
  if (c.size() != group.factors()) throw InvalidArgument("value has the wrong number of components for " + group.name());
  for (std::size_t f = 0; f < c.size(); ++f)
    if (c[f] < 0 || c[f] >= static_cast<long long>(group.orders()[f])) throw InvalidArgument("value component out of range");
  return group.make(c);
}

inline Json certificate_json(const FlowCertificate& c) {
  const GroupSpec& group = c.labelling.group;
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "certificate";
  j["group"] = group.name();
  Json edges = Json::array();
  for (const auto& [e, x] : c.labelling.values) {
    const Arc& a = c.orientation.arc(e);
    edges.push_back(Json{{"id", e}, {"tail", a.tail}, {"head", a.head}, {"value", element_json(group, x)}});
  }
  j["edges"] = std::move(edges);
  Json mu = Json::array();
  for (const auto& [v, x] : c.mu) mu.push_back(Json{{"vertex", v}, {"value", element_json(group, x)}});
  j["mu"] = std::move(mu);
  j["boundary_ok"] = c.boundary_ok;
  j["support"] = c.support;
  j["edge_count"] = c.edges;
  j["gain"] = c.gain;
  j["ratio"] = c.ratio.str();
  j["digest"] = c.digest;
  if (c.integer_witness) {
    Json iv = Json::array();
    for (const auto& [e, x] : c.integer_witness->values) iv.push_back(Json{{"id", e}, {"value", x}});
    j["integer_bound"] = c.integer_witness->bound;
    j["integer_values"] = std::move(iv);
  }
  return j;
}

// Reads back exactly what certificate_json writes; the flow fields are kept as
// claimed so a verifier can compare them with recomputed values.
inline FlowCertificate certificate_from_json(const Json& j) {
  try {
    FlowCertificate c;
    const GroupSpec group = GroupSpec::parse(j.at("group").get<std::string>());
    c.labelling = EdgeLabelling(group);
    for (const auto& e : j.at("edges")) {
      const EdgeId id = e.at("id").get<EdgeId>();
      c.orientation.set(id, Arc{e.at("tail").get<VertexId>(), e.at("head").get<VertexId>()});
      c.labelling.values[id] = element_from_json(group, e.at("value"));
    }
    for (const auto& m : j.at("mu")) c.mu[m.at("vertex").get<VertexId>()] = element_from_json(group, m.at("value"));
    c.boundary_ok = j.at("boundary_ok").get<bool>();
    c.support = j.at("support").get<std::size_t>();
    c.edges = j.at("edge_count").get<std::size_t>();
    c.gain = j.at("gain").get<std::int64_t>();
    c.ratio = Rational::parse(j.at("ratio").get<std::string>());
    c.digest = j.at("digest").get<std::string>();
    if (j.contains("integer_values")) {
      IntegerFlow f;
      f.bound = j.at("integer_bound").get<int>();
      for (const auto& e : j.at("integer_values")) f.values[e.at("id").get<EdgeId>()] = e.at("value").get<long>();
      c.integer_witness = std::move(f);
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what(), 1);
  }
}

enum class CertificateStatus { ok, tampered, different_graph };

struct CertificateCheck {
  CertificateStatus status = CertificateStatus::ok;
  std::optional<VertexId> first_failing_vertex;
  std::string reason;
};

// Structural match first (edge ids, endpoints, vertex set), then every claim
// is recomputed from the labelling.
inline CertificateCheck check_certificate(const MultiGraph& g, const FlowCertificate& c) {
  CertificateCheck r;
  auto differ = [&](std::string why) {
    r.status = CertificateStatus::different_graph;
    r.reason = std::move(why);
    return r;
  };
  if (c.labelling.values.size() != g.edge_count()) return differ("edge count differs");
  for (const Edge& e : g.edges()) {
    if (!c.labelling.values.count(e.id) || !c.orientation.contains(e.id)) return differ("edge " + std::to_string(e.id) + " missing");
    const Arc& a = c.orientation.arc(e.id);
    if (!((a.tail == e.u && a.head == e.v) || (a.tail == e.v && a.head == e.u)))
      return differ("edge " + std::to_string(e.id) + " has different endpoints");
  }
  if (c.mu.size() != g.vertex_count()) return differ("vertex set differs");
  for (VertexId v : g.vertices())
    if (!c.mu.count(v)) return differ("vertex " + std::to_string(v) + " missing");

  r.status = CertificateStatus::tampered;
  const auto b = boundary(g, c.orientation, c.labelling);
  for (VertexId v : g.vertices())
    if (b.at(v) != c.mu.at(v)) {
      r.first_failing_vertex = v;
      r.reason = "boundary differs from mu at vertex " + std::to_string(v);
      return r;
    }
  const FlowCertificate fresh = certify(g, c.orientation, c.mu, c.labelling);
  if (!c.boundary_ok) r.reason = "certificate does not claim boundary_ok";
  else if (fresh.digest != c.digest) r.reason = "digest mismatch";
  else if (fresh.support != c.support || fresh.edges != c.edges || fresh.gain != c.gain || !(fresh.ratio == c.ratio))
    r.reason = "support, gain or ratio claim does not match the labelling";
  else if (c.integer_witness && !verify_integer_lift(g, c.orientation, c.labelling, *c.integer_witness))
    r.reason = "integer witness fails";
  if (!r.reason.empty()) return r;
  r.status = CertificateStatus::ok;
  return r;
}

inline Json ratio_report_json(const MultiGraph& g, const RatioReport& r, bool timing = false) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "ratio_report";
  j["vertices"] = g.vertex_count();
  j["edges"] = g.edge_count();
  j["group"] = r.certificate.labelling.group.name();
  j["optimum"] = r.optimum;
  j["ratio"] = r.ratio.str();
  j["optimal"] = r.optimal;
  j["budget_exceeded"] = r.budget_exceeded;
  j["coset_size"] = r.coset_size;
  j["enumerated"] = r.enumerated;
  j["min_support"] = r.min_support;
  if (timing) j["wall_seconds"] = r.wall_seconds;
  j["certificate"] = certificate_json(r.certificate);
  return j;
}

inline Json graph_json(const MultiGraph& g) {
  Json j;
  Json vs = Json::array();
  for (VertexId v : g.vertices()) vs.push_back(v);
  Json es = Json::array();
  for (const Edge& e : g.edges()) es.push_back(Json{{"id", e.id}, {"u", e.u}, {"v", e.v}});
  j["vertices"] = std::move(vs);
  j["edges"] = std::move(es);
  return j;
}

inline Json ledger_json(const BonusLedger& l) {
  Json j;
  Json es = Json::array();
  for (const auto& e : l.entries) {
    Json ej;
    ej["edges"] = e.ear.edges;
    ej["kind"] = to_string(e.ear.kind);
    ej["length"] = e.length;
    ej["residue"] = e.residue;
    ej["equitable"] = e.equitable;
    ej["bonus"] = e.bonus;
    ej["usable"] = e.usable;
    es.push_back(std::move(ej));
  }
  j["ears"] = std::move(es);
  j["total"] = l.total;
  j["usable_total"] = l.usable_total;
  return j;
}

inline Json mu_json(const std::map<VertexId, std::uint8_t>& mu) {
  Json a = Json::array();
  for (auto [v, x] : mu) a.push_back(Json{{"vertex", v}, {"value", x}});
  return a;
}

inline Json failure_bundle_json(const FailureBundle& f) {
  Json j;
  j["instance"] = f.instance;
  j["reason"] = f.reason;
  j["graph"] = graph_json(f.graph);
  j["edgelist"] = write_edgelist(f.graph);
  j["mu"] = mu_json(f.mu);
  j["gain"] = f.report.gain;
  j["bonus"] = f.report.bonus;
  j["slack"] = f.report.slack;
  j["ledger"] = ledger_json(f.report.ledger);
  j["certificate"] = certificate_json(f.report.solve.certificate);
  return j;
}

inline Json sweep_summary_json(const SweepSummary& s) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "sweep_summary";
  j["instances"] = s.instances;
  j["completed"] = s.completed;
  j["checks"] = s.checks;
  j["min_slack"] = s.min_slack ? Json(*s.min_slack) : Json(nullptr);
  j["min_ratio_mu_zero"] = s.min_ratio ? Json(s.min_ratio->str()) : Json(nullptr);
  j["tight_instances"] = s.tight_instances;
  j["tight_checks"] = s.tight_checks;
  Json te = Json::array();
  for (const auto& t : s.tight_examples) te.push_back(Json{{"instance", t.instance}, {"mu", mu_json(t.mu)}});
  j["tight_examples"] = std::move(te);
  Json fs = Json::array();
  for (const auto& f : s.failures) fs.push_back(failure_bundle_json(f));
  j["failures"] = std::move(fs);
  Json sk = Json::array();
  for (const auto& [n, why] : s.skipped) sk.push_back(Json{{"instance", n}, {"reason", why}});
  j["skipped"] = std::move(sk);
  return j;
}

inline Json bullet_json(const BulletGraph& b) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "bullet";
  j["x"] = b.x.members;
  j["w_side"] = b.w_side.members;
  j["w"] = b.w;
  j["mu_w"] = b.graph.mu(b.w);
  j["cut_edges"] = b.cut_edges;
  j["graph"] = graph_json(b.graph.graph());
  j["ledger"] = ledger_json(bonus_of(b));
  Json viol = Json::array();
  for (const auto& z : bullet3ec_violations(b)) viol.push_back(z.members);
  j["cut_observation_violations"] = std::move(viol);
  return j;
}

inline Json delta_json(const BulletGraph& b, const DeltaGraph& d) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "delta";
  j["graph"] = graph_json(d.graph);
  j["w"] = d.w;
  Json prov = Json::array();
  for (const auto& [v, p] : d.provenance) {
    Json pj{{"vertex", v}};
    pj["origin"] = p.origin == DeltaOrigin::triad ? "triad" : p.origin == DeltaOrigin::inner_triangle ? "inner_triangle" : "other";
    if (p.origin == DeltaOrigin::inner_triangle) pj["triangle"] = p.triangle;
    prov.push_back(std::move(pj));
  }
  j["provenance"] = std::move(prov);
  Json res = Json::array();
  for (const auto& [e, r] : d.residue) res.push_back(Json{{"edge", e}, {"residue", r}, {"path", d.paths.at(e)}});
  j["residues"] = std::move(res);
  Json tris = Json::array();
  for (const auto& t : d.triangles) {
    const auto ty = classify_triangle(b, t);
    tris.push_back(Json{{"corners", t.corners}, {"vertices", t.vertices.members}, {"type", ty.code}, {"violation", ty.violation}});
  }
  j["inner_triangles"] = std::move(tris);
  j["cubic"] = d.cubic;
  j["cyclically_4_edge_connected"] = d.cyclically_4ec;
  return j;
}

}  // namespace flowforge
