// flowforge command-line front end: JSON on stdout, prose on stderr.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "flowforge/flowforge.hpp"

namespace ff = flowforge;

namespace {

enum Exit { kOk = 0, kFail = 1, kParse = 2, kBudget = 3, kPrecondition = 4 };

struct Defaults {
  std::uint64_t budget = ff::kDefaultBudget;
  unsigned threads = 1;
  bool timing = false;
};

void emit(const ff::Json& j) { std::cout << j.dump(2) << "\n"; }

int fail(int code, const std::string& msg) {
  std::cerr << "flowforge: " << msg << "\n";
  return code;
}

std::uint64_t parse_budget(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size() || v == 0) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ff::InvalidArgument("bad budget '" + s + "' in " + where);
  }
}

Defaults load_defaults(const std::string& config_path) {
  Defaults d;
  if (!config_path.empty()) {
    const auto cfg = ff::parse_config(ff::detail::slurp(config_path));
    for (const auto& [k, v] : cfg) {
      if (k == "budget") d.budget = parse_budget(v, config_path);
      else if (k == "threads") d.threads = static_cast<unsigned>(std::stoul(v));
      else if (k == "timing") d.timing = v == "true" || v == "1";
      else std::cerr << "flowforge: ignoring unknown config key '" << k << "'\n";
    }
  }
  if (const char* env = std::getenv("FLOWFORGE_BUDGET")) d.budget = parse_budget(env, "FLOWFORGE_BUDGET");
  return d;
}

std::map<ff::VertexId, std::uint8_t> read_mu(const std::string& spec, const ff::MultiGraph& g) {
  if (spec == "zero") {
    std::map<ff::VertexId, std::uint8_t> mu;
    for (auto v : g.vertices()) mu.emplace(v, 0);
    return mu;
  }
  return ff::parse_mu(ff::detail::slurp(spec), g);
}

int cmd_solve(const std::string& graph_path, const std::string& mu_spec, const std::string& group_name, const Defaults& d) {
  ff::MultiGraph g;
  ff::GroupSpec group = ff::GroupSpec::z3();
  std::map<ff::VertexId, std::uint8_t> mu;
  try {
    g = ff::read_graph(graph_path);
    group = ff::GroupSpec::parse(group_name);
    mu = read_mu(mu_spec, g);
  } catch (const ff::Error& e) {
    return fail(kParse, e.what());
  }
  ff::VertexWeights w;
  for (auto [v, x] : mu) {
    if (x != 0 && !(group == ff::GroupSpec::z3())) return fail(kParse, "a nonzero weight needs --group z3");
    w.emplace(v, x);
  }
  ff::SolveOptions opt;
  opt.budget = d.budget;
  opt.threads = d.threads;
  ff::RatioReport r;
  try {
    r = ff::max_support_flow(g, ff::Orientation::of(g), w, group, opt);
    if (group == ff::GroupSpec::z3() && r.certificate.boundary_ok) {
      bool zero = true;
      for (auto [v, x] : mu) zero = zero && x == 0;
      if (zero) r.certificate.integer_witness = ff::lift_modular_to_integer(g, r.certificate.orientation, r.certificate.labelling);
    }
  } catch (const ff::Infeasible& e) {
    return fail(kPrecondition, e.what());
  }
  emit(ff::ratio_report_json(g, r, d.timing));
  std::cerr << "support " << r.optimum << " of " << g.edge_count() << " (" << r.ratio.str() << "), " << r.enumerated << " of "
            << r.coset_size << " coset members\n";
  if (!r.optimal) return fail(kBudget, "budget exceeded; reported support is a lower bound");
  return kOk;
}

int cmd_verify(const std::string& graph_path, const std::string& cert_path) {
  ff::MultiGraph g;
  ff::FlowCertificate c;
  try {
    g = ff::read_graph(graph_path);
    ff::Json j = ff::Json::parse(ff::detail::slurp(cert_path));
    if (j.contains("certificate")) j = j["certificate"];
    c = ff::certificate_from_json(j);
  } catch (const ff::Error& e) {
    return fail(kParse, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(kParse, std::string("malformed JSON: ") + e.what());
  }
  const auto chk = ff::check_certificate(g, c);
  ff::Json out;
  out["schema_version"] = ff::kSchemaVersion;
  out["kind"] = "verification";
  out["ok"] = chk.status == ff::CertificateStatus::ok;
  out["status"] = chk.status == ff::CertificateStatus::ok ? "ok" : chk.status == ff::CertificateStatus::tampered ? "tampered" : "different_graph";
  out["first_failing_vertex"] = chk.first_failing_vertex ? ff::Json(*chk.first_failing_vertex) : ff::Json(nullptr);
  out["reason"] = chk.reason;
  out["digest"] = c.digest;
  emit(out);
  switch (chk.status) {
    case ff::CertificateStatus::ok:
      std::cerr << "certificate verified\n";
      return kOk;
    case ff::CertificateStatus::tampered:
      return fail(kFail, chk.reason);
    default:
      return fail(kParse, "certificate is for a different graph: " + chk.reason);
  }
}

int cmd_sweep(const std::string& manifest, const std::string& mu_spec, const Defaults& d) {
  std::vector<ff::CatalogEntry> cat;
  ff::MuMode mode;
  try {
    cat = ff::load_manifest(manifest);
    if (mu_spec == "zero") {
      mode.kind = ff::MuMode::Kind::zero;
    } else if (mu_spec.rfind("exhaustive", 0) == 0) {
      mode.kind = ff::MuMode::Kind::exhaustive;
      if (mu_spec.size() > 10) {
        if (mu_spec[10] != ':') throw ff::InvalidArgument("expected exhaustive or exhaustive:N");
        mode.exhaustive_max_n = std::stoul(mu_spec.substr(11));
      }
    } else if (mu_spec.rfind("sampled:", 0) == 0) {
      const auto rest = mu_spec.substr(8);
      const auto colon = rest.find(':');
      if (colon == std::string::npos) throw ff::InvalidArgument("sampled mode needs an explicit seed: sampled:SEED:COUNT");
      mode.kind = ff::MuMode::Kind::sampled;
      mode.seed = std::stoull(rest.substr(0, colon));
      mode.count = std::stoul(rest.substr(colon + 1));
    } else {
      throw ff::InvalidArgument("unknown --mu mode '" + mu_spec + "'");
    }
  } catch (const ff::Error& e) {
    return fail(kParse, e.what());
  } catch (const std::logic_error& e) {
    return fail(kParse, std::string("bad --mu value: ") + e.what());
  }
  ff::SolveOptions opt;
  opt.budget = d.budget;
  const auto s = ff::counterexample_sweep(cat, mode, opt, d.threads);
  emit(ff::sweep_summary_json(s));
  std::cerr << s.completed << " of " << s.instances << " instances, " << s.checks << " checks, " << s.failures.size()
            << " failures, " << s.skipped.size() << " skipped";
  if (s.min_slack) std::cerr << ", min slack " << *s.min_slack;
  std::cerr << "\n";
  return s.failures.empty() ? kOk : kFail;
}

int cmd_bounds(const std::string& graph_path, const std::string& which, int j, const Defaults& d) {
  ff::MultiGraph g;
  try {
    g = ff::read_graph(graph_path);
  } catch (const ff::Error& e) {
    return fail(kParse, e.what());
  }
  ff::FlowCertificate c;
  ff::Rational target;
  try {
    if (which == "3/4") {
      ff::SolveOptions opt;
      opt.budget = d.budget;
      c = ff::three_quarter_flow(g, opt);
      target = ff::Rational(3, 4);
    } else if (which == "14/15") {
      c = ff::fourteen_fifteenths_flow(g);
      target = ff::Rational(14, 15);
    } else if (which == "2flow") {
      c = ff::two_flow_bound(g, j);
      target = ff::Rational(2 * j, 2 * j + 1);
    } else {
      return fail(kParse, "--which must be 3/4, 14/15 or 2flow");
    }
  } catch (const ff::PreconditionError& e) {
    return fail(kPrecondition, e.what());
  }
  const auto m = static_cast<long long>(g.edge_count());
  const long long need = (target.num * m + target.den - 1) / target.den;
  const bool meets = static_cast<long long>(c.support) >= need;
  const auto chk = ff::check_certificate(g, c);
  ff::Json out;
  out["schema_version"] = ff::kSchemaVersion;
  out["kind"] = "bound";
  out["which"] = which;
  out["target"] = target.str();
  out["required_support"] = need;
  out["support"] = c.support;
  out["meets_bound"] = meets;
  out["verified"] = chk.status == ff::CertificateStatus::ok;
  out["certificate"] = ff::certificate_json(c);
  emit(out);
  std::cerr << which << " construction: support " << c.support << " of " << m << " (need " << need << ")\n";
  if (chk.status != ff::CertificateStatus::ok) return fail(kFail, "certificate failed verification: " + chk.reason);
  return meets ? kOk : fail(kFail, "support below the bound");
}

int cmd_reduce(const std::string& graph_path, const std::string& mu_spec, const std::string& to) {
  ff::MultiGraph g;
  std::map<ff::VertexId, std::uint8_t> mu;
  try {
    g = ff::read_graph(graph_path);
    mu = read_mu(mu_spec, g);
  } catch (const ff::Error& e) {
    return fail(kParse, e.what());
  }
  try {
    const ff::WeightedGraph wg(g, ff::Orientation::of(g), mu);
    const auto b = ff::push_three_cut(wg);
    if (to == "bullet") {
      emit(ff::bullet_json(b));
    } else if (to == "delta") {
      const auto d = ff::build_delta(b);
      emit(ff::delta_json(b, d));
      std::cerr << "delta: " << d.graph.vertex_count() << " vertices, cubic " << d.cubic << ", cyclically 4-edge-connected "
                << d.cyclically_4ec << "\n";
    } else {
      return fail(kParse, "--to must be bullet or delta");
    }
  } catch (const ff::PreconditionError& e) {
    return fail(kPrecondition, e.what());
  } catch (const ff::InvalidArgument& e) {
    return fail(kParse, e.what());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Large-support group-valued flows on multigraphs"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config;
  std::optional<std::uint64_t> budget;
  std::optional<unsigned> threads;
  bool timing = false;
  app.add_option("--config", config, "key = value defaults file")->check(CLI::ExistingFile);
  app.add_option("--budget", budget, "coset enumeration budget");
  app.add_option("--threads", threads, "worker threads");
  app.add_flag("--timing", timing, "include wall-clock seconds in JSON");

  std::string graph, mu = "zero", group = "z3", cert, manifest, mu_mode = "exhaustive", which, to = "delta";
  int j = 1;

  auto* solve = app.add_subcommand("solve", "maximum-support flow with boundary mu");
  solve->add_option("graph", graph)->required();
  solve->add_option("--mu", mu, "mu file or 'zero'");
  solve->add_option("--group", group, "z3, z2, z2z2, z3z3, z6");

  auto* verify = app.add_subcommand("verify", "recheck a certificate against a graph");
  verify->add_option("graph", graph)->required();
  verify->add_option("certificate", cert)->required();

  auto* sweep = app.add_subcommand("sweep", "gain >= bonus over a catalog");
  sweep->add_option("manifest", manifest)->required();
  sweep->add_option("--mu", mu_mode, "zero, exhaustive[:N] or sampled:SEED:COUNT");

  auto* bounds = app.add_subcommand("bounds", "constructive support bounds");
  bounds->add_option("graph", graph)->required();
  bounds->add_option("--which", which)->required();
  bounds->add_option("--j", j, "2j-edge-connectivity for 2flow");

  auto* reduce = app.add_subcommand("reduce", "pushed 3-cut and triangle-contracted graphs");
  reduce->add_option("graph", graph)->required();
  reduce->add_option("--mu", mu, "mu file or 'zero'");
  reduce->add_option("--to", to, "bullet or delta");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kParse;
  }

  Defaults d;
  try {
    d = load_defaults(config);
  } catch (const ff::Error& e) {
    return fail(kParse, e.what());
  }
  if (budget) d.budget = *budget;
  if (threads) d.threads = std::max(1u, *threads);
  d.timing = d.timing || timing;

  try {
    if (*solve) return cmd_solve(graph, mu, group, d);
    if (*verify) return cmd_verify(graph, cert);
    if (*sweep) return cmd_sweep(manifest, mu_mode, d);
    if (*bounds) return cmd_bounds(graph, which, j, d);
    if (*reduce) return cmd_reduce(graph, mu, to);
  } catch (const ff::Error& e) {
    return fail(kFail, std::string("internal error: ") + e.what());
  }
  return kParse;
}
