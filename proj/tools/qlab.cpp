#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qlab/qlab.hpp"

using namespace qlab;

namespace {

constexpr int kOk = 0, kClaimFailure = 1, kUsage = 2;

struct Common {
  std::string mode = "exhaustive";
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  unsigned workers = 0;

  SearchOptions options(const Limits& limits) const {
    SearchOptions o;
    o.mode = mode == "exhaustive" ? SearchMode::exhaustive : SearchMode::sampled;
    o.samples = samples;
    o.seed = seed;
    o.workers = workers == 0 ? default_workers() : workers;
    o.limits = limits;
    return o;
  }

  void add_to(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "exhaustive or sample")->check(CLI::IsMember({"exhaustive", "sample"}));
    cmd->add_option("--samples", samples, "instances per law in sample mode")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "seed for sampled instances and random families");
    cmd->add_option("--workers", workers, "search threads (0 = hardware concurrency)");
  }
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) std::cout << text;
  else write_file(out, text);
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

int cmd_gen(const std::string& kind, const std::vector<std::string>& args, std::size_t size, double edge_prob,
            std::uint64_t seed, const std::string& out, const Limits& limits) {
  auto need = [&](std::size_t k) {
    if (args.size() != k)
      throw Error(Errc::invalid_argument, "gen " + kind + " takes " + std::to_string(k) + " argument(s)");
  };
  auto count = [](const std::string& s) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size()) throw Error(Errc::invalid_argument, "expected a count, got '" + s + "'");
    return static_cast<std::size_t>(v);
  };
  LatticePtr l;
  if (kind == "chain") {
    need(1);
    l = chain(count(args[0]), limits);
  } else if (kind == "boolean") {
    need(1);
    l = boolean(count(args[0]), limits);
  } else if (kind == "m3") {
    need(0);
    l = diamond_m3();
  } else if (kind == "n5") {
    need(0);
    l = pentagon_n5();
  } else if (kind == "product") {
    need(2);
    l = product(*load_lattice(args[0], limits), *load_lattice(args[1], limits), limits);
  } else if (kind == "random") {
    need(0);
    l = from_random_poset(size, edge_prob, seed, limits);
  } else {
    throw Error(Errc::invalid_argument, "unknown generator '" + kind + "'");
  }
  const std::string text = dump(lattice_to_json(*l));
  std::ostringstream summary;
  summary << "n=" << l->size() << " ji=" << l->join_irreducibles().size()
          << " is_distributive=" << bool_text(l->is_distributive()) << "\n";
  if (out.empty()) {
    std::cout << text;
    std::cerr << summary.str();
  } else {
    write_file(out, text);
    std::cout << summary.str();
  }
  return kOk;
}

int cmd_wedge(const std::string& file, const std::string& kind, const std::string& method, const std::string& out,
              const Limits& limits) {
  auto l = load_lattice(file, limits);
  const auto m = method == "fast" ? WedgeMethod::fast : WedgeMethod::oracle;
  WedgeRelation w = kind == "co" ? co_wedge_below(l, m, limits)
                                 : (m == WedgeMethod::fast ? wedge_below_fast(l) : wedge_below_oracle(l, limits));
  emit(dump(relation_to_json(w)), out);
  return kOk;
}

int cmd_compose(const std::string& op, const std::string& gfile, const std::string& ffile, const std::string& lfile,
                const Limits& limits) {
  LatticePtr given = lfile.empty() ? nullptr : load_lattice(lfile, limits);
  std::map<std::string, LatticePtr> seen;
  auto resolve = [&](const std::string& name) {
    if (auto it = seen.find(name); it != seen.end()) return it->second;
    LatticePtr l = given && given->name() == name ? given : lattice_by_generator_name(name, limits);
    if (!l) throw Error(Errc::invalid_argument, "lattice '" + name + "' is not a generator name; pass --lattice");
    seen.emplace(name, l);
    return l;
  };
  const auto g = map_from_json(parse_json(read_file(gfile), gfile), resolve);
  const auto f = map_from_json(parse_json(read_file(ffile), ffile), resolve);
  MonotoneMap r = [&] {
    switch (parse_op(op)) {
      case Op::circ: return compose_usual(g, f);
      case Op::dot: return compose_dot(g, f, LatticeContext::make(f.cod(), limits)->cd_wedge());
      case Op::bullet: return compose_bullet(g, f, LatticeContext::make(f.cod(), limits)->cd_co_wedge());
    }
    throw Error(Errc::invalid_argument, "unknown operation");
  }();
  const auto c = classify(r);
  std::cout << map_to_json(r).dump() << "\n"
            << "sup_preserving=" << bool_text(c.sup_preserving) << " meet_preserving=" << bool_text(c.meet_preserving)
            << "\n";
  return kOk;
}

int cmd_laws(const std::string& file, const std::string& structure, const Common& common, const Limits& limits) {
  auto l = load_lattice(file, limits);
  const auto opt = common.options(limits);
  Env env(l, limits, opt.seed);
  struct Row {
    std::string name;
    ClaimReport report;
  };
  std::vector<Row> rows;
  auto run = [&](const std::string& law, const std::string& algebra) {
    rows.push_back({law, check_parts(env, law, {{law, {{"algebra", algebra}}}}, opt)});
  };
  std::string algebra;
  std::vector<std::string> kinds;
  if (structure == "dot") algebra = "L^L/dot", kinds = {"quantale"};
  else if (structure == "bullet") algebra = "L^L/bullet", kinds = {"co-quantale"};
  else if (structure == "circ") algebra = "L^L/circ", kinds = {"quantale", "co-quantale"};
  else if (structure == "s-circ") algebra = "S/circ", kinds = {"quantale"};
  else algebra = "M/circ", kinds = {"co-quantale"};
  run("associativity", algebra);
  for (const auto& k : kinds) run(k == "quantale" ? "sup_distributivity" : "inf_distributivity", algebra);
  if (structure == "s-circ") run("join_closed", algebra), run("op_closed", algebra);
  if (structure == "m-circ") run("meet_closed", algebra), run("op_closed", algebra);

  auto word = [](Verdict v) { return v == Verdict::pass ? "PASS" : v == Verdict::fail ? "FAIL" : "SKIPPED"; };
  bool any_fail = false;
  for (const auto& r : rows) {
    std::cout << r.name << ": " << word(r.report.verdict);
    if (r.report.verdict == Verdict::skipped) std::cout << " (" << r.report.reason << ")";
    std::cout << "\n";
    if (r.report.counterexample) {
      std::string text = report_to_text(r.report);
      std::cout << text.substr(text.find('\n') + 1);
    }
  }
  for (const auto& k : kinds) {
    const std::string dist = k == "quantale" ? "sup_distributivity" : "inf_distributivity";
    Verdict v = Verdict::pass;
    for (const auto& r : rows) {
      if (r.name == "sup_distributivity" || r.name == "inf_distributivity")
        if (r.name != dist) continue;
      if (r.report.verdict == Verdict::fail) v = Verdict::fail;
      else if (r.report.verdict == Verdict::skipped && v == Verdict::pass) v = Verdict::skipped;
    }
    std::cout << k << ": " << word(v) << "\n";
    any_fail = any_fail || v == Verdict::fail;
  }
  return any_fail && structure != "circ" ? kClaimFailure : kOk;
}

int cmd_audit(const std::string& file, const std::string& claims, const std::string& format, const std::string& out,
              const Common& common, const Limits& limits) {
  auto l = load_lattice(file, limits);
  std::vector<std::string> ids;
  if (claims != "all") {
    std::stringstream ss(claims);
    std::string id;
    while (std::getline(ss, id, ',')) {
      const auto b = id.find_first_not_of(' '), e = id.find_last_not_of(' ');
      if (b != std::string::npos) ids.push_back(id.substr(b, e - b + 1));
    }
    if (ids.empty()) throw Error(Errc::invalid_argument, "no claims selected");
  }
  const auto opt = common.options(limits);
  Env env(l, limits, opt.seed);
  const auto reports = audit(env, ids, opt);
  std::string text;
  if (format == "json") {
    text = dump(reports_to_json(reports));
  } else {
    for (const auto& r : reports) text += report_to_text(r);
  }
  emit(text, out);
  return theorem_failure(reports) ? kClaimFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qlab: compositions of monotone maps on finite lattices"};
  app.require_subcommand(1);

  std::string out;

  auto* gen = app.add_subcommand("gen", "write a lattice JSON file");
  std::string gen_kind;
  std::vector<std::string> gen_args;
  std::size_t gen_size = 4;
  double gen_edge_prob = 0.3;
  std::uint64_t gen_seed = 0;
  gen->add_option("kind", gen_kind, "chain | boolean | m3 | n5 | product | random")->required();
  gen->add_option("args", gen_args, "N for chain, K for boolean, two lattice files for product");
  gen->add_option("--size", gen_size, "poset size for random");
  gen->add_option("--edge-prob", gen_edge_prob, "edge probability for random")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_seed, "seed for random");
  gen->add_option("--out", out, "output file (stdout when omitted)");

  auto* wedge = app.add_subcommand("wedge", "compute the wedge-below or co-wedge-below relation");
  std::string wedge_file, wedge_kind = "wedge", wedge_method = "oracle";
  wedge->add_option("lattice", wedge_file)->required();
  wedge->add_option("--kind", wedge_kind)->check(CLI::IsMember({"wedge", "co"}));
  wedge->add_option("--method", wedge_method)->check(CLI::IsMember({"oracle", "fast"}));
  wedge->add_option("--out", out);

  auto* compose = app.add_subcommand("compose", "compose two maps: g after f");
  std::string compose_op = "circ", compose_g, compose_f, compose_lattice;
  compose->add_option("--op", compose_op)->check(CLI::IsMember({"circ", "dot", "bullet"}));
  compose->add_option("g", compose_g)->required();
  compose->add_option("f", compose_f)->required();
  compose->add_option("--lattice", compose_lattice, "lattice file for maps not named after a generator");

  auto* laws = app.add_subcommand("laws", "check the quantale or co-quantale laws of a structure");
  std::string laws_file, laws_structure = "dot";
  Common laws_common;
  laws->add_option("lattice", laws_file)->required();
  laws->add_option("--structure", laws_structure)->check(CLI::IsMember({"dot", "bullet", "circ", "s-circ", "m-circ"}));
  laws_common.add_to(laws);

  auto* aud = app.add_subcommand("audit", "audit the claim registry on a lattice");
  std::string audit_file, audit_claims = "all", audit_format = "text";
  Common audit_common;
  aud->add_option("lattice", audit_file)->required();
  aud->add_option("--claims", audit_claims, "comma-separated claim ids, or all");
  aud->add_option("--format", audit_format)->check(CLI::IsMember({"text", "json"}));
  aud->add_option("--out", out);
  audit_common.add_to(aud);

  auto* list = app.add_subcommand("claims", "list the claim registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const Limits limits = Limits::from_env();
    if (*gen) return cmd_gen(gen_kind, gen_args, gen_size, gen_edge_prob, gen_seed, out, limits);
    if (*wedge) return cmd_wedge(wedge_file, wedge_kind, wedge_method, out, limits);
    if (*compose) return cmd_compose(compose_op, compose_g, compose_f, compose_lattice, limits);
    if (*laws) return cmd_laws(laws_file, laws_structure, laws_common, limits);
    if (*aud) return cmd_audit(audit_file, audit_claims, audit_format, out, audit_common, limits);
    if (*list) {
      for (const auto& c : claim_registry()) std::cout << c.id << "\t" << to_string(c.expected) << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
