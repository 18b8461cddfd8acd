#ifndef QLAB_AUDIT_HPP
#define QLAB_AUDIT_HPP

#include <optional>
#include <string>
#include <vector>

#include "qlab/laws.hpp"

namespace qlab {

/// theorem: asserted by the source, a failure sets the exit code.
/// suspect: reported only. negative: the source asserts a failure, so the
/// claim passes when the scanner finds the witness.
enum class Expectation { theorem, suspect, negative };
enum class Scope { any, distributive };
enum class Verdict { pass, fail, skipped };

inline std::string_view to_string(Expectation e) {
  switch (e) {
    case Expectation::theorem: return "theorem";
    case Expectation::suspect: return "suspect";
    case Expectation::negative: return "negative";
  }
  return "?";
}
inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
  }
  return "?";
}

struct ClaimPart {
  std::string law;
  json params = json::object();
  bool expect_violation = false;
};

struct Claim {
  std::string id;
  Scope scope = Scope::distributive;
  Expectation expected = Expectation::theorem;
  std::vector<ClaimPart> parts;
  std::string note;
  bool nontrivial = false;  // needs at least two elements
};

struct ClaimReport {
  std::string claim_id;
  std::string lattice;
  Expectation expected = Expectation::theorem;
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  Verdict verdict = Verdict::pass;
  std::string reason;
  std::uint64_t instances = 0;
  std::string note;
  std::optional<Counterexample> counterexample;
};

namespace audit_detail {

inline json alg(const std::string& a) { return {{"algebra", a}}; }
inline json hetero() { return {{"A", "L"}, {"B", "B2"}, {"C", "C3"}, {"D", "C2"}}; }
inline json kind(const char* k) { return {{"kind", k}}; }

inline std::vector<ClaimPart> nucleus_parts(const std::string& algebra, const std::string& nucleus) {
  std::vector<ClaimPart> out;
  for (const char* w : {"nucleus_inflation", "nucleus_monotone", "nucleus_idempotent", "nucleus_mult"})
    out.push_back({w, {{"algebra", algebra}, {"nucleus", nucleus}}});
  return out;
}

inline std::vector<ClaimPart> concat(std::vector<ClaimPart> a, const std::vector<ClaimPart>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

inline std::vector<Claim> build_registry() {
  using S = Scope;
  using X = Expectation;
  std::vector<Claim> r;
  auto add = [&r](std::string id, S scope, X ex, std::vector<ClaimPart> parts, std::string note = {}) {
    r.push_back({std::move(id), scope, ex, std::move(parts), std::move(note), ex == X::negative});
  };
  // a law over maps A -> B -> C -> D, on L and on the fixed heterogeneous chain
  auto both = [&add](const std::string& id, const char* law) {
    add(id, S::distributive, X::theorem, {{law}});
    add(id + "[hetero]", S::any, X::theorem, {{law, hetero()}}, "A=L, B=B2, C=C3, D=C2");
  };

  add("Rem 2.1(1)", S::any, X::theorem, {{"join_closed", alg("S/circ")}});
  add("Rem 2.1(2)", S::any, X::theorem, {{"meet_closed", alg("M/circ")}});
  add("Rem 2.1(3)", S::any, X::theorem, {{"op_closed", alg("S/circ")}});
  add("Rem 2.1(4)", S::any, X::theorem, {{"bounds", {{"class", "hom"}, {"lower", "bot_const"}, {"upper", "top_const"}}}});
  add("Rem 2.1(5)", S::any, X::theorem, {{"bounds", {{"class", "S"}, {"lower", "bot_const"}, {"upper", "top_S"}}}});
  add("Rem 2.1(6)", S::any, X::theorem, {{"bounds", {{"class", "M"}, {"lower", "bot_M"}, {"upper", "top_const"}}}});
  add("Example 2.4", S::any, X::theorem,
      {{"associativity", alg("S/circ")},
       {"sup_distributivity", alg("S/circ")},
       {"join_closed", alg("S/circ")},
       {"op_closed", alg("S/circ")}});

  add("Def 3.1", S::distributive, X::theorem, {{"wedge_approximation", kind("wedge")}});
  add("Rem 3.2(1)", S::any, X::theorem, {{"wedge_extremal", kind("wedge")}});
  add("Rem 3.2(2)", S::any, X::theorem, {{"wedge_lower_closure", kind("wedge")}});
  add("Rem 3.2(3)", S::any, X::theorem, {{"wedge_upper_closure", kind("wedge")}});
  add("Rem 3.2(4)", S::any, X::theorem, {{"wedge_order", kind("wedge")}});
  add("Rem 3.2(5)", S::distributive, X::theorem, {{"wedge_join_prime", kind("wedge")}});
  add("Rem 3.3", S::distributive, X::theorem, {{"dot_below_circ"}});
  both("Prop 3.4", "dot_monotone");
  both("Rem 3.5(1)", "dot_one_variable");
  both("Rem 3.5(2)", "dot_below_circ");
  both("Prop 3.6(1)", "dot_sup_closure");
  both("Prop 3.6(2)", "dot_collapse");
  both("Prop 3.7", "dot_associativity");
  add("Thm 3.8", S::distributive, X::theorem,
      {{"associativity", alg("L^L/dot")}, {"sup_distributivity", alg("L^L/dot")}});
  add("Cor 3.9", S::distributive, X::theorem,
      {{"join_closed", alg("S/circ")},
       {"op_closed", alg("S/circ")},
       {"op_agree", {{"algebra", "S/circ"}, {"super", "L^L/dot"}}}});
  add("Cor 3.10(1)", S::distributive, X::theorem, {{"unit", {{"algebra", "L^L/dot"}, {"side", "left"}}}});
  add("Cor 3.10(2)", S::distributive, X::theorem, {{"topbar_absorbs", {{"class", "M"}}}}, "f in M(L) with f(0) != 0");
  add("Cor 3.10(2)[monotone]", S::distributive, X::suspect, {{"topbar_absorbs", {{"class", "hom"}}}},
      "f monotone with f(0) != 0");
  add("Cor 3.10(3)", S::distributive, X::theorem,
      {{"dot_value", {{"g", "top_const"}, {"f", "top_S"}, {"expected", "top_S"}}}});
  add("Cor 3.10(4)", S::distributive, X::theorem,
      {{"dot_value", {{"g", "top_S"}, {"f", "top_const"}, {"expected", "top_const"}}}});
  add("Cor 3.10(5)", S::distributive, X::suspect, {{"fa_not_idempotent"}}, "checked for every a in L");
  add("Example 3.11", S::distributive, X::negative,
      {{"dot_value", {{"g", "top_const"}, {"f", "id"}, {"expected", "top_S"}}},
       {"unit", {{"algebra", "L^L/dot"}, {"side", "right"}}, true}});
  both("Prop 3.12", "psi_sup");
  both("Cor 3.13(1)", "psi_one_variable");
  both("Cor 3.13(2)", "psi_below");
  both("Cor 3.13(3)", "psi_fixes_sup");
  add("Cor 3.13(4)", S::distributive, X::suspect, {{"psi_galois"}});
  const json k_hom = {{"src", "L^L/dot"}, {"dst", "S/circ"}, {"h", "k"}};
  add("Prop 3.14", S::distributive, X::theorem, {{"homomorphism", k_hom}, {"hom_join", k_hom}, {"hom_hits", k_hom}});
  add("Cor 3.15(1)[inclusion]", S::distributive, X::theorem,
      {{"psi_fixes_sup"},
       {"op_agree", {{"algebra", "S/circ"}, {"super", "L^L/dot"}}},
       {"join_closed", alg("S/circ")}},
      "section is the inclusion of S(L)");
  add("Cor 3.15(1)[k*]", S::distributive, X::suspect,
      {{"kstar_counit"}, {"kstar_transport", {{"quotient", false}}}, {"kstar_join"}}, "section is k*");
  add("Cor 3.15(2)", S::distributive, X::theorem,
      {{"homomorphism", k_hom}, {"hom_join", k_hom}, {"psi_fixes_sup"}},
      "partially checked: h = k; for h = id the premise h(S(L)) = M fails on nontrivial L");
  add("Thm 3.16[unit]", S::distributive, X::theorem, {{"kstar_fiber"}, {"kstar_unit"}, {"adjunction"}});
  add("Thm 3.16[counit]", S::distributive, X::theorem, {{"kstar_counit"}});
  add("Thm 3.16[nucleus]", S::distributive, X::theorem, nucleus_parts("L^L/dot", "k*k"));
  add("Thm 3.16", S::distributive, X::theorem,
      {{"kstar_in_fix"},
       {"kstar_onto_fix"},
       {"kstar_order_embedding"},
       {"kstar_transport"},
       {"associativity", alg("L^L/dot/j=k*k")},
       {"sup_distributivity", alg("L^L/dot/j=k*k")}});
  add("Abstract(circ quantale)", S::any, X::negative, {{"sup_distributivity", alg("L^L/circ"), true}});
  add("Abstract(circ co-quantale)", S::any, X::negative, {{"inf_distributivity", alg("L^L/circ"), true}});

  add("Prop 4.2", S::any, X::theorem,
      {{"associativity", alg("M/circ")},
       {"inf_distributivity", alg("M/circ")},
       {"meet_closed", alg("M/circ")},
       {"op_closed", alg("M/circ")}});
  add("Rem 4.3(1)", S::any, X::theorem, {{"wedge_order", kind("co_wedge")}});
  add("Rem 4.3(2)", S::any, X::theorem, {{"wedge_lower_closure", kind("co_wedge")}});
  add("Rem 4.3(3)", S::any, X::theorem, {{"wedge_upper_closure", kind("co_wedge")}});
  add("Rem 4.3(4)", S::distributive, X::theorem, {{"wedge_join_prime", kind("co_wedge")}});
  add("Rem 4.3(5)", S::distributive, X::theorem, {{"wedge_approximation", kind("co_wedge")}});
  both("Prop 4.4", "bullet_monotone");
  both("Rem 4.5(1)", "bullet_one_variable");
  both("Rem 4.5(2)", "circ_below_bullet");
  both("Prop 4.6(1)", "bullet_meet_closure");
  both("Prop 4.6(2)", "bullet_collapse");
  both("Prop 4.6(3)", "dot_below_bullet");
  both("Prop 4.6(4)", "bullet_equals_dot");
  both("Prop 4.7", "bullet_associativity");
  add("Thm 4.8", S::distributive, X::theorem,
      {{"associativity", alg("L^L/bullet")}, {"inf_distributivity", alg("L^L/bullet")}});
  both("Prop 4.9", "phi_meet");
  both("Cor 4.10(1)", "phi_one_variable");
  both("Cor 4.10(2)", "phi_above");
  both("Cor 4.10(3)", "phi_fixes_meet");
  add("Prop 4.12", S::distributive, X::theorem,
      concat(nucleus_parts("L^L/bullet", "phi"),
             {{"associativity", alg("L^L/bullet/j=phi")},
              {"inf_distributivity", alg("L^L/bullet/j=phi")},
              {"meet_closed", alg("L^L/bullet/j=phi")}}),
      "j = phi");
  add("Prop 4.12[identity]", S::distributive, X::theorem,
      concat(nucleus_parts("L^L/bullet", "id"),
             {{"associativity", alg("L^L/bullet/j=id")}, {"inf_distributivity", alg("L^L/bullet/j=id")}}),
      "j = id");
  add("Thm 4.14", S::distributive, X::theorem,
      concat(nucleus_parts("L^L/bullet", "phi"),
             {{"fix_class", {{"nucleus", "phi"}, {"class", "M"}}},
              {"op_agree", {{"algebra", "M/circ"}, {"super", "L^L/bullet/j=phi"}}}}));
  return r;
}

inline std::string part_label(const std::string& claim, std::size_t i, const ClaimPart& p) {
  return claim + "#" + std::to_string(i) + "/" + p.law;
}

}  // namespace audit_detail

/// Every audited claim, in source order.
inline const std::vector<Claim>& claim_registry() {
  static const std::vector<Claim> r = audit_detail::build_registry();
  return r;
}

inline const Claim& find_claim(const std::string& id) {
  for (const auto& c : claim_registry())
    if (c.id == id) return c;
  throw Error(Errc::invalid_argument, "unknown claim '" + id + "'");
}

/// Runs the parts of one claim. The first failing part decides a fail; a
/// skipped part makes the claim skipped unless another part already failed.
inline ClaimReport run_claim(Env& env, const Claim& c, const SearchOptions& opt) {
  ClaimReport rep;
  rep.claim_id = c.id;
  rep.lattice = env.audited()->name();
  rep.expected = c.expected;
  rep.mode = opt.mode;
  rep.seed = opt.seed;
  rep.samples = opt.mode == SearchMode::sampled ? opt.samples : 0;
  rep.note = c.note;
  const Lattice& l = *env.audited();
  if (c.scope == Scope::distributive && !l.is_distributive()) {
    rep.verdict = Verdict::skipped;
    rep.reason = "NotDistributive";
    return rep;
  }
  if (c.nontrivial && l.size() < 2) {
    rep.verdict = Verdict::skipped;
    rep.reason = "trivial lattice";
    return rep;
  }
  std::optional<std::string> skip;
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    const ClaimPart& part = c.parts[i];
    LawOutcome o;
    try {
      Law law = make_law(env, part.law, part.params);
      o = run_law(env, law, opt, audit_detail::part_label(c.id, i, part));
    } catch (const Error& e) {
      if (e.code() != Errc::size_limit_exceeded && e.code() != Errc::not_distributive) throw;
      o.skipped = std::string(e.what());
    }
    rep.instances += o.instances;
    if (o.skipped) {
      if (!skip) skip = part.law + ": " + *o.skipped;
      continue;
    }
    const bool violated = o.counterexample.has_value();
    if (violated && part.expect_violation) {
      rep.counterexample = std::move(o.counterexample);
    } else if (violated) {
      rep.verdict = Verdict::fail;
      rep.reason = part.law + " violated";
      rep.counterexample = std::move(o.counterexample);
      return rep;
    } else if (part.expect_violation) {
      rep.verdict = Verdict::fail;
      rep.reason = part.law + ": no witness found";
      return rep;
    }
  }
  if (skip) {
    rep.verdict = Verdict::skipped;
    rep.reason = *skip;
    rep.counterexample.reset();
  }
  return rep;
}

/// Audits the selected claims (all when `ids` is empty), reported in
/// registry order.
inline std::vector<ClaimReport> audit(Env& env, const std::vector<std::string>& ids, const SearchOptions& opt) {
  for (const auto& id : ids) find_claim(id);
  std::vector<ClaimReport> out;
  for (const auto& c : claim_registry())
    if (ids.empty() || std::find(ids.begin(), ids.end(), c.id) != ids.end()) out.push_back(run_claim(env, c, opt));
  return out;
}

/// True when a theorem or negative claim failed.
inline bool theorem_failure(const std::vector<ClaimReport>& reports) {
  return std::any_of(reports.begin(), reports.end(), [](const ClaimReport& r) {
    return r.verdict == Verdict::fail && r.expected != Expectation::suspect;
  });
}

// ---- single checks ------------------------------------------------------------

inline ClaimReport check_parts(Env& env, std::string label, std::vector<ClaimPart> parts, const SearchOptions& opt) {
  Claim c{std::move(label), Scope::any, Expectation::theorem, std::move(parts), {}, false};
  return run_claim(env, c, opt);
}

inline ClaimReport check_associativity(Env& env, const std::string& algebra, const SearchOptions& opt) {
  return check_parts(env, "associativity " + algebra, {{"associativity", audit_detail::alg(algebra)}}, opt);
}

inline ClaimReport check_sup_distributivity(Env& env, const std::string& algebra, const SearchOptions& opt) {
  return check_parts(env, "sup_distributivity " + algebra, {{"sup_distributivity", audit_detail::alg(algebra)}}, opt);
}

inline ClaimReport check_inf_distributivity(Env& env, const std::string& algebra, const SearchOptions& opt) {
  return check_parts(env, "inf_distributivity " + algebra, {{"inf_distributivity", audit_detail::alg(algebra)}}, opt);
}

inline ClaimReport check_unit(Env& env, const std::string& algebra, const std::string& unit, const std::string& side,
                              const SearchOptions& opt) {
  return check_parts(env, "unit " + side + " " + algebra,
                     {{"unit", {{"algebra", algebra}, {"unit", unit}, {"side", side}}}}, opt);
}

inline ClaimReport check_subquantale(Env& env, const std::string& sub, const std::string& super,
                                     const SearchOptions& opt) {
  return check_parts(env, sub + " in " + super,
                     {{"join_closed", audit_detail::alg(sub)}, {"op_agree", {{"algebra", sub}, {"super", super}}}}, opt);
}

/// h is "k", "id" or "bot".
inline ClaimReport check_homomorphism(Env& env, const std::string& src, const std::string& dst, const std::string& h,
                                      const SearchOptions& opt) {
  const json p = {{"src", src}, {"dst", dst}, {"h", h}};
  return check_parts(env, h + ": " + src + " -> " + dst, {{"homomorphism", p}, {"hom_join", p}}, opt);
}

inline ClaimReport check_hom_k(Env& env, const SearchOptions& opt) {
  const json p = {{"src", "L^L/dot"}, {"dst", "S/circ"}, {"h", "k"}};
  return check_parts(env, "k: L^L/dot -> S/circ", {{"homomorphism", p}, {"hom_join", p}, {"hom_hits", p}}, opt);
}

/// The order isomorphism f -> k*(f) from S(L) onto the fixed points of k*k,
/// transporting composition to the quotient operation.
inline ClaimReport check_representation(Env& env, const SearchOptions& opt) {
  std::vector<ClaimPart> parts;
  for (const char* id : {"Thm 3.16[unit]", "Thm 3.16[counit]", "Thm 3.16[nucleus]", "Thm 3.16"})
    for (const auto& p : find_claim(id).parts) parts.push_back(p);
  return check_parts(env, "representation", std::move(parts), opt);
}

struct NucleusCheck;
NucleusCheck check_nucleus(Env&, const std::string&, const std::string&, const SearchOptions&);

/// A nucleus that passed check_nucleus on a specific algebra of a specific Env.
class VerifiedNucleus {
 public:
  const std::string& algebra() const noexcept { return algebra_; }
  const std::string& nucleus() const noexcept { return nucleus_; }

 private:
  VerifiedNucleus(std::string a, std::string n, LatticePtr l)
      : algebra_(std::move(a)), nucleus_(std::move(n)), lattice_(std::move(l)) {}
  std::string algebra_, nucleus_;
  LatticePtr lattice_;
  friend NucleusCheck check_nucleus(Env&, const std::string&, const std::string&, const SearchOptions&);
  friend AlgebraPtr quotient(Env&, const std::string&, const VerifiedNucleus&);
};

struct NucleusCheck {
  ClaimReport report;
  std::optional<VerifiedNucleus> nucleus;
};

inline NucleusCheck check_nucleus(Env& env, const std::string& algebra, const std::string& nucleus,
                                  const SearchOptions& opt) {
  NucleusCheck out{check_parts(env, nucleus + " on " + algebra, audit_detail::nucleus_parts(algebra, nucleus), opt), {}};
  if (out.report.verdict == Verdict::pass) out.nucleus = VerifiedNucleus(algebra, nucleus, env.audited());
  return out;
}

/// The quotient algebra: fixed points of j with x *_j y = j(x * y).
inline AlgebraPtr quotient(Env& env, const std::string& algebra, const VerifiedNucleus& j) {
  if (j.algebra_ != algebra || j.lattice_ != env.audited())
    throw Error(Errc::nucleus_not_verified, "nucleus '" + j.nucleus_ + "' was verified on " + j.algebra_ + " of " +
                                                j.lattice_->name() + ", not on " + algebra + " of " +
                                                env.audited()->name());
  return env.algebra(algebra + "/j=" + j.nucleus_);
}

}  // namespace qlab

#endif  // QLAB_AUDIT_HPP
