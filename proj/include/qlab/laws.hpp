#ifndef QLAB_LAWS_HPP
#define QLAB_LAWS_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qlab/algebra.hpp"

namespace qlab {

using json = nlohmann::json;

/// Outcome of one law instance. `lhs`/`rhs` are the evaluated sides when the
/// law is an (in)equation between values.
struct LawValues {
  bool holds = true;
  std::optional<Value> lhs, rhs;
  std::string relation;
  std::string note;
};

struct SlotSpec {
  std::string name;
  std::string domain;
};

/// A law instantiated against an Env: typed slots plus a pure evaluator that
/// may be called from several threads at once.
struct Law {
  std::string id;
  json params;
  std::vector<SlotSpec> slots;
  std::function<LawValues(std::span<const Value* const>)> eval;
};

struct Counterexample {
  std::string law;
  json params;
  std::vector<Witness> witnesses;
  std::optional<Value> lhs, rhs;
  std::string relation;
  std::string note;
};

namespace laws_detail {

inline const MonotoneMap& M(const Value* v) { return std::get<MonotoneMap>(*v); }
inline const MapFamily& F(const Value* v) { return std::get<MapFamily>(*v); }
inline Elem E(const Value* v) { return std::get<Elem>(*v); }
inline const ElemFamily& EF(const Value* v) { return std::get<ElemFamily>(*v); }

inline LawValues eq(MonotoneMap lhs, MonotoneMap rhs) {
  const bool ok = lhs == rhs;
  return {ok, Value(std::move(lhs)), Value(std::move(rhs)), "=", {}};
}
inline LawValues le(MonotoneMap lhs, MonotoneMap rhs) {
  const bool ok = lhs.leq(rhs);
  return {ok, Value(std::move(lhs)), Value(std::move(rhs)), "<=", {}};
}
inline LawValues member(MonotoneMap lhs, bool in, std::string cls) {
  return {in, Value(std::move(lhs)), std::nullopt, "in " + cls, {}};
}
inline LawValues truth(bool holds, std::string relation, std::string note = {}) {
  return {holds, std::nullopt, std::nullopt, std::move(relation), std::move(note)};
}
inline LawValues vacuous() { return {true, std::nullopt, std::nullopt, "vacuous", {}}; }

inline std::string str(const json& p, const char* key, const char* fallback = nullptr) {
  if (p.contains(key)) return p.at(key).get<std::string>();
  if (fallback) return fallback;
  throw Error(Errc::invalid_argument, std::string("law parameter '") + key + "' missing");
}

inline std::string cls(const std::string& c, const std::string& a, const std::string& b) {
  return c + "(" + a + "," + b + ")";
}

using Factory = std::function<Law(Env&, const json&)>;

/// Lattices A, B, C, D of a composition law, "L" by default.
struct Chain4 {
  std::string a, b, c, d;
  explicit Chain4(const json& p)
      : a(str(p, "A", "L")), b(str(p, "B", "L")), c(str(p, "C", "L")), d(str(p, "D", "L")) {}
};

inline MonotoneMap canonical_by_name(const LatticePtr& l, const std::string& name) {
  if (name == "id") return canonical(l, CanonicalKind::id);
  if (name == "bot_const") return canonical(l, CanonicalKind::bot_const);
  if (name == "top_const") return canonical(l, CanonicalKind::top_const);
  if (name == "top_S") return canonical(l, CanonicalKind::top_S);
  if (name == "bot_M") return canonical(l, CanonicalKind::bot_M);
  throw Error(Errc::invalid_argument, "unknown canonical map '" + name + "'");
}

inline std::function<MonotoneMap(const MonotoneMap&)> hom_by_name(Env& env, const std::string& h) {
  const ContextPtr ctx = env.context("L");
  if (h == "k") {
    const WedgeRelation& w = ctx->cd_wedge();
    return [ctx, &w](const MonotoneMap& f) { return psi(f, w); };
  }
  if (h == "id") return [](const MonotoneMap& f) { return f; };
  if (h == "bot") {
    const LatticePtr l = ctx->lattice;
    return [l](const MonotoneMap&) { return canonical(l, CanonicalKind::bot_const); };
  }
  throw Error(Errc::invalid_argument, "unknown homomorphism '" + h + "'");
}

inline std::map<std::string, Factory> build_factories() {
  std::map<std::string, Factory> t;

  // ---- algebra laws ----
  t["associativity"] = [](Env& env, const json& p) {
    auto a = env.algebra(str(p, "algebra"));
    return Law{"associativity", p, {{"x", a->carrier}, {"y", a->carrier}, {"z", a->carrier}},
               [a](std::span<const Value* const> v) {
                 return eq(a->mul(a->mul(M(v[0]), M(v[1])), M(v[2])), a->mul(M(v[0]), a->mul(M(v[1]), M(v[2]))));
               }};
  };
  auto distributivity = [](bool sup) {
    return [sup](Env& env, const json& p) {
      auto a = env.algebra(str(p, "algebra"));
      const std::string id = sup ? "sup_distributivity" : "inf_distributivity";
      return Law{id, p, {{"x", a->carrier}, {"F", "fam:" + a->carrier}},
                 [a, sup](std::span<const Value* const> v) {
                   const auto& x = M(v[0]);
                   const auto& fam = F(v[1]);
                   const auto& fold = sup ? a->join : a->meet;
                   MapFamily left, right;
                   for (const auto& f : fam) {
                     left.push_back(a->mul(x, f));
                     right.push_back(a->mul(f, x));
                   }
                   auto r = eq(a->mul(x, fold(fam)), fold(left));
                   r.note = "left";
                   if (!r.holds) return r;
                   r = eq(a->mul(fold(fam), x), fold(right));
                   r.note = "right";
                   return r;
                 }};
    };
  };
  t["sup_distributivity"] = distributivity(true);
  t["inf_distributivity"] = distributivity(false);
  auto closed = [](bool use_join) {
    return [use_join](Env& env, const json& p) {
      auto a = env.algebra(str(p, "algebra"));
      const LatticePtr l = env.lattice("L");
      return Law{use_join ? "join_closed" : "meet_closed", p, {{"F", "fam:" + a->carrier}},
                 [a, l, use_join](std::span<const Value* const> v) {
                   auto r = use_join ? pointwise_join(l, l, F(v[0])) : pointwise_meet(l, l, F(v[0]));
                   const bool in = a->contains(r);
                   return member(std::move(r), in, a->carrier);
                 }};
    };
  };
  t["join_closed"] = closed(true);
  t["meet_closed"] = closed(false);
  t["op_closed"] = [](Env& env, const json& p) {
    auto a = env.algebra(str(p, "algebra"));
    return Law{"op_closed", p, {{"x", a->carrier}, {"y", a->carrier}}, [a](std::span<const Value* const> v) {
                 auto r = a->mul(M(v[0]), M(v[1]));
                 const bool in = a->contains(r);
                 return member(std::move(r), in, a->carrier);
               }};
  };
  t["unit"] = [](Env& env, const json& p) {
    auto a = env.algebra(str(p, "algebra"));
    const bool left = str(p, "side") == "left";
    const MonotoneMap u = canonical_by_name(env.lattice("L"), str(p, "unit", "id"));
    return Law{"unit", p, {{"f", a->carrier}}, [a, u, left](std::span<const Value* const> v) {
                 const auto& f = M(v[0]);
                 return eq(left ? a->mul(u, f) : a->mul(f, u), f);
               }};
  };
  t["op_agree"] = [](Env& env, const json& p) {
    auto sub = env.algebra(str(p, "algebra"));
    auto sup = env.algebra(str(p, "super"));
    return Law{"op_agree", p, {{"x", sub->carrier}, {"y", sub->carrier}}, [sub, sup](std::span<const Value* const> v) {
                 return eq(sub->mul(M(v[0]), M(v[1])), sup->mul(M(v[0]), M(v[1])));
               }};
  };
  t["homomorphism"] = [](Env& env, const json& p) {
    auto src = env.algebra(str(p, "src"));
    auto dst = env.algebra(str(p, "dst"));
    auto h = hom_by_name(env, str(p, "h"));
    return Law{"homomorphism", p, {{"x", src->carrier}, {"y", src->carrier}},
               [src, dst, h](std::span<const Value* const> v) {
                 return eq(h(src->mul(M(v[0]), M(v[1]))), dst->mul(h(M(v[0])), h(M(v[1]))));
               }};
  };
  t["hom_join"] = [](Env& env, const json& p) {
    auto src = env.algebra(str(p, "src"));
    auto dst = env.algebra(str(p, "dst"));
    auto h = hom_by_name(env, str(p, "h"));
    return Law{"hom_join", p, {{"F", "fam:" + src->carrier}}, [src, dst, h](std::span<const Value* const> v) {
                 MapFamily images;
                 for (const auto& f : F(v[0])) images.push_back(h(f));
                 return eq(h(src->join(F(v[0]))), dst->join(images));
               }};
  };
  t["hom_hits"] = [](Env& env, const json& p) {
    auto src = env.algebra(str(p, "src"));
    auto dst = env.algebra(str(p, "dst"));
    auto h = hom_by_name(env, str(p, "h"));
    std::shared_ptr<std::set<std::vector<Elem>>> image;
    try {
      const auto& all = env.maps(src->carrier);
      image = std::make_shared<std::set<std::vector<Elem>>>();
      for (const auto& f : all) image->insert(h(f).image());
    } catch (const Error& e) {
      if (e.code() != Errc::size_limit_exceeded) throw;
    }
    return Law{"hom_hits", p, {{"s", dst->carrier}}, [src, h, image](std::span<const Value* const> v) {
                 const auto& s = M(v[0]);
                 if (image) return truth(image->count(s.image()) > 0, "s in image of h", "image enumerated");
                 return truth(src->contains(s) && h(s) == s, "s in image of h", "preimage s itself");
               }};
  };

  // ---- nucleus axioms ----
  auto nucleus_law = [](const char* which) {
    return [which](Env& env, const json& p) {
      auto a = env.algebra(str(p, "algebra"));
      const Nucleus j = env.nucleus(str(p, "nucleus"));
      const std::string w = which;
      Law law{"nucleus_" + w, p, {{"f", a->carrier}}, {}};
      if (w == "inflation") {
        law.eval = [j](std::span<const Value* const> v) { return le(M(v[0]), j(M(v[0]))); };
      } else if (w == "idempotent") {
        law.eval = [j](std::span<const Value* const> v) {
          auto once = j(M(v[0]));
          return eq(j(once), once);
        };
      } else if (w == "monotone") {
        law.slots.push_back({"g", a->carrier});
        law.eval = [j](std::span<const Value* const> v) {
          if (!M(v[0]).leq(M(v[1]))) return vacuous();
          return le(j(M(v[0])), j(M(v[1])));
        };
      } else {
        law.slots = {{"x", a->carrier}, {"y", a->carrier}};
        law.eval = [j, a](std::span<const Value* const> v) {
          return le(a->mul(j(M(v[0])), j(M(v[1]))), j(a->mul(M(v[0]), M(v[1]))));
        };
      }
      return law;
    };
  };
  for (const char* w : {"inflation", "monotone", "idempotent", "mult"}) t[std::string("nucleus_") + w] = nucleus_law(w);
  t["fix_class"] = [](Env& env, const json& p) {
    const Nucleus j = env.nucleus(str(p, "nucleus"));
    const std::string c = str(p, "class");
    std::function<bool(const MonotoneMap&)> test;
    if (c == "M") test = [](const MonotoneMap& f) { return is_meet_preserving(f); };
    else if (c == "S") test = [](const MonotoneMap& f) { return is_sup_preserving(f); };
    else throw Error(Errc::invalid_argument, "fix_class needs class S or M");
    return Law{"fix_class", p, {{"f", "hom(L,L)"}}, [j, test, c](std::span<const Value* const> v) {
                 const auto& f = M(v[0]);
                 const bool fixed = j(f) == f, in = test(f);
                 return LawValues{fixed == in, Value(j(f)), Value(f), "j(f) = f iff f in " + c,
                                  fixed ? "fixed, not in class" : "in class, not fixed"};
               }};
  };

  // ---- composition laws, possibly across lattices A -> B -> C -> D ----
  auto two_maps = [](const char* id, const char* fcls, const char* gcls, auto body) {
    return [id, fcls, gcls, body](Env& env, const json& p) {
      const Chain4 c(p);
      const ContextPtr cb = env.context(c.b), cc = env.context(c.c);
      auto fn = body(cb, cc);
      return Law{id, p, {{"g", cls(gcls, c.b, c.c)}, {"f", cls(fcls, c.a, c.b)}},
                 [fn](std::span<const Value* const> v) { return fn(M(v[0]), M(v[1])); }};
    };
  };
  using Ctx = const ContextPtr&;
  t["dot_below_circ"] = two_maps("dot_below_circ", "hom", "hom", [](Ctx b, Ctx) {
    return [b](const MonotoneMap& g, const MonotoneMap& f) { return le(compose_dot(g, f, b->cd_wedge()), compose_usual(g, f)); };
  });
  t["circ_below_bullet"] = two_maps("circ_below_bullet", "hom", "hom", [](Ctx b, Ctx) {
    return [b](const MonotoneMap& g, const MonotoneMap& f) {
      return le(compose_usual(g, f), compose_bullet(g, f, b->cd_co_wedge()));
    };
  });
  t["dot_below_bullet"] = two_maps("dot_below_bullet", "hom", "hom", [](Ctx b, Ctx) {
    return [b](const MonotoneMap& g, const MonotoneMap& f) {
      return le(compose_dot(g, f, b->cd_wedge()), compose_bullet(g, f, b->cd_co_wedge()));
    };
  });
  t["dot_monotone"] = two_maps("dot_monotone", "hom", "hom", [](Ctx b, Ctx) {
    return [b](const MonotoneMap& g, const MonotoneMap& f) {
      auto r = compose_dot(g, f, b->cd_wedge());
      const bool ok = !MonotoneMap::first_order_violation(*r.dom(), *r.cod(), r.image());
      return member(std::move(r), ok, "monotone maps");
    };
  });
  t["bullet_monotone"] = two_maps("bullet_monotone", "hom", "hom", [](Ctx b, Ctx) {
    return [b](const MonotoneMap& g, const MonotoneMap& f) {
      auto r = compose_bullet(g, f, b->cd_co_wedge());
      const bool ok = !MonotoneMap::first_order_violation(*r.dom(), *r.cod(), r.image());
      return member(std::move(r), ok, "monotone maps");
    };
  });
  t["dot_one_variable"] = two_maps("dot_one_variable", "hom", "hom", [](Ctx b, Ctx c) {
    return [b, c](const MonotoneMap& g, const MonotoneMap& f) {
      return eq(compose_dot(g, f, b->cd_wedge()), compose_dot_two_variable(g, f, b->cd_wedge(), c->cd_wedge()));
    };
  });
  t["bullet_one_variable"] = two_maps("bullet_one_variable", "hom", "hom", [](Ctx b, Ctx c) {
    return [b, c](const MonotoneMap& g, const MonotoneMap& f) {
      return eq(compose_bullet(g, f, b->cd_co_wedge()),
                compose_bullet_two_variable(g, f, b->cd_co_wedge(), c->cd_co_wedge()));
    };
  });
  t["dot_sup_closure"] = two_maps("dot_sup_closure", "S", "hom", [](Ctx b, Ctx) {
    return [b](const MonotoneMap& g, const MonotoneMap& f) {
      auto r = compose_dot(g, f, b->cd_wedge());
      const bool ok = is_sup_preserving(r);
      return member(std::move(r), ok, "sup-preserving maps");
    };
  });
  t["bullet_meet_closure"] = two_maps("bullet_meet_closure", "M", "hom", [](Ctx b, Ctx) {
    return [b](const MonotoneMap& g, const MonotoneMap& f) {
      auto r = compose_bullet(g, f, b->cd_co_wedge());
      const bool ok = is_meet_preserving(r);
      return member(std::move(r), ok, "meet-preserving maps");
    };
  });
  t["dot_collapse"] = two_maps("dot_collapse", "S", "S", [](Ctx b, Ctx) {
    return [b](const MonotoneMap& g, const MonotoneMap& f) { return eq(compose_dot(g, f, b->cd_wedge()), compose_usual(g, f)); };
  });
  t["bullet_collapse"] = two_maps("bullet_collapse", "M", "M", [](Ctx b, Ctx) {
    return [b](const MonotoneMap& g, const MonotoneMap& f) {
      return eq(compose_bullet(g, f, b->cd_co_wedge()), compose_usual(g, f));
    };
  });
  t["bullet_equals_dot"] = two_maps("bullet_equals_dot", "SM", "SM", [](Ctx b, Ctx) {
    return [b](const MonotoneMap& g, const MonotoneMap& f) {
      return eq(compose_bullet(g, f, b->cd_co_wedge()), compose_dot(g, f, b->cd_wedge()));
    };
  });
  auto three_maps = [](const char* id, bool dot) {
    return [id, dot](Env& env, const json& p) {
      const Chain4 c(p);
      const ContextPtr cb = env.context(c.b), cc = env.context(c.c);
      const WedgeRelation& wb = dot ? cb->cd_wedge() : cb->cd_co_wedge();
      const WedgeRelation& wc = dot ? cc->cd_wedge() : cc->cd_co_wedge();
      return Law{id,
                 p,
                 {{"h", cls("hom", c.c, c.d)}, {"g", cls("hom", c.b, c.c)}, {"f", cls("hom", c.a, c.b)}},
                 [cb, cc, &wb, &wc, dot](std::span<const Value* const> v) {
                   const auto &h = M(v[0]), &g = M(v[1]), &f = M(v[2]);
                   auto op = [dot](const MonotoneMap& x, const MonotoneMap& y, const WedgeRelation& w) {
                     return dot ? compose_dot(x, y, w) : compose_bullet(x, y, w);
                   };
                   return eq(op(op(h, g, wc), f, wb), op(h, op(g, f, wb), wc));
                 }};
    };
  };
  t["dot_associativity"] = three_maps("dot_associativity", true);
  t["bullet_associativity"] = three_maps("bullet_associativity", false);

  // ---- projections ψ and φ between A and B ----
  auto one_map = [](const char* id, const char* fcls, auto body) {
    return [id, fcls, body](Env& env, const json& p) {
      const Chain4 c(p);
      auto fn = body(env.context(c.a), env.context(c.b));
      return Law{id, p, {{"f", cls(fcls, c.a, c.b)}},
                 [fn](std::span<const Value* const> v) { return fn(M(v[0])); }};
    };
  };
  t["psi_sup"] = one_map("psi_sup", "hom", [](Ctx a, Ctx) {
    return [a](const MonotoneMap& f) {
      auto r = psi(f, a->cd_wedge());
      const bool ok = is_sup_preserving(r);
      return member(std::move(r), ok, "sup-preserving maps");
    };
  });
  t["phi_meet"] = one_map("phi_meet", "hom", [](Ctx a, Ctx) {
    return [a](const MonotoneMap& f) {
      auto r = phi(f, a->cd_co_wedge());
      const bool ok = is_meet_preserving(r);
      return member(std::move(r), ok, "meet-preserving maps");
    };
  });
  t["psi_one_variable"] = one_map("psi_one_variable", "hom", [](Ctx a, Ctx b) {
    return [a, b](const MonotoneMap& f) { return eq(psi(f, a->cd_wedge()), psi_two_variable(f, a->cd_wedge(), b->cd_wedge())); };
  });
  t["phi_one_variable"] = one_map("phi_one_variable", "hom", [](Ctx a, Ctx b) {
    return [a, b](const MonotoneMap& f) {
      return eq(phi(f, a->cd_co_wedge()), phi_two_variable(f, a->cd_co_wedge(), b->cd_co_wedge()));
    };
  });
  t["psi_below"] = one_map("psi_below", "hom", [](Ctx a, Ctx) {
    return [a](const MonotoneMap& f) { return le(psi(f, a->cd_wedge()), f); };
  });
  t["phi_above"] = one_map("phi_above", "hom", [](Ctx a, Ctx) {
    return [a](const MonotoneMap& f) { return le(f, phi(f, a->cd_co_wedge())); };
  });
  t["psi_fixes_sup"] = one_map("psi_fixes_sup", "S", [](Ctx a, Ctx) {
    return [a](const MonotoneMap& f) { return eq(psi(f, a->cd_wedge()), f); };
  });
  t["phi_fixes_meet"] = one_map("phi_fixes_meet", "M", [](Ctx a, Ctx) {
    return [a](const MonotoneMap& f) { return eq(phi(f, a->cd_co_wedge()), f); };
  });
  t["psi_galois"] = [](Env& env, const json& p) {
    const Chain4 c(p);
    const ContextPtr a = env.context(c.a);
    const std::string k = cls("hom", c.a, c.b);
    return Law{"psi_galois", p, {{"f", k}, {"g", k}}, [a](std::span<const Value* const> v) {
                 const auto &f = M(v[0]), &g = M(v[1]);
                 auto pf = psi(f, a->cd_wedge());
                 const bool left = pf.leq(g), right = f.leq(g);
                 return LawValues{left == right, Value(std::move(pf)), Value(g), "psi(f) <= g iff f <= g",
                                  left ? "psi(f) <= g holds, f <= g fails" : "f <= g holds, psi(f) <= g fails"};
               }};
  };

  // ---- distinguished maps on L ----
  t["bounds"] = [](Env& env, const json& p) {
    const LatticePtr l = env.lattice("L");
    const std::string c = str(p, "class");
    const MonotoneMap lo = canonical_by_name(l, str(p, "lower")), hi = canonical_by_name(l, str(p, "upper"));
    auto test = [c](const MonotoneMap& f) {
      return c == "hom" || (c == "S" && is_sup_preserving(f)) || (c == "M" && is_meet_preserving(f));
    };
    return Law{"bounds", p, {{"f", cls(c, "L", "L")}}, [lo, hi, test, c](std::span<const Value* const> v) {
                 const auto& f = M(v[0]);
                 if (!test(lo)) return member(lo, false, c + "(L,L)");
                 if (!test(hi)) return member(hi, false, c + "(L,L)");
                 if (!lo.leq(f)) return le(lo, f);
                 return le(f, hi);
               }};
  };
  t["topbar_absorbs"] = [](Env& env, const json& p) {
    const ContextPtr ctx = env.context("L");
    const WedgeRelation& w = ctx->cd_wedge();
    const MonotoneMap top = canonical(ctx->lattice, CanonicalKind::top_const);
    return Law{"topbar_absorbs", p, {{"f", cls(str(p, "class"), "L", "L")}}, [ctx, &w, top](std::span<const Value* const> v) {
                 const auto& f = M(v[0]);
                 if (f(ctx->lattice->bottom()) == ctx->lattice->bottom()) return vacuous();
                 return eq(compose_dot(top, f, w), top);
               }};
  };
  t["dot_value"] = [](Env& env, const json& p) {
    const ContextPtr ctx = env.context("L");
    const WedgeRelation& w = ctx->cd_wedge();
    const MonotoneMap g = canonical_by_name(ctx->lattice, str(p, "g")), f = canonical_by_name(ctx->lattice, str(p, "f")),
                      want = canonical_by_name(ctx->lattice, str(p, "expected"));
    return Law{"dot_value", p, {}, [ctx, &w, g, f, want](std::span<const Value* const>) {
                 return eq(compose_dot(g, f, w), want);
               }};
  };
  t["fa_not_idempotent"] = [](Env& env, const json& p) {
    const ContextPtr ctx = env.context("L");
    const WedgeRelation& w = ctx->cd_wedge();
    return Law{"fa_not_idempotent", p, {{"a", "elem(L)"}}, [ctx, &w](std::span<const Value* const> v) {
                 auto fa = canonical(ctx->lattice, CanonicalKind::f_a, E(v[0]));
                 auto sq = compose_dot(fa, fa, w);
                 const bool differ = !(sq == fa);
                 return LawValues{differ, Value(std::move(sq)), Value(std::move(fa)), "!=", {}};
               }};
  };

  // ---- the relations ◁ and ◁co as element laws ----
  auto wedge_law = [](const char* which) {
    return [which](Env& env, const json& p) {
      const bool co = str(p, "kind") == "co_wedge";
      const ContextPtr ctx = env.context("L");
      if (!(co ? ctx->co_wedge : ctx->wedge))
        throw Error(Errc::size_limit_exceeded, "relation not computed for " + ctx->lattice->name());
      const WedgeRelation& w = co ? *ctx->co_wedge : *ctx->wedge;
      const LatticePtr l = co ? env.dual_of("L") : ctx->lattice;
      const std::string x = which;
      Law law{"wedge_" + x, p, {}, {}};
      if (x == "extremal") {
        law.slots = {{"y", "elem(L)"}};
        law.eval = [ctx, &w, l](std::span<const Value* const> v) {
          const Elem b = l->bottom(), y = E(v[0]);
          return y == b ? truth(!w(b, b), "not (bottom rel bottom)") : truth(w(b, y), "bottom rel y");
        };
      } else if (x == "lower_closure") {
        law.slots = {{"x1", "elem(L)"}, {"x2", "elem(L)"}, {"y", "elem(L)"}};
        law.eval = [ctx, &w, l](std::span<const Value* const> v) {
          if (!(w(E(v[0]), E(v[2])) && l->leq(E(v[1]), E(v[0])))) return vacuous();
          return truth(w(E(v[1]), E(v[2])), "x2 rel y");
        };
      } else if (x == "upper_closure") {
        law.slots = {{"x", "elem(L)"}, {"y1", "elem(L)"}, {"y2", "elem(L)"}};
        law.eval = [ctx, &w, l](std::span<const Value* const> v) {
          if (!(w(E(v[0]), E(v[1])) && l->leq(E(v[1]), E(v[2])))) return vacuous();
          return truth(w(E(v[0]), E(v[2])), "x rel y2");
        };
      } else if (x == "order") {
        law.slots = {{"x", "elem(L)"}, {"y", "elem(L)"}};
        law.eval = [ctx, &w, l](std::span<const Value* const> v) {
          if (!w(E(v[0]), E(v[1]))) return vacuous();
          return truth(l->leq(E(v[0]), E(v[1])), "x <= y");
        };
      } else if (x == "join_prime") {
        law.slots = {{"x", "elem(L)"}, {"Y", "efam(L)"}};
        law.eval = [ctx, &w, l](std::span<const Value* const> v) {
          const Elem e = E(v[0]);
          const auto& ys = EF(v[1]);
          bool some = false;
          for (Elem y : ys) some = some || w(e, y);
          return truth(w(e, l->join_all(ys)) == some, "x rel join(Y) iff x rel some y in Y");
        };
      } else {
        law.slots = {{"x", "elem(L)"}};
        law.eval = [ctx, &w, l](std::span<const Value* const> v) {
          const Elem e = E(v[0]), j = l->join_all(w.below_list(e));
          return LawValues{j == e, Value(j), Value(e), "join{y : y rel x} = x", {}};
        };
      }
      return law;
    };
  };
  for (const char* w : {"extremal", "lower_closure", "upper_closure", "order", "join_prime", "approximation"})
    t[std::string("wedge_") + w] = wedge_law(w);

  // ---- k, k*, j = k*k ----
  auto kctx = [](Env& env) {
    const ContextPtr ctx = env.context("L");
    ctx->cd_wedge();
    return ctx;
  };
  t["kstar_fiber"] = [kctx](Env& env, const json& p) {
    const ContextPtr ctx = kctx(env);
    const auto& all = env.maps("hom(L,L)");
    auto psis = std::make_shared<std::vector<MonotoneMap>>();
    for (const auto& g : all) psis->push_back(psi(g, ctx->cd_wedge()));
    const std::vector<MonotoneMap>* allp = &all;
    return Law{"kstar_fiber", p, {{"f", "S(L,L)"}}, [ctx, allp, psis](std::span<const Value* const> v) {
                 const auto& f = M(v[0]);
                 return eq(kstar(f, ctx->cd_wedge()), kstar_fiber(f, *allp, *psis));
               }};
  };
  t["kstar_unit"] = [kctx](Env& env, const json& p) {
    const ContextPtr ctx = kctx(env);
    return Law{"kstar_unit", p, {{"f", "hom(L,L)"}}, [ctx](std::span<const Value* const> v) {
                 const auto& w = ctx->cd_wedge();
                 return le(M(v[0]), kstar(psi(M(v[0]), w), w));
               }};
  };
  t["kstar_counit"] = [kctx](Env& env, const json& p) {
    const ContextPtr ctx = kctx(env);
    return Law{"kstar_counit", p, {{"f", "S(L,L)"}}, [ctx](std::span<const Value* const> v) {
                 const auto& w = ctx->cd_wedge();
                 return eq(psi(kstar(M(v[0]), w), w), M(v[0]));
               }};
  };
  t["adjunction"] = [kctx](Env& env, const json& p) {
    const ContextPtr ctx = kctx(env);
    return Law{"adjunction", p, {{"f", "hom(L,L)"}, {"g", "S(L,L)"}}, [ctx](std::span<const Value* const> v) {
                 const auto& w = ctx->cd_wedge();
                 const auto &f = M(v[0]), &g = M(v[1]);
                 auto kf = psi(f, w);
                 auto ksg = kstar(g, w);
                 const bool left = kf.leq(g), right = f.leq(ksg);
                 return LawValues{left == right, Value(std::move(kf)), Value(std::move(ksg)), "k(f) <= g iff f <= k*(g)",
                                  left ? "k(f) <= g only" : "f <= k*(g) only"};
               }};
  };
  t["kstar_in_fix"] = [kctx](Env& env, const json& p) {
    const ContextPtr ctx = kctx(env);
    const Nucleus j = nucleus_j(ctx);
    return Law{"kstar_in_fix", p, {{"f", "S(L,L)"}}, [ctx, j](std::span<const Value* const> v) {
                 auto ks = kstar(M(v[0]), ctx->cd_wedge());
                 return eq(j(ks), ks);
               }};
  };
  t["kstar_onto_fix"] = [kctx](Env& env, const json& p) {
    const ContextPtr ctx = kctx(env);
    return Law{"kstar_onto_fix", p, {{"h", "fix[k*k](L)"}}, [ctx](std::span<const Value* const> v) {
                 const auto& w = ctx->cd_wedge();
                 auto s = psi(M(v[0]), w);
                 if (!is_sup_preserving(s)) return member(std::move(s), false, "S(L,L)");
                 return eq(kstar(s, w), M(v[0]));
               }};
  };
  t["kstar_order_embedding"] = [kctx](Env& env, const json& p) {
    const ContextPtr ctx = kctx(env);
    return Law{"kstar_order_embedding", p, {{"f", "S(L,L)"}, {"g", "S(L,L)"}}, [ctx](std::span<const Value* const> v) {
                 const auto& w = ctx->cd_wedge();
                 const auto &f = M(v[0]), &g = M(v[1]);
                 auto kf = kstar(f, w), kg = kstar(g, w);
                 const bool left = f.leq(g), right = kf.leq(kg);
                 return LawValues{left == right, Value(std::move(kf)), Value(std::move(kg)), "f <= g iff k*(f) <= k*(g)", {}};
               }};
  };
  t["kstar_transport"] = [kctx](Env& env, const json& p) {
    const ContextPtr ctx = kctx(env);
    const Nucleus j = nucleus_j(ctx);
    const bool quotient = p.value("quotient", true);
    return Law{"kstar_transport", p, {{"g", "S(L,L)"}, {"f", "S(L,L)"}}, [ctx, j, quotient](std::span<const Value* const> v) {
                 const auto& w = ctx->cd_wedge();
                 const auto &g = M(v[0]), &f = M(v[1]);
                 auto prod = compose_dot(kstar(g, w), kstar(f, w), w);
                 return eq(kstar(compose_usual(g, f), w), quotient ? j(prod) : prod);
               }};
  };
  t["kstar_join"] = [kctx](Env& env, const json& p) {
    const ContextPtr ctx = kctx(env);
    const LatticePtr l = ctx->lattice;
    return Law{"kstar_join", p, {{"F", "fam:S(L,L)"}}, [ctx, l](std::span<const Value* const> v) {
                 const auto& w = ctx->cd_wedge();
                 MapFamily images;
                 for (const auto& f : F(v[0])) images.push_back(kstar(f, w));
                 return eq(kstar(pointwise_join(l, l, F(v[0])), w), pointwise_join(l, l, images));
               }};
  };
  return t;
}

inline const std::map<std::string, Factory>& factories() {
  static const std::map<std::string, Factory> table = build_factories();
  return table;
}

}  // namespace laws_detail

/// Instantiates law `id` against `env`. Throws NotDistributive when the law
/// needs ◁ on a lattice without it, SizeLimitExceeded when a needed
/// enumeration is too large.
inline Law make_law(Env& env, const std::string& id, const json& params = json::object()) {
  const auto& t = laws_detail::factories();
  auto it = t.find(id);
  if (it == t.end()) throw Error(Errc::invalid_argument, "unknown law '" + id + "'");
  return it->second(env, params);
}

inline std::vector<std::string> law_ids() {
  std::vector<std::string> out;
  for (const auto& [id, f] : laws_detail::factories()) out.push_back(id);
  return out;
}

struct LawOutcome {
  std::uint64_t instances = 0;
  std::optional<Counterexample> counterexample;
  std::optional<std::string> skipped;
};

/// Scans a law for its first violation. Exhaustive mode walks the product of
/// the slot domains in lexicographic order (least witness first); sampled
/// mode draws opt.samples tuples from Rng(derive_seed(opt.seed, label)).
inline LawOutcome run_law(Env& env, const Law& law, const SearchOptions& opt, std::string_view label) {
  LawOutcome out;
  const std::size_t k = law.slots.size();
  auto finish = [&](std::uint64_t count, auto&& tuple_at) {
    auto violates = [&](std::uint64_t i) {
      std::vector<const Value*> ptrs = tuple_at(i);
      return !law.eval(ptrs).holds;
    };
    auto hit = find_first(count, opt.workers, violates);
    out.instances = hit ? *hit + 1 : count;
    if (hit) {
      std::vector<const Value*> ptrs = tuple_at(*hit);
      LawValues r = law.eval(ptrs);
      Counterexample cx{law.id, law.params, {}, r.lhs, r.rhs, r.relation, r.note};
      for (std::size_t s = 0; s < k; ++s) cx.witnesses.push_back({law.slots[s].name, *ptrs[s]});
      out.counterexample = std::move(cx);
    }
  };
  try {
    if (k == 0) {
      finish(1, [](std::uint64_t) { return std::vector<const Value*>{}; });
    } else if (opt.mode == SearchMode::exhaustive) {
      std::vector<const std::vector<Value>*> doms;
      std::vector<std::size_t> radix;
      for (const auto& s : law.slots) {
        doms.push_back(&env.values(s.domain));
        radix.push_back(doms.back()->size());
      }
      auto total = tuple_count(radix, opt.limits.max_tuples);
      if (!total) {
        out.skipped = "SizeLimitExceeded: more than " + std::to_string(opt.limits.max_tuples) + " tuples";
        return out;
      }
      finish(*total, [&](std::uint64_t i) {
        auto digits = decode_index(i, radix);
        std::vector<const Value*> ptrs(k);
        for (std::size_t s = 0; s < k; ++s) ptrs[s] = &(*doms[s])[digits[s]];
        return ptrs;
      });
    } else {
      std::vector<Env::Sampler> draw;
      for (const auto& s : law.slots) draw.push_back(env.sampler(s.domain));
      Rng rng(derive_seed(opt.seed, label));
      std::vector<Value> tuples;
      tuples.reserve(opt.samples * k);
      std::uint64_t n = 0;
      for (; n < opt.samples; ++n) {
        bool empty = false;
        for (std::size_t s = 0; s < k && !empty; ++s) {
          auto v = draw[s](rng);
          if (!v) empty = true;
          else tuples.push_back(std::move(*v));
        }
        if (empty) {
          tuples.resize(n * k);
          break;
        }
      }
      finish(n, [&](std::uint64_t i) {
        std::vector<const Value*> ptrs(k);
        for (std::size_t s = 0; s < k; ++s) ptrs[s] = &tuples[i * k + s];
        return ptrs;
      });
    }
  } catch (const Error& e) {
    if (e.code() != Errc::size_limit_exceeded && e.code() != Errc::not_distributive) throw;
    out.instances = 0;
    out.counterexample.reset();
    out.skipped = std::string(e.what());
  }
  return out;
}

/// Re-evaluates a counterexample: true iff the law still fails on the
/// witnesses with the same evaluated sides.
inline bool replay(Env& env, const Counterexample& cx) {
  Law law = make_law(env, cx.law, cx.params);
  if (law.slots.size() != cx.witnesses.size()) return false;
  std::vector<const Value*> ptrs;
  for (std::size_t s = 0; s < law.slots.size(); ++s) {
    if (cx.witnesses[s].name != law.slots[s].name) return false;
    ptrs.push_back(&cx.witnesses[s].value);
  }
  LawValues r = law.eval(ptrs);
  return !r.holds && r.lhs == cx.lhs && r.rhs == cx.rhs;
}

}  // namespace qlab

#endif  // QLAB_LAWS_HPP
