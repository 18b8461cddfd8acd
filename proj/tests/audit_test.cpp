#include <gtest/gtest.h>

#include <set>

#include "qlab/audit.hpp"
#include "qlab/generators.hpp"

using namespace qlab;

namespace {

using Image = std::vector<Elem>;

SearchOptions exhaustive(unsigned workers = 1) {
  SearchOptions o;
  o.workers = workers;
  return o;
}

std::vector<Image> brute_monotone(const Lattice& l) {
  const std::size_t n = l.size();
  std::vector<Image> out;
  Image img(n, 0);
  while (true) {
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x)
      for (Elem y = 0; y < n && ok; ++y)
        if (l.leq(x, y) && !l.leq(img[x], img[y])) ok = false;
    if (ok) out.push_back(img);
    std::size_t i = 0;
    while (i < n && ++img[i] == n) img[i++] = 0;
    if (i == n) break;
  }
  return out;
}

bool pointwise_leq(const Lattice& l, const Image& f, const Image& g) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!l.leq(f[i], g[i])) return false;
  return true;
}

Image oracle_psi(const Lattice& l, const WedgeRelation& w, const Image& f) {
  Image out(l.size(), l.bottom());
  for (Elem a = 0; a < l.size(); ++a)
    for (Elem s = 0; s < l.size(); ++s)
      if (w(s, a)) out[a] = l.join(out[a], f[s]);
  return out;
}

// g·f(a) = ⋁{g(b) : b ◁ f(a)}
Image oracle_dot(const Lattice& l, const WedgeRelation& w, const Image& g, const Image& f) {
  Image out(l.size(), l.bottom());
  for (Elem a = 0; a < l.size(); ++a)
    for (Elem b = 0; b < l.size(); ++b)
      if (w(b, f[a])) out[a] = l.join(out[a], g[b]);
  return out;
}

// Does some pair violate "psi(f) <= g iff f <= g"?
bool galois_fails(const LatticePtr& l) {
  auto w = wedge_below_oracle(l);
  auto maps = brute_monotone(*l);
  for (const auto& f : maps) {
    auto pf = oracle_psi(*l, w, f);
    for (const auto& g : maps)
      if (pointwise_leq(*l, pf, g) != pointwise_leq(*l, f, g)) return true;
  }
  return false;
}

// Is some f_a idempotent under the dot product?
bool some_fa_idempotent(const LatticePtr& l) {
  auto w = wedge_below_oracle(l);
  for (Elem a = 0; a < l->size(); ++a) {
    Image fa(l->size(), a);
    fa[l->bottom()] = l->bottom();
    if (oracle_dot(*l, w, fa, fa) == fa) return true;
  }
  return false;
}

const ClaimReport& by_id(const std::vector<ClaimReport>& rs, const std::string& id) {
  for (const auto& r : rs)
    if (r.claim_id == id) return r;
  throw std::runtime_error("no report " + id);
}

}  // namespace

TEST(Registry, OrderAndUniqueIds) {
  const auto& reg = claim_registry();
  ASSERT_GT(reg.size(), 60u);
  std::set<std::string> ids;
  for (const auto& c : reg) EXPECT_TRUE(ids.insert(c.id).second) << c.id;
  auto pos = [&](const std::string& id) {
    for (std::size_t i = 0; i < reg.size(); ++i)
      if (reg[i].id == id) return i;
    return reg.size();
  };
  EXPECT_LT(pos("Rem 2.1(1)"), pos("Def 3.1"));
  EXPECT_LT(pos("Thm 3.8"), pos("Thm 3.16"));
  EXPECT_LT(pos("Thm 3.16"), pos("Prop 4.2"));
  EXPECT_LT(pos("Prop 4.2"), pos("Thm 4.14"));
  EXPECT_LT(pos("Thm 4.14"), reg.size());
  EXPECT_THROW(find_claim("Thm 9.99"), Error);
}

TEST(Audit, ChainThreeTheoremsHold) {
  Env env(chain(3));
  auto reports = audit(env, {}, exhaustive(4));
  EXPECT_EQ(reports.size(), claim_registry().size());
  for (const auto& r : reports) {
    if (r.expected == Expectation::theorem || r.expected == Expectation::negative) {
      EXPECT_EQ(r.verdict, Verdict::pass) << r.claim_id << " " << r.reason;
    }
    if (r.counterexample) {
      EXPECT_TRUE(replay(env, *r.counterexample)) << r.claim_id;
    }
  }
  EXPECT_FALSE(theorem_failure(reports));
}

TEST(Audit, SuspectClaimsMatchBruteForce) {
  for (const auto& l : {chain(2), chain(3), boolean(2)}) {
    Env env(l);
    auto reports = audit(env, {"Cor 3.10(5)", "Cor 3.13(4)"}, exhaustive());
    ASSERT_EQ(reports.size(), 2u);
    const auto& fa = by_id(reports, "Cor 3.10(5)");
    const auto& galois = by_id(reports, "Cor 3.13(4)");
    EXPECT_EQ(fa.expected, Expectation::suspect);
    EXPECT_EQ(fa.verdict == Verdict::fail, some_fa_idempotent(l)) << l->name();
    EXPECT_EQ(galois.verdict == Verdict::fail, galois_fails(l)) << l->name();
    for (const auto* r : {&fa, &galois})
      if (r->verdict == Verdict::fail) {
        ASSERT_TRUE(r->counterexample);
        EXPECT_TRUE(replay(env, *r->counterexample)) << r->claim_id;
      }
    EXPECT_FALSE(theorem_failure(reports));
  }
}

TEST(Audit, SuspectFailuresOnChainTwoHaveLeastWitnesses) {
  Env env(chain(2));
  auto reports = audit(env, {"Cor 3.10(5)", "Cor 3.13(4)"}, exhaustive());
  const auto& fa = by_id(reports, "Cor 3.10(5)");
  ASSERT_EQ(fa.verdict, Verdict::fail);
  EXPECT_EQ(std::get<Elem>(fa.counterexample->witnesses[0].value), 0u);
  const auto& galois = by_id(reports, "Cor 3.13(4)");
  ASSERT_EQ(galois.verdict, Verdict::fail);
  EXPECT_EQ(std::get<MonotoneMap>(galois.counterexample->witnesses[0].value).image(), (Image{1, 1}));
  EXPECT_EQ(std::get<MonotoneMap>(galois.counterexample->witnesses[1].value).image(), (Image{0, 1}));
}

TEST(Audit, DiamondSkipsWedgeClaims) {
  Env env(diamond_m3());
  auto reports = audit(env, {}, exhaustive(4));
  std::size_t skipped = 0;
  for (const auto& r : reports) {
    const auto& c = find_claim(r.claim_id);
    if (c.scope == Scope::distributive) {
      EXPECT_EQ(r.verdict, Verdict::skipped) << r.claim_id;
      EXPECT_NE(r.reason.find("NotDistributive"), std::string::npos) << r.claim_id;
      ++skipped;
    }
    if (r.verdict == Verdict::fail) {
      EXPECT_NE(r.expected, Expectation::theorem) << r.claim_id;
    }
  }
  EXPECT_GT(skipped, 20u);
  EXPECT_EQ(by_id(reports, "Prop 4.2").verdict, Verdict::pass);
  for (const char* id : {"Rem 2.1(1)", "Rem 2.1(2)", "Rem 2.1(3)", "Rem 2.1(4)"})
    EXPECT_EQ(by_id(reports, id).verdict, Verdict::pass) << id;
  EXPECT_FALSE(theorem_failure(reports));
}

TEST(Audit, ExampleCounterexampleOnChainTwo) {
  Env env(chain(2));
  auto r = audit(env, {"Example 3.11"}, exhaustive());
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].verdict, Verdict::pass);
  ASSERT_TRUE(r[0].counterexample);
  EXPECT_EQ(std::get<MonotoneMap>(r[0].counterexample->witnesses[0].value).image(), (Image{1, 1}));
  EXPECT_TRUE(replay(env, *r[0].counterexample));
}

TEST(Audit, AbstractNegativesFindWitnesses) {
  Env env(chain(2));
  for (const auto& r : audit(env, {"Abstract(circ quantale)", "Abstract(circ co-quantale)"}, exhaustive())) {
    EXPECT_EQ(r.verdict, Verdict::pass) << r.claim_id;
    ASSERT_TRUE(r.counterexample);
    EXPECT_TRUE(replay(env, *r.counterexample));
  }
}

TEST(Audit, TheoremFailureLogic) {
  ClaimReport r;
  r.expected = Expectation::suspect;
  r.verdict = Verdict::fail;
  EXPECT_FALSE(theorem_failure({r}));
  r.verdict = Verdict::skipped;
  r.expected = Expectation::theorem;
  EXPECT_FALSE(theorem_failure({r}));
  r.verdict = Verdict::fail;
  EXPECT_TRUE(theorem_failure({r}));
  r.expected = Expectation::negative;
  EXPECT_TRUE(theorem_failure({r}));
}

TEST(Audit, UnknownClaimIsAnError) {
  Env env(chain(2));
  try {
    audit(env, {"Thm 3.8", "Lemma 0"}, exhaustive());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_argument);
  }
}

TEST(Audit, SubsetKeepsRegistryOrder) {
  Env env(chain(2));
  auto r = audit(env, {"Thm 3.8", "Rem 2.1(1)"}, exhaustive());
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].claim_id, "Rem 2.1(1)");
  EXPECT_EQ(r[1].claim_id, "Thm 3.8");
}

TEST(Audit, WorkerCountDoesNotChangeResults) {
  Env a(boolean(2)), b(boolean(2));
  auto r1 = audit(a, {}, exhaustive(1));
  auto r2 = audit(b, {}, exhaustive(5));
  ASSERT_EQ(r1.size(), r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    EXPECT_EQ(r1[i].verdict, r2[i].verdict) << r1[i].claim_id;
    EXPECT_EQ(r1[i].instances, r2[i].instances) << r1[i].claim_id;
    ASSERT_EQ(r1[i].counterexample.has_value(), r2[i].counterexample.has_value());
    if (!r1[i].counterexample) continue;
    for (std::size_t k = 0; k < r1[i].counterexample->witnesses.size(); ++k) {
      EXPECT_EQ(r1[i].counterexample->witnesses[k].value, r2[i].counterexample->witnesses[k].value);
    }
  }
}
