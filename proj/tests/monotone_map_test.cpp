#include <gtest/gtest.h>

#include <set>

#include "qlab/generators.hpp"
#include "qlab/monotone_map.hpp"

using namespace qlab;

namespace {

using Image = std::vector<Elem>;

// Every map dom -> cod as an image table, filtered by the definition.
std::vector<Image> brute_monotone(const Lattice& dom, const Lattice& cod) {
  const std::size_t n = dom.size(), m = cod.size();
  std::vector<Image> out;
  Image img(n, 0);
  while (true) {
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x)
      for (Elem y = 0; y < n && ok; ++y)
        if (dom.leq(x, y) && !cod.leq(img[x], img[y])) ok = false;
    if (ok) out.push_back(img);
    std::size_t i = 0;
    while (i < n && ++img[i] == m) img[i++] = 0;
    if (i == n) break;
  }
  return out;
}

// Sup-preservation over every subset, not just pairs.
bool brute_sup_preserving(const MonotoneMap& f) {
  const Lattice& a = *f.dom();
  const Lattice& b = *f.cod();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << a.size()); ++mask) {
    Elem ja = a.bottom(), jb = b.bottom();
    for (Elem x = 0; x < a.size(); ++x)
      if (mask >> x & 1U) {
        ja = a.join(ja, x);
        jb = b.join(jb, f(x));
      }
    if (f(ja) != jb) return false;
  }
  return true;
}

bool brute_meet_preserving(const MonotoneMap& f) {
  const Lattice& a = *f.dom();
  const Lattice& b = *f.cod();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << a.size()); ++mask) {
    Elem ma = a.top(), mb = b.top();
    for (Elem x = 0; x < a.size(); ++x)
      if (mask >> x & 1U) {
        ma = a.meet(ma, x);
        mb = b.meet(mb, f(x));
      }
    if (f(ma) != mb) return false;
  }
  return true;
}

struct Fixture {
  LatticePtr l;
  ContextPtr ctx;
  explicit Fixture(LatticePtr lat) : l(lat), ctx(LatticeContext::make(lat)) {}
  const WedgeRelation& w() const { return *ctx->wedge; }
  const WedgeRelation& co() const { return *ctx->co_wedge; }
  MonotoneMap m(Image img) const { return make_map(l, std::move(img)); }
  MonotoneMap c(CanonicalKind k, Elem a = 0) const { return canonical(l, k, a); }
};

std::vector<LatticePtr> small_distributive() {
  return {chain(1), chain(2), chain(3), boolean(2), from_random_poset(3, 0.5, 7), product(*chain(2), *chain(3))};
}

bool pointwise_leq(const MonotoneMap& a, const MonotoneMap& b) { return a.leq(b); }

}  // namespace

TEST(MakeMap, IdentityIsValid) {
  auto b2 = boolean(2);
  EXPECT_NO_THROW(make_map(b2, {0, 1, 2, 3}));
}

TEST(MakeMap, DecreasingOnChainTwo) {
  try {
    make_map(chain(2), {1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_monotone);
    EXPECT_EQ(e.witness(), (std::vector<Elem>{0, 1}));
  }
}

TEST(MakeMap, WrongLengthAndRange) {
  auto c2 = chain(2);
  EXPECT_THROW(make_map(c2, {0}), Error);
  EXPECT_THROW(make_map(c2, {0, 2}), Error);
}

TEST(MakeMap, BooleanTwoTopS) {
  auto f = make_map(boolean(2), {0, 1, 1, 1});
  EXPECT_TRUE(classify(f).sup_preserving);
  EXPECT_FALSE(classify(f).meet_preserving);
}

TEST(Enumerate, KnownCounts) {
  auto c2 = enumerate_monotone(chain(2));
  ASSERT_EQ(c2.size(), 3u);
  EXPECT_EQ(c2[0].image(), (Image{0, 0}));
  EXPECT_EQ(c2[1].image(), (Image{0, 1}));
  EXPECT_EQ(c2[2].image(), (Image{1, 1}));
  EXPECT_EQ(enumerate_monotone(chain(3)).size(), 10u);
  EXPECT_EQ(enumerate_monotone(boolean(2)).size(), 36u);
}

TEST(Enumerate, MatchesBruteFilter) {
  std::vector<LatticePtr> zoo{chain(1), chain(2), chain(3), chain(4), boolean(2), diamond_m3(), pentagon_n5(),
                              from_random_poset(3, 0.3, 1)};
  for (const auto& l : zoo) {
    auto got = enumerate_monotone(l);
    auto ref = brute_monotone(*l, *l);
    std::set<Image> a, b(ref.begin(), ref.end());
    for (const auto& f : got) a.insert(f.image());
    EXPECT_EQ(a.size(), got.size()) << l->name() << " repeats a map";
    EXPECT_EQ(a, b) << l->name();
    for (std::size_t i = 1; i < got.size(); ++i) EXPECT_TRUE(canonical_compare(got[i - 1], got[i]) < 0);
  }
}

TEST(Enumerate, HeterogeneousCarriers) {
  auto b2 = boolean(2), c3 = chain(3);
  EXPECT_EQ(enumerate_monotone(b2, c3).size(), brute_monotone(*b2, *c3).size());
  EXPECT_EQ(enumerate_monotone(c3, b2).size(), brute_monotone(*c3, *b2).size());
}

TEST(Enumerate, CapReportsLowerBound) {
  try {
    enumerate_monotone(boolean(2), 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::size_limit_exceeded);
    EXPECT_NE(std::string(e.what()).find("at least 11"), std::string::npos);
  }
}

TEST(Sample, AlwaysMonotone) {
  for (const auto& l : {chain(5), boolean(3), diamond_m3(), pentagon_n5(), from_random_poset(6, 0.3, 3)})
    for (std::uint64_t s = 0; s < 50; ++s) {
      auto f = sample_monotone(l, s);
      EXPECT_NO_THROW(make_map(l, f.image())) << l->name() << " seed " << s;
    }
}

TEST(Sample, Deterministic) {
  auto l = boolean(3);
  EXPECT_EQ(sample_monotone(l, 42).image(), sample_monotone(l, 42).image());
}

TEST(Sample, ChainTwoSupport) {
  auto l = chain(2);
  for (std::uint64_t seed : {1ULL, 2ULL}) {
    Rng rng(seed);
    std::set<Image> seen;
    for (int i = 0; i < 10000; ++i) seen.insert(sample_monotone(l, l, rng).image());
    EXPECT_EQ(seen.size(), 3u);
  }
}

TEST(Sample, Singleton) { EXPECT_EQ(sample_monotone(chain(1), 9).image(), (Image{0})); }

TEST(Classify, PaperExamples) {
  Fixture c3(chain(3)), b2(boolean(2));
  EXPECT_EQ(classify(c3.c(CanonicalKind::id)), (MapClass{true, true}));
  EXPECT_EQ(classify(c3.c(CanonicalKind::top_const)), (MapClass{false, true}));
  EXPECT_TRUE(classify(c3.c(CanonicalKind::top_S)).sup_preserving);
  EXPECT_EQ(classify(b2.c(CanonicalKind::top_S)), (MapClass{true, false}));
  EXPECT_EQ(classify(b2.c(CanonicalKind::bot_M)), (MapClass{false, true}));
}

TEST(Classify, AgreesWithAllSubsets) {
  for (const auto& l : {chain(3), boolean(2), diamond_m3(), pentagon_n5()})
    for (const auto& f : enumerate_monotone(l)) {
      EXPECT_EQ(is_sup_preserving(f), brute_sup_preserving(f)) << l->name();
      EXPECT_EQ(is_meet_preserving(f), brute_meet_preserving(f)) << l->name();
    }
}

TEST(Classify, SupPreservingOnChainTwo) {
  std::vector<Image> sup;
  for (const auto& f : enumerate_monotone(chain(2)))
    if (classify(f).sup_preserving) sup.push_back(f.image());
  EXPECT_EQ(sup, (std::vector<Image>{{0, 0}, {0, 1}}));
}

TEST(Canonical, Values) {
  Fixture c2(chain(2)), b2(boolean(2));
  EXPECT_EQ(c2.c(CanonicalKind::top_S), c2.c(CanonicalKind::id));
  EXPECT_EQ(c2.c(CanonicalKind::f_a, 0), c2.c(CanonicalKind::bot_const));
  EXPECT_EQ(b2.c(CanonicalKind::bot_M).image(), (Image{0, 0, 0, 3}));
  EXPECT_EQ(b2.c(CanonicalKind::top_S).image(), (Image{0, 3, 3, 3}));
  EXPECT_EQ(b2.c(CanonicalKind::f_a, 1).image(), (Image{0, 1, 1, 1}));
  EXPECT_THROW(b2.c(CanonicalKind::f_a, 4), Error);
}

TEST(Pointwise, JoinAndMeet) {
  Fixture c2(chain(2)), b2(boolean(2));
  const MonotoneMap pair[] = {c2.c(CanonicalKind::bot_const), c2.c(CanonicalKind::id)};
  EXPECT_EQ(pointwise_join(c2.l, c2.l, pair), c2.c(CanonicalKind::id));
  auto all = enumerate_monotone(c2.l);
  EXPECT_EQ(pointwise_join(c2.l, c2.l, all), c2.c(CanonicalKind::top_const));
  EXPECT_EQ(meet2(b2.c(CanonicalKind::top_const), b2.c(CanonicalKind::bot_M)), b2.c(CanonicalKind::bot_M));
  EXPECT_EQ(pointwise_join(c2.l, c2.l, {}), c2.c(CanonicalKind::bot_const));
  EXPECT_EQ(pointwise_meet(c2.l, c2.l, {}), c2.c(CanonicalKind::top_const));
}

TEST(Pointwise, MixedCarriers) {
  const MonotoneMap fam[] = {canonical(chain(2), CanonicalKind::id), canonical(chain(3), CanonicalKind::id)};
  try {
    pointwise_join(fam[0].dom(), fam[0].cod(), fam);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::mixed_carriers);
  }
}

TEST(Compose, Usual) {
  Fixture c2(chain(2));
  auto top = c2.c(CanonicalKind::top_const), bot = c2.c(CanonicalKind::bot_const), id = c2.c(CanonicalKind::id);
  EXPECT_EQ(compose_usual(top, bot), top);
  EXPECT_EQ(compose_usual(top, id), top);
  for (const auto& f : enumerate_monotone(c2.l)) EXPECT_EQ(compose_usual(id, f), f);
  EXPECT_THROW(compose_usual(canonical(chain(3), CanonicalKind::id), id), Error);
}

TEST(Compose, DotExamples) {
  Fixture b2(boolean(2)), c2(chain(2));
  auto topc = b2.c(CanonicalKind::top_const);
  EXPECT_EQ(compose_dot(topc, b2.c(CanonicalKind::id), b2.w()).image(), (Image{0, 3, 3, 3}));
  EXPECT_EQ(compose_dot(b2.c(CanonicalKind::top_S), topc, b2.w()), topc);
  auto f1 = c2.c(CanonicalKind::f_a, 1);
  EXPECT_EQ(compose_dot(f1, f1, c2.w()), f1);
  for (const auto& f : enumerate_monotone(b2.l)) EXPECT_EQ(compose_dot(b2.c(CanonicalKind::id), f, b2.w()), f);
}

TEST(Compose, BulletExamples) {
  Fixture c2(chain(2)), b2(boolean(2));
  auto id = c2.c(CanonicalKind::id);
  EXPECT_EQ(compose_bullet(id, id, c2.co()), id);
  auto r = compose_bullet(c2.c(CanonicalKind::bot_const), id, c2.co());
  EXPECT_EQ(r, c2.c(CanonicalKind::bot_M));
  EXPECT_EQ(r.image(), (Image{0, 1}));
  auto top = b2.c(CanonicalKind::top_const);
  EXPECT_EQ(compose_bullet(top, top, b2.co()), top);
}

TEST(Compose, WrongRelationKind) {
  Fixture c2(chain(2));
  auto id = c2.c(CanonicalKind::id);
  EXPECT_THROW(compose_dot(id, id, c2.co()), Error);
  EXPECT_THROW(compose_bullet(id, id, c2.w()), Error);
}

TEST(Compose, OneVariableMatchesTwoVariable) {
  for (const auto& l : small_distributive()) {
    Fixture fx(l);
    auto maps = enumerate_monotone(l, 2000);
    for (const auto& g : maps)
      for (const auto& f : maps) {
        ASSERT_EQ(compose_dot(g, f, fx.w()), compose_dot_two_variable(g, f, fx.w(), fx.w())) << l->name();
        ASSERT_EQ(compose_bullet(g, f, fx.co()), compose_bullet_two_variable(g, f, fx.co(), fx.co()))
            << l->name();
      }
    for (const auto& f : maps) {
      EXPECT_EQ(psi(f, fx.w()), psi_two_variable(f, fx.w(), fx.w()));
      EXPECT_EQ(phi(f, fx.co()), phi_two_variable(f, fx.co(), fx.co()));
    }
  }
}

TEST(Compose, SandwichAndCollapse) {
  for (const auto& l : small_distributive()) {
    Fixture fx(l);
    auto maps = enumerate_monotone(l, 2000);
    for (const auto& g : maps)
      for (const auto& f : maps) {
        auto dot = compose_dot(g, f, fx.w()), usual = compose_usual(g, f), bullet = compose_bullet(g, f, fx.co());
        ASSERT_TRUE(pointwise_leq(dot, usual));
        ASSERT_TRUE(pointwise_leq(usual, bullet));
        EXPECT_NO_THROW(make_map(l, dot.image()));
        EXPECT_NO_THROW(make_map(l, bullet.image()));
        auto cf = classify(f), cg = classify(g);
        if (cf.sup_preserving && cg.sup_preserving) {
          EXPECT_EQ(dot, usual);
        }
        if (cf.meet_preserving && cg.meet_preserving) {
          EXPECT_EQ(bullet, usual);
        }
        if (cf.sup_preserving) {
          EXPECT_TRUE(classify(dot).sup_preserving);
        }
        if (cf.meet_preserving) {
          EXPECT_TRUE(classify(bullet).meet_preserving);
        }
      }
  }
}

TEST(Compose, Heterogeneous) {
  auto b2 = boolean(2), c3 = chain(3);
  auto cb = LatticeContext::make(b2), cc = LatticeContext::make(c3);
  for (const auto& f : enumerate_monotone(b2, c3))
    for (const auto& g : enumerate_monotone(c3, b2)) {
      auto dot = compose_dot(g, f, *cc->wedge);
      EXPECT_EQ(dot.dom(), b2);
      EXPECT_EQ(dot.cod(), b2);
      EXPECT_EQ(dot, compose_dot_two_variable(g, f, *cc->wedge, *cb->wedge));
      EXPECT_TRUE(pointwise_leq(dot, compose_usual(g, f)));
    }
}

TEST(Projections, Examples) {
  Fixture c2(chain(2));
  EXPECT_EQ(psi(c2.c(CanonicalKind::top_const), c2.w()).image(), (Image{0, 1}));
  EXPECT_EQ(psi(c2.c(CanonicalKind::bot_const), c2.w()), c2.c(CanonicalKind::bot_const));
  EXPECT_EQ(phi(c2.c(CanonicalKind::bot_const), c2.co()).image(), (Image{0, 1}));
  EXPECT_EQ(phi(c2.c(CanonicalKind::top_const), c2.co()), c2.c(CanonicalKind::top_const));
  for (const auto& l : small_distributive()) {
    Fixture fx(l);
    EXPECT_EQ(psi(fx.c(CanonicalKind::id), fx.w()), fx.c(CanonicalKind::id));
    EXPECT_EQ(phi(fx.c(CanonicalKind::id), fx.co()), fx.c(CanonicalKind::id));
  }
}

TEST(Projections, Properties) {
  for (const auto& l : small_distributive()) {
    Fixture fx(l);
    std::set<Image> sup_maps, meet_maps, psi_image, phi_image;
    for (const auto& f : enumerate_monotone(l, 2000)) {
      auto p = psi(f, fx.w()), q = phi(f, fx.co());
      EXPECT_TRUE(is_sup_preserving(p));
      EXPECT_TRUE(is_meet_preserving(q));
      EXPECT_TRUE(p.leq(f));
      EXPECT_TRUE(f.leq(q));
      EXPECT_EQ(psi(p, fx.w()), p);
      EXPECT_EQ(phi(q, fx.co()), q);
      if (is_sup_preserving(f)) {
        EXPECT_EQ(p, f);
        sup_maps.insert(f.image());
      }
      if (is_meet_preserving(f)) {
        EXPECT_EQ(q, f);
        meet_maps.insert(f.image());
      }
      psi_image.insert(p.image());
      phi_image.insert(q.image());
    }
    EXPECT_EQ(psi_image, sup_maps) << l->name();
    EXPECT_EQ(phi_image, meet_maps) << l->name();
  }
}
