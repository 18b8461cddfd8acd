#include <gtest/gtest.h>

#include "qlab/generators.hpp"
#include "qlab/wedge.hpp"

using namespace qlab;

namespace {

using Pairs = std::vector<std::pair<Elem, Elem>>;

// Definition with no shortcut: x ◁ y iff every subset A of L with y <= ⋁A
// contains some a >= x. Scans all 2^n subsets.
std::vector<std::vector<bool>> full_subset_wedge(const Lattice& l) {
  const std::size_t n = l.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, true));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Elem j = l.bottom();
    for (Elem a = 0; a < n; ++a)
      if (mask >> a & 1U) j = l.join(j, a);
    for (Elem y = 0; y < n; ++y) {
      if (!l.leq(y, j)) continue;
      for (Elem x = 0; x < n; ++x) {
        bool covered = false;
        for (Elem a = 0; a < n; ++a)
          if ((mask >> a & 1U) && l.leq(x, a)) covered = true;
        if (!covered) rel[x][y] = false;
      }
    }
  }
  return rel;
}

std::vector<LatticePtr> small_zoo() {
  std::vector<LatticePtr> z;
  for (std::size_t n = 1; n <= 6; ++n) z.push_back(chain(n));
  z.push_back(boolean(2));
  z.push_back(boolean(3));
  z.push_back(diamond_m3());
  z.push_back(pentagon_n5());
  for (std::uint64_t s = 0; s < 6; ++s) z.push_back(from_random_poset(4, 0.4, s));
  return z;
}

}  // namespace

TEST(WedgeOracle, ChainTwo) {
  auto w = wedge_below_oracle(chain(2));
  EXPECT_EQ(w.pairs(), (Pairs{{0, 1}, {1, 1}}));
  EXPECT_EQ(w.method(), WedgeMethod::oracle);
}

TEST(WedgeOracle, BooleanTwo) {
  // 0, a=1, b=2, 1=3.
  auto w = wedge_below_oracle(boolean(2));
  EXPECT_EQ(w.pairs(), (Pairs{{0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 3}, {2, 2}, {2, 3}}));
  EXPECT_FALSE(w(3, 3));
}

TEST(WedgeOracle, Singleton) { EXPECT_TRUE(wedge_below_oracle(chain(1)).pairs().empty()); }

TEST(WedgeOracle, MatchesFullSubsetScan) {
  for (const auto& l : small_zoo()) {
    if (l->size() > 10) continue;
    auto w = wedge_below_oracle(l);
    auto ref = full_subset_wedge(*l);
    for (Elem x = 0; x < l->size(); ++x)
      for (Elem y = 0; y < l->size(); ++y) EXPECT_EQ(w(x, y), ref[x][y]) << l->name() << " " << x << "," << y;
  }
}

TEST(WedgeOracle, IrreducibleCap) {
  Limits limits;
  limits.max_oracle_irreducibles = 2;
  EXPECT_THROW(wedge_below_oracle(boolean(3), limits), Error);
}

TEST(WedgeFast, ChainThree) {
  auto w = wedge_below_fast(chain(3));
  Pairs expect;
  for (Elem x = 0; x < 3; ++x)
    for (Elem y = 0; y < 3; ++y)
      if (x <= y && y != 0) expect.emplace_back(x, y);
  EXPECT_EQ(w.pairs(), expect);
}

TEST(WedgeFast, BooleanTwoMatchesOracle) {
  auto b2 = boolean(2);
  EXPECT_TRUE(wedge_below_fast(b2).same_table(wedge_below_oracle(b2)));
}

TEST(WedgeFast, BooleanThreeReflexivePairsAreAtoms) {
  auto b3 = boolean(3);
  auto w = wedge_below_fast(b3);
  std::vector<Elem> reflexive;
  for (Elem x = 0; x < b3->size(); ++x)
    if (w(x, x)) reflexive.push_back(x);
  EXPECT_EQ(reflexive, b3->join_irreducibles());
  EXPECT_EQ(reflexive.size(), 3u);
}

TEST(WedgeFast, RefusesNonDistributive) {
  try {
    wedge_below_fast(diamond_m3());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_distributive);
  }
}

TEST(WedgeFast, AgreesWithOracleOnZoo) {
  for (const auto& l : small_zoo()) {
    if (!l->is_distributive()) continue;
    EXPECT_TRUE(wedge_below_fast(l).same_table(wedge_below_oracle(l))) << l->name();
    EXPECT_TRUE(co_wedge_below(l, WedgeMethod::fast).same_table(co_wedge_below(l, WedgeMethod::oracle)))
        << l->name();
  }
}

TEST(CoWedge, ChainTwo) {
  auto w = co_wedge_below(chain(2), WedgeMethod::oracle);
  EXPECT_EQ(w.pairs(), (Pairs{{0, 0}, {1, 0}}));
  EXPECT_EQ(w.kind(), WedgeKind::co_wedge);
}

TEST(CoWedge, BooleanTwo) {
  auto w = co_wedge_below(boolean(2), WedgeMethod::fast);
  // (1,a),(1,b),(1,0),(a,a),(a,0),(b,b),(b,0) with 0=0, a=1, b=2, 1=3.
  EXPECT_EQ(w.pairs(), (Pairs{{1, 0}, {1, 1}, {2, 0}, {2, 2}, {3, 0}, {3, 1}, {3, 2}}));
}

TEST(CoWedge, TopNeverRelatedToTop) {
  for (const auto& l : small_zoo()) {
    auto w = co_wedge_below(l, WedgeMethod::oracle);
    EXPECT_FALSE(w(l->top(), l->top())) << l->name();
    for (Elem x = 0; x < l->size(); ++x)
      for (Elem y = 0; y < l->size(); ++y)
        if (w(x, y)) {
          EXPECT_TRUE(l->leq(y, x));
        }
  }
}

TEST(CoWedge, IsWedgeOfDual) {
  for (const auto& l : small_zoo()) {
    auto co = co_wedge_below(l, WedgeMethod::oracle);
    auto d = wedge_below_oracle(dual(l));
    EXPECT_TRUE(co.same_table(d)) << l->name();
  }
}

TEST(WedgeAxioms, ChainFourAllPass) {
  auto d = check_wedge_axioms(wedge_below_oracle(chain(4)));
  EXPECT_TRUE(d.ok());
  for (const auto& c : d.checks) EXPECT_EQ(c.status, CheckStatus::pass) << c.item;
}

TEST(WedgeAxioms, DiamondFailsOnlyApproximation) {
  auto d = check_wedge_axioms(wedge_below_oracle(diamond_m3()));
  for (const char* item : {"extremal", "lower_closure", "upper_closure", "order"})
    EXPECT_EQ(d.status(item), CheckStatus::pass) << item;
  EXPECT_EQ(d.status("join_prime"), CheckStatus::skipped);
  ASSERT_EQ(d.status("approximation"), CheckStatus::fail);
  const Elem witness = d.find("approximation")->witness.at(0);
  EXPECT_TRUE(witness == 1 || witness == 2 || witness == 3);
}

TEST(WedgeAxioms, BooleanTwoCoWedge) {
  auto d = check_wedge_axioms(co_wedge_below(boolean(2), WedgeMethod::fast));
  EXPECT_TRUE(d.ok());
  EXPECT_EQ(d.status("approximation"), CheckStatus::pass);
  EXPECT_EQ(d.status("join_prime"), CheckStatus::pass);
}

TEST(WedgeAxioms, HoldOnDistributiveZoo) {
  for (const auto& l : small_zoo()) {
    if (!l->is_distributive()) continue;
    EXPECT_TRUE(check_wedge_axioms(wedge_below_fast(l)).ok()) << l->name();
    EXPECT_TRUE(check_wedge_axioms(co_wedge_below(l, WedgeMethod::fast)).ok()) << l->name();
  }
}

TEST(WedgeAxioms, DetectsCorruptedRelation) {
  auto l = chain(3);
  auto good = wedge_below_fast(l);
  std::vector<Bitset> below;
  for (Elem y = 0; y < 3; ++y) below.push_back(good.below(y));
  below[0].set(0);  // bottom ◁ bottom
  WedgeRelation bad(l, below, WedgeKind::wedge, WedgeMethod::fast);
  EXPECT_EQ(check_wedge_axioms(bad).status("extremal"), CheckStatus::fail);
}

TEST(LatticeContext, PicksMethodByDistributivity) {
  auto c = LatticeContext::make(boolean(2));
  EXPECT_EQ(c->wedge->method(), WedgeMethod::fast);
  auto m = LatticeContext::make(diamond_m3());
  ASSERT_TRUE(m->wedge);
  EXPECT_EQ(m->wedge->method(), WedgeMethod::oracle);
  EXPECT_THROW(m->cd_wedge(), Error);
}
