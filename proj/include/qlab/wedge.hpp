#ifndef QLAB_WEDGE_HPP
#define QLAB_WEDGE_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qlab/diagnostics.hpp"
#include "qlab/lattice.hpp"
#include "qlab/rng.hpp"

namespace qlab {

enum class WedgeKind { wedge, co_wedge };
enum class WedgeMethod { oracle, fast };

inline std::string_view to_string(WedgeKind k) { return k == WedgeKind::wedge ? "wedge" : "co_wedge"; }
inline std::string_view to_string(WedgeMethod m) { return m == WedgeMethod::oracle ? "oracle" : "fast"; }

/// The totally-below relation x ◁ y (or its order dual x ◁co y) of one
/// lattice, as an n x n bit table plus per-column lists for the composition
/// folds.
class WedgeRelation {
 public:
  /// `below[y]` is the set {x : rel(x, y)}.
  WedgeRelation(LatticePtr lattice, std::vector<Bitset> below, WedgeKind kind, WedgeMethod method)
      : lattice_(std::move(lattice)), below_(std::move(below)), kind_(kind), method_(method) {
    lists_.resize(below_.size());
    for (std::size_t y = 0; y < below_.size(); ++y) lists_[y] = below_[y].members();
  }

  const LatticePtr& lattice() const noexcept { return lattice_; }
  WedgeKind kind() const noexcept { return kind_; }
  WedgeMethod method() const noexcept { return method_; }
  std::size_t size() const noexcept { return below_.size(); }

  bool operator()(Elem x, Elem y) const noexcept { return below_[y].test(x); }
  const Bitset& below(Elem y) const noexcept { return below_[y]; }
  /// Sorted {x : rel(x, y)}.
  const std::vector<Elem>& below_list(Elem y) const noexcept { return lists_[y]; }

  /// All related pairs (x, y), sorted lexicographically.
  std::vector<std::pair<Elem, Elem>> pairs() const {
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem x = 0; x < size(); ++x)
      for (Elem y = 0; y < size(); ++y)
        if ((*this)(x, y)) out.emplace_back(x, y);
    return out;
  }

  /// Bit-for-bit table equality (ignores kind and method).
  bool same_table(const WedgeRelation& o) const { return below_ == o.below_; }

 private:
  LatticePtr lattice_;
  std::vector<Bitset> below_;
  std::vector<std::vector<Elem>> lists_;
  WedgeKind kind_;
  WedgeMethod method_;
};

/// x ◁ y straight from the definition: every A with y <= ⋁A has a member
/// above x. Only subsets of join-irreducibles are scanned. That loses
/// nothing: replacing A by the join-irreducibles lying under its members keeps
/// ⋁A (every element of a finite lattice is the join of the join-irreducibles
/// below it), and a join-irreducible above x under some a in A puts x under a.
/// Valid on any finite lattice, distributive or not.
inline WedgeRelation wedge_below_oracle(const LatticePtr& l, const Limits& limits = {}) {
  if (!l->is_lattice()) throw Error(Errc::invalid_lattice, l->name() + " is not a lattice");
  const auto& ji = l->join_irreducibles();
  if (ji.size() > limits.max_oracle_irreducibles)
    throw Error(Errc::size_limit_exceeded, std::to_string(ji.size()) + " join-irreducibles, oracle cap is " +
                                               std::to_string(limits.max_oracle_irreducibles));
  const std::size_t n = l->size();
  // required[J]: the x-candidates allowed by every A with ⋁A = J, i.e. the
  // intersection of the down-closures of such A.
  std::vector<Bitset> required(n, Bitset::full(n));
  auto rec = [&](auto&& self, std::size_t from, const Bitset& under, Elem join) -> void {
    required[join] &= under;
    for (std::size_t k = from; k < ji.size(); ++k)
      self(self, k + 1, under | l->down(ji[k]), l->join(join, ji[k]));
  };
  rec(rec, 0, Bitset(n), l->bottom());

  std::vector<Bitset> below(n, Bitset::full(n));
  for (Elem y = 0; y < n; ++y) l->up(y).for_each([&](Elem j) { below[y] &= required[j]; });
  return WedgeRelation(l, std::move(below), WedgeKind::wedge, WedgeMethod::oracle);
}

/// Distributive fast path: x ◁ y iff x <= q <= y for some join-irreducible q
/// (join-irreducibles are join-prime under distributivity). O(n^2 |ji|).
inline WedgeRelation wedge_below_fast(const LatticePtr& l) {
  if (!l->is_distributive())
    throw Error(Errc::not_distributive, l->name() + " is not distributive; use the oracle");
  const std::size_t n = l->size();
  std::vector<Bitset> below(n, Bitset(n));
  for (Elem y = 0; y < n; ++y)
    for (Elem q : l->join_irreducibles())
      if (l->leq(q, y)) below[y] |= l->down(q);
  return WedgeRelation(l, std::move(below), WedgeKind::wedge, WedgeMethod::fast);
}

inline WedgeRelation wedge_below(const LatticePtr& l, WedgeMethod method, const Limits& limits = {}) {
  return method == WedgeMethod::oracle ? wedge_below_oracle(l, limits) : wedge_below_fast(l);
}

/// x ◁co y in l is x ◁ y computed in the dual (which keeps element indices).
inline WedgeRelation co_wedge_below(const LatticePtr& l, WedgeMethod method, const Limits& limits = {}) {
  const auto d = dual(*l);
  const auto w = wedge_below(d, method, limits);
  std::vector<Bitset> below(l->size());
  for (Elem y = 0; y < l->size(); ++y) below[y] = w.below(y);
  return WedgeRelation(l, std::move(below), WedgeKind::co_wedge, method);
}

struct WedgeCheckOptions {
  std::size_t exhaustive_families_up_to = 12;  // all subsets of L when |L| <= this
  std::size_t random_families = 1000;
  std::uint64_t seed = 0;
};

/// Families Y of lattice elements used for the join-primality item: all
/// subsets for small lattices, otherwise ∅, singletons, pairs and seeded
/// random subsets.
inline std::vector<std::vector<Elem>> element_families(std::size_t n, const WedgeCheckOptions& opt) {
  std::vector<std::vector<Elem>> out;
  if (n <= opt.exhaustive_families_up_to) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<Elem> f;
      for (Elem i = 0; i < n; ++i)
        if (mask >> i & 1U) f.push_back(i);
      out.push_back(std::move(f));
    }
    return out;
  }
  out.emplace_back();
  for (Elem i = 0; i < n; ++i) out.push_back({i});
  for (Elem i = 0; i < n; ++i)
    for (Elem j = i + 1; j < n; ++j) out.push_back({i, j});
  Rng rng(derive_seed(opt.seed, "element-families"));
  for (std::size_t r = 0; r < opt.random_families; ++r) {
    std::vector<Elem> f;
    for (Elem i = 0; i < n; ++i)
      if (rng.bernoulli(0.5)) f.push_back(i);
    out.push_back(std::move(f));
  }
  return out;
}

/// Checks the structural properties of a computed relation. Items, stated for
/// kind=wedge and read in the order dual for kind=co_wedge:
///   extremal       bottom is not below bottom, bottom is below every y != bottom
///   lower_closure  x1 ◁ y and x2 <= x1 imply x2 ◁ y
///   upper_closure  x ◁ y1 and y1 <= y2 imply x ◁ y2
///   order          x ◁ y implies x <= y
///   join_prime     x ◁ ⋁Y iff x ◁ y for some y in Y (distributive only)
///   approximation  x = ⋁{y : y ◁ x}
/// The first four hold on every finite lattice; approximation is the complete
/// distributivity test and is evaluated everywhere, so it fails on M3 and N5.
inline Diagnostics check_wedge_axioms(const WedgeRelation& w, const WedgeCheckOptions& opt = {}) {
  const LatticePtr l = w.kind() == WedgeKind::wedge ? w.lattice() : dual(*w.lattice());
  const std::size_t n = l->size();
  Diagnostics d;
  if (!l->is_lattice()) {
    d.skip("extremal", "not a lattice");
    return d;
  }
  {
    const Elem b = l->bottom();
    std::optional<Elem> bad;
    if (w(b, b)) bad = b;
    for (Elem y = 0; y < n && !bad; ++y)
      if (y != b && !w(b, y)) bad = y;
    bad ? d.fail("extremal", "bottom/extremal element misplaced", {b, *bad}) : d.pass("extremal");
  }
  {
    std::optional<std::vector<Elem>> bad;
    for (Elem y = 0; y < n && !bad; ++y)
      w.below(y).for_each([&](Elem x1) {
        if (bad) return;
        const Bitset missing = l->down(x1) - w.below(y);
        if (missing.any()) bad = std::vector<Elem>{x1, static_cast<Elem>(missing.find_first()), y};
      });
    bad ? d.fail("lower_closure", "x1 rel y, x2 <= x1, not x2 rel y", *bad) : d.pass("lower_closure");
  }
  {
    std::optional<std::vector<Elem>> bad;
    for (Elem y1 = 0; y1 < n && !bad; ++y1)
      l->up(y1).for_each([&](Elem y2) {
        if (bad) return;
        const Bitset missing = w.below(y1) - w.below(y2);
        if (missing.any()) bad = std::vector<Elem>{static_cast<Elem>(missing.find_first()), y1, y2};
      });
    bad ? d.fail("upper_closure", "x rel y1, y1 <= y2, not x rel y2", *bad) : d.pass("upper_closure");
  }
  {
    std::optional<std::vector<Elem>> bad;
    for (Elem y = 0; y < n && !bad; ++y) {
      const Bitset off = w.below(y) - l->down(y);
      if (off.any()) bad = std::vector<Elem>{static_cast<Elem>(off.find_first()), y};
    }
    bad ? d.fail("order", "x rel y but not x <= y", *bad) : d.pass("order");
  }
  if (!l->is_distributive()) {
    d.skip("join_prime", "NotDistributive");
  } else {
    std::optional<std::vector<Elem>> bad;
    for (const auto& fam : element_families(n, opt)) {
      const Elem top = l->join_all(fam);
      Bitset some(n);
      for (Elem y : fam) some |= w.below(y);
      if (!(some == w.below(top))) {
        Bitset diff = (some - w.below(top)) | (w.below(top) - some);
        std::vector<Elem> wit{static_cast<Elem>(diff.find_first())};
        wit.insert(wit.end(), fam.begin(), fam.end());
        bad = std::move(wit);
        break;
      }
    }
    bad ? d.fail("join_prime", "x rel join(Y) disagrees with x rel some y in Y (witness: x, Y...)", *bad)
        : d.pass("join_prime");
  }
  {
    std::optional<Elem> bad;
    for (Elem x = 0; x < n && !bad; ++x)
      if (l->join_all(w.below_list(x)) != x) bad = x;
    bad ? d.fail("approximation", "x differs from the join of the elements related to it", {*bad})
        : d.pass("approximation");
  }
  return d;
}

/// A lattice together with its cached wedge relations: the fast ones on
/// distributive lattices, the oracle ones elsewhere when affordable.
struct LatticeContext {
  LatticePtr lattice;
  std::optional<WedgeRelation> wedge;
  std::optional<WedgeRelation> co_wedge;

  static std::shared_ptr<const LatticeContext> make(LatticePtr l, const Limits& limits = {}) {
    auto ctx = std::make_shared<LatticeContext>();
    ctx->lattice = l;
    if (l->is_distributive()) {
      ctx->wedge = wedge_below_fast(l);
      ctx->co_wedge = co_wedge_below(l, WedgeMethod::fast);
    } else if (l->is_lattice() && l->join_irreducibles().size() <= limits.max_oracle_irreducibles &&
               l->meet_irreducibles().size() <= limits.max_oracle_irreducibles) {
      ctx->wedge = wedge_below_oracle(l, limits);
      ctx->co_wedge = co_wedge_below(l, WedgeMethod::oracle, limits);
    }
    return ctx;
  }

  bool distributive() const { return lattice->is_distributive(); }

  /// The wedge relation usable by the compositions; requires distributivity.
  const WedgeRelation& cd_wedge() const {
    if (!distributive() || !wedge) throw Error(Errc::not_distributive, lattice->name() + " is not distributive");
    return *wedge;
  }
  const WedgeRelation& cd_co_wedge() const {
    if (!distributive() || !co_wedge)
      throw Error(Errc::not_distributive, lattice->name() + " is not distributive");
    return *co_wedge;
  }
};

using ContextPtr = std::shared_ptr<const LatticeContext>;

}  // namespace qlab

#endif  // QLAB_WEDGE_HPP
