#ifndef QLAB_LATTICE_HPP
#define QLAB_LATTICE_HPP

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qlab/bits.hpp"
#include "qlab/diagnostics.hpp"
#include "qlab/error.hpp"
#include "qlab/limits.hpp"
#include "qlab/poset.hpp"

namespace qlab {

class Lattice;
using LatticePtr = std::shared_ptr<const Lattice>;

/// First triple (x, y, z) in index order with x ^ (y v z) != (x ^ y) v (x ^ z).
template <class L>
std::optional<std::array<Elem, 3>> find_distributivity_violation(const L& l) {
  const auto n = static_cast<Elem>(l.size());
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z))) return std::array{x, y, z};
  return std::nullopt;
}

/// A finite poset with its join and meet tables. When the poset is not a
/// lattice the tables hold kNoElem for pairs without a least upper / greatest
/// lower bound and `is_lattice()` is false. Immutable; shared by pointer.
class Lattice {
 public:
  /// Tables and flags computed from the order. Keeps the poset's numbering.
  static LatticePtr from_poset(Poset p, std::string name, const Limits& limits = {}) {
    if (p.size() > limits.max_lattice)
      throw Error(Errc::size_limit_exceeded, "lattice has " + std::to_string(p.size()) +
                                                 " elements, cap is " + std::to_string(limits.max_lattice));
    auto l = std::shared_ptr<Lattice>(new Lattice());
    l->name_ = std::move(name);
    l->poset_ = std::move(p);
    l->compute_tables();
    l->finish(std::nullopt);
    return l;
  }

  /// Birkhoff construction: the downsets of `p` ordered by inclusion, join =
  /// union, meet = intersection. Canonically numbered; element i records its
  /// downset as a mask over p.
  static LatticePtr downsets(const Poset& p, std::string name, const Limits& limits = {}) {
    const std::size_t m = p.size();
    std::vector<Bitset> found;
    Bitset current(m);
    const auto& ext = p.linear_extension();
    // Sweep along a linear extension; x may join the downset only when all of
    // its lower covers already have.
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == m) {
        if (found.size() >= limits.max_lattice)
          throw Error(Errc::size_limit_exceeded,
                      "poset has more than " + std::to_string(limits.max_lattice) + " downsets");
        found.push_back(current);
        return;
      }
      const Elem x = ext[i];
      self(self, i + 1);
      bool allowed = true;
      for (Elem c : p.lower_covers(x)) allowed = allowed && current.test(c);
      if (allowed) {
        current.set(x);
        self(self, i + 1);
        current.reset(x);
      }
    };
    rec(rec, 0);

    std::sort(found.begin(), found.end(), [](const Bitset& a, const Bitset& b) {
      const auto ca = a.count(), cb = b.count();
      if (ca != cb) return ca < cb;
      return a.members() < b.members();
    });
    const std::size_t n = found.size();
    std::map<Bitset, Elem> index;
    for (std::size_t i = 0; i < n; ++i) index.emplace(found[i], static_cast<Elem>(i));

    BitMatrix leq(n);
    std::vector<Cover> covers;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        if (found[i].is_subset_of(found[j])) leq.set(i, j);
      for (Elem x = 0; x < m; ++x) {
        if (found[i].test(x)) continue;
        bool minimal = true;
        for (Elem c : p.lower_covers(x)) minimal = minimal && found[i].test(c);
        if (!minimal) continue;
        Bitset next = found[i];
        next.set(x);
        covers.emplace_back(static_cast<Elem>(i), index.at(next));
      }
    }
    Poset raw = Poset::from_order_and_covers(std::move(leq), std::move(covers));
    const auto perm = raw.canonical_permutation();

    auto l = std::shared_ptr<Lattice>(new Lattice());
    l->name_ = std::move(name);
    l->poset_ = raw.relabeled(perm);
    l->masks_.assign(n, Bitset(m));
    for (std::size_t i = 0; i < n; ++i) l->masks_[perm[i]] = found[i];
    l->join_.assign(n * n, kNoElem);
    l->meet_.assign(n * n, kNoElem);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        l->join_[a * n + b] = index.at(l->masks_[a] | l->masks_[b]);
        l->meet_[a * n + b] = index.at(l->masks_[a] & l->masks_[b]);
      }
    // index.at gives pre-permutation numbers; move them into canonical numbering.
    for (auto& e : l->join_) e = perm[e];
    for (auto& e : l->meet_) e = perm[e];
    l->finish(true);
    return l;
  }

  /// Order dual on the same element indices: bottom and top, join and meet,
  /// join- and meet-irreducibles all trade places.
  static LatticePtr dual_of(const Lattice& src) {
    auto l = std::shared_ptr<Lattice>(new Lattice());
    l->name_ = "dual(" + src.name_ + ")";
    l->poset_ = src.poset_.dual();
    l->join_ = src.meet_;
    l->meet_ = src.join_;
    l->bottom_ = src.top_;
    l->top_ = src.bottom_;
    l->is_lattice_ = src.is_lattice_;
    l->is_distributive_ = src.is_distributive_;
    l->ji_ = src.mi_;
    l->mi_ = src.ji_;
    return l;
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return poset_.size(); }
  const Poset& poset() const noexcept { return poset_; }

  bool leq(Elem x, Elem y) const noexcept { return poset_.leq(x, y); }
  const Bitset& up(Elem x) const noexcept { return poset_.up(x); }
  const Bitset& down(Elem x) const noexcept { return poset_.down(x); }
  Elem join(Elem x, Elem y) const noexcept { return join_[x * size() + y]; }
  Elem meet(Elem x, Elem y) const noexcept { return meet_[x * size() + y]; }
  Elem bottom() const noexcept { return bottom_; }
  Elem top() const noexcept { return top_; }
  bool is_lattice() const noexcept { return is_lattice_; }
  bool is_distributive() const noexcept { return is_distributive_; }

  /// Sorted join-irreducibles (exactly one lower cover).
  const std::vector<Elem>& join_irreducibles() const noexcept { return ji_; }
  /// Sorted meet-irreducibles (exactly one upper cover).
  const std::vector<Elem>& meet_irreducibles() const noexcept { return mi_; }

  const std::vector<Elem>& linear_extension() const noexcept { return poset_.linear_extension(); }

  /// Downset mask over the generating poset; empty unless built by downsets().
  const std::vector<Bitset>& downset_masks() const noexcept { return masks_; }

  /// Join of a list; the empty join is bottom.
  Elem join_all(std::span<const Elem> xs) const noexcept {
    Elem acc = bottom_;
    for (Elem x : xs) acc = join(acc, x);
    return acc;
  }
  Elem meet_all(std::span<const Elem> xs) const noexcept {
    Elem acc = top_;
    for (Elem x : xs) acc = meet(acc, x);
    return acc;
  }

  /// Same carrier and order (names are not compared).
  friend bool operator==(const Lattice& a, const Lattice& b) { return a.poset_ == b.poset_; }

  /// Renamed copy.
  LatticePtr renamed(std::string name) const {
    auto l = std::make_shared<Lattice>(*this);
    l->name_ = std::move(name);
    return l;
  }

 private:
  Lattice() = default;

  void compute_tables() {
    const std::size_t n = size();
    join_.assign(n * n, kNoElem);
    meet_.assign(n * n, kNoElem);
    const bool ordered = poset_.numbering_is_linear_extension();
    auto least = [&](const Bitset& s) -> Elem {
      if (s.none()) return kNoElem;
      std::size_t cand = s.find_first();
      if (!ordered) {
        s.for_each([&](Elem e) {
          if (poset_.position(e) < poset_.position(static_cast<Elem>(cand))) cand = e;
        });
      }
      return s.is_subset_of(poset_.up(static_cast<Elem>(cand))) ? static_cast<Elem>(cand) : kNoElem;
    };
    auto greatest = [&](const Bitset& s) -> Elem {
      if (s.none()) return kNoElem;
      std::size_t cand = s.find_last();
      if (!ordered) {
        s.for_each([&](Elem e) {
          if (poset_.position(e) > poset_.position(static_cast<Elem>(cand))) cand = e;
        });
      }
      return s.is_subset_of(poset_.down(static_cast<Elem>(cand))) ? static_cast<Elem>(cand) : kNoElem;
    };
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x; y < n; ++y) {
        const Elem j = least(poset_.up(x) & poset_.up(y));
        const Elem m = greatest(poset_.down(x) & poset_.down(y));
        join_[x * n + y] = join_[y * n + x] = j;
        meet_[x * n + y] = meet_[y * n + x] = m;
      }
  }

  void finish(std::optional<bool> known_distributive) {
    const std::size_t n = size();
    is_lattice_ = n > 0 && std::find(join_.begin(), join_.end(), kNoElem) == join_.end() &&
                  std::find(meet_.begin(), meet_.end(), kNoElem) == meet_.end();
    bottom_ = top_ = kNoElem;
    for (std::size_t x = 0; x < n; ++x) {
      if (poset_.up(x).count() == n) bottom_ = static_cast<Elem>(x);
      if (poset_.down(x).count() == n) top_ = static_cast<Elem>(x);
    }
    ji_.clear();
    mi_.clear();
    for (std::size_t x = 0; x < n; ++x) {
      if (poset_.lower_covers(x).size() == 1) ji_.push_back(static_cast<Elem>(x));
      if (poset_.upper_covers(x).size() == 1) mi_.push_back(static_cast<Elem>(x));
    }
    if (!is_lattice_) is_distributive_ = false;
    else if (known_distributive) is_distributive_ = *known_distributive;
    else is_distributive_ = !find_distributivity_violation(*this).has_value();
  }

  std::string name_;
  Poset poset_;
  std::vector<Elem> join_;
  std::vector<Elem> meet_;
  Elem bottom_ = kNoElem;
  Elem top_ = kNoElem;
  bool is_lattice_ = false;
  bool is_distributive_ = false;
  std::vector<Elem> ji_;
  std::vector<Elem> mi_;
  std::vector<Bitset> masks_;
};

inline bool same_carrier(const LatticePtr& a, const LatticePtr& b) {
  return a == b || (a && b && *a == *b);
}

inline LatticePtr downset_lattice(const Poset& p, std::string name = "downsets", const Limits& limits = {}) {
  return Lattice::downsets(p, std::move(name), limits);
}

inline LatticePtr dual(const Lattice& l) { return Lattice::dual_of(l); }
inline LatticePtr dual(const LatticePtr& l) { return Lattice::dual_of(*l); }

/// Outcome of re-deriving a lattice's invariants from its order table.
struct LatticeValidation {
  Diagnostics diagnostics;  // consistency of the stored tables and flags
  bool is_lattice = false;
  bool is_distributive = false;
  std::optional<std::array<Elem, 2>> missing_bound;  // pair without join or meet
  std::optional<std::array<Elem, 3>> distributivity_witness;
};

/// Recomputes every invariant by brute force and compares with the stored
/// tables and flags.
inline LatticeValidation validate_lattice(const Lattice& l) {
  LatticeValidation out;
  auto& d = out.diagnostics;
  const std::size_t n = l.size();
  const auto& p = l.poset();

  {
    std::optional<Elem> bad;
    for (Elem x = 0; x < n && !bad; ++x)
      if (!p.leq(x, x)) bad = x;
    bad ? d.fail("reflexive", "x <= x fails", {*bad}) : d.pass("reflexive");
  }
  {
    std::optional<std::array<Elem, 2>> bad;
    for (Elem x = 0; x < n && !bad; ++x)
      for (Elem y = x + 1; y < n && !bad; ++y)
        if (p.leq(x, y) && p.leq(y, x)) bad = std::array{x, y};
    bad ? d.fail("antisymmetric", "x <= y <= x with x != y", {(*bad)[0], (*bad)[1]}) : d.pass("antisymmetric");
  }
  {
    std::optional<std::array<Elem, 3>> bad;
    for (Elem x = 0; x < n && !bad; ++x)
      for (Elem y = 0; y < n && !bad; ++y)
        for (Elem z = 0; z < n && !bad; ++z)
          if (p.leq(x, y) && p.leq(y, z) && !p.leq(x, z)) bad = std::array{x, y, z};
    bad ? d.fail("transitive", "x <= y <= z but not x <= z", {(*bad)[0], (*bad)[1], (*bad)[2]})
        : d.pass("transitive");
  }
  {
    const auto reduced = Poset::from_closed(p.order()).covers();
    reduced == p.covers() ? d.pass("covers") : d.fail("covers", "stored covers differ from transitive reduction");
  }

  // Brute-force bounds straight from the definition.
  auto lub = [&](Elem x, Elem y) -> Elem {
    for (Elem u = 0; u < n; ++u) {
      if (!p.leq(x, u) || !p.leq(y, u)) continue;
      bool least = true;
      for (Elem v = 0; v < n && least; ++v)
        if (p.leq(x, v) && p.leq(y, v) && !p.leq(u, v)) least = false;
      if (least) return u;
    }
    return kNoElem;
  };
  auto glb = [&](Elem x, Elem y) -> Elem {
    for (Elem u = 0; u < n; ++u) {
      if (!p.leq(u, x) || !p.leq(u, y)) continue;
      bool greatest = true;
      for (Elem v = 0; v < n && greatest; ++v)
        if (p.leq(v, x) && p.leq(v, y) && !p.leq(v, u)) greatest = false;
      if (greatest) return u;
    }
    return kNoElem;
  };
  bool tables_ok = true;
  std::optional<std::array<Elem, 2>> table_bad;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      const Elem j = lub(x, y), m = glb(x, y);
      if ((j == kNoElem || m == kNoElem) && !out.missing_bound) out.missing_bound = std::array{x, y};
      if ((j != l.join(x, y) || m != l.meet(x, y)) && tables_ok) {
        tables_ok = false;
        table_bad = std::array{x, y};
      }
    }
  out.is_lattice = n > 0 && !out.missing_bound;
  tables_ok ? d.pass("tables") : d.fail("tables", "join/meet table disagrees with bound search",
                                        {(*table_bad)[0], (*table_bad)[1]});
  if (out.is_lattice != l.is_lattice())
    d.fail("is_lattice_flag", "stored flag disagrees with recomputation");
  else
    d.pass("is_lattice_flag", out.is_lattice ? "lattice" : "not a lattice");

  if (!out.is_lattice) {
    d.skip("bounds", "not a lattice");
    d.skip("is_distributive_flag", "not a lattice");
    d.skip("irreducibles", "not a lattice");
    d.skip("ji_generate", "not a lattice");
    return out;
  }

  {
    bool ok = l.bottom() != kNoElem && l.top() != kNoElem;
    for (Elem x = 0; x < n && ok; ++x) ok = p.leq(l.bottom(), x) && p.leq(x, l.top());
    ok ? d.pass("bounds") : d.fail("bounds", "bottom <= x <= top fails");
  }
  out.distributivity_witness = find_distributivity_violation(l);
  out.is_distributive = !out.distributivity_witness;
  if (out.is_distributive != l.is_distributive())
    d.fail("is_distributive_flag", "stored flag disagrees with triple scan");
  else
    d.pass("is_distributive_flag", out.is_distributive ? "distributive" : "not distributive");

  {
    std::vector<Elem> ji, mi;
    for (Elem x = 0; x < n; ++x) {
      std::size_t below = 0, above = 0;
      for (Elem y = 0; y < n; ++y) {
        if (y == x) continue;
        // y is a lower cover of x when y < x with nothing strictly between.
        if (p.leq(y, x)) {
          bool cover = true;
          for (Elem z = 0; z < n && cover; ++z)
            if (z != x && z != y && p.leq(y, z) && p.leq(z, x)) cover = false;
          below += cover;
        }
        if (p.leq(x, y)) {
          bool cover = true;
          for (Elem z = 0; z < n && cover; ++z)
            if (z != x && z != y && p.leq(x, z) && p.leq(z, y)) cover = false;
          above += cover;
        }
      }
      if (below == 1) ji.push_back(x);
      if (above == 1) mi.push_back(x);
    }
    (ji == l.join_irreducibles() && mi == l.meet_irreducibles())
        ? d.pass("irreducibles")
        : d.fail("irreducibles", "stored join/meet-irreducibles differ from cover count");
  }
  {
    std::optional<Elem> bad;
    for (Elem x = 0; x < n && !bad; ++x) {
      Elem acc = l.bottom();
      for (Elem j : l.join_irreducibles())
        if (p.leq(j, x)) acc = l.join(acc, j);
      if (acc != x) bad = x;
    }
    bad ? d.fail("ji_generate", "x is not the join of the join-irreducibles below it", {*bad})
        : d.pass("ji_generate");
  }
  return out;
}

}  // namespace qlab

#endif  // QLAB_LATTICE_HPP
