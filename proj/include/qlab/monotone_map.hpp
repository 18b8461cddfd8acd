#ifndef QLAB_MONOTONE_MAP_HPP
#define QLAB_MONOTONE_MAP_HPP

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qlab/lattice.hpp"
#include "qlab/rng.hpp"
#include "qlab/wedge.hpp"

namespace qlab {

/// Order-preserving map dom -> cod, stored as its image table.
class MonotoneMap {
 public:
  MonotoneMap() = default;

  /// Validated construction. Throws NotMonotone with the first pair x <= y
  /// (in index order) whose images are not ordered.
  static MonotoneMap make(LatticePtr dom, LatticePtr cod, std::vector<Elem> image) {
    if (image.size() != dom->size())
      throw Error(Errc::invalid_argument, "image has " + std::to_string(image.size()) + " entries, domain has " +
                                              std::to_string(dom->size()));
    for (Elem v : image)
      if (v >= cod->size()) throw Error(Errc::index_out_of_range, "image value " + std::to_string(v), {v});
    if (auto bad = first_order_violation(*dom, *cod, image))
      throw Error(Errc::not_monotone,
                  "x=" + std::to_string(bad->first) + " <= y=" + std::to_string(bad->second) +
                      " but images are not ordered",
                  {bad->first, bad->second});
    return MonotoneMap(std::move(dom), std::move(cod), std::move(image));
  }

  /// For images that are monotone by construction.
  static MonotoneMap trusted(LatticePtr dom, LatticePtr cod, std::vector<Elem> image) {
    return MonotoneMap(std::move(dom), std::move(cod), std::move(image));
  }

  static std::optional<std::pair<Elem, Elem>> first_order_violation(const Lattice& dom, const Lattice& cod,
                                                                    std::span<const Elem> image) {
    for (Elem x = 0; x < dom.size(); ++x) {
      std::optional<Elem> bad;
      dom.up(x).for_each([&](Elem y) {
        if (!bad && !cod.leq(image[x], image[y])) bad = y;
      });
      if (bad) return std::pair{x, *bad};
    }
    return std::nullopt;
  }

  Elem operator()(Elem x) const noexcept { return image_[x]; }
  const std::vector<Elem>& image() const noexcept { return image_; }
  const LatticePtr& dom() const noexcept { return dom_; }
  const LatticePtr& cod() const noexcept { return cod_; }
  std::size_t size() const noexcept { return image_.size(); }

  /// Pointwise order. Both maps must share carriers.
  bool leq(const MonotoneMap& o) const noexcept {
    for (std::size_t x = 0; x < image_.size(); ++x)
      if (!cod_->leq(image_[x], o.image_[x])) return false;
    return true;
  }

  friend bool operator==(const MonotoneMap& a, const MonotoneMap& b) {
    return a.image_ == b.image_ && same_carrier(a.dom_, b.dom_) && same_carrier(a.cod_, b.cod_);
  }

  /// Canonical map order: lexicographic on the image read along the domain's
  /// linear extension.
  friend std::strong_ordering canonical_compare(const MonotoneMap& a, const MonotoneMap& b) {
    for (Elem x : a.dom_->linear_extension())
      if (auto c = a.image_[x] <=> b.image_[x]; c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  MonotoneMap(LatticePtr dom, LatticePtr cod, std::vector<Elem> image)
      : dom_(std::move(dom)), cod_(std::move(cod)), image_(std::move(image)) {}

  LatticePtr dom_;
  LatticePtr cod_;
  std::vector<Elem> image_;
};

inline MonotoneMap make_map(LatticePtr dom, LatticePtr cod, std::vector<Elem> image) {
  return MonotoneMap::make(std::move(dom), std::move(cod), std::move(image));
}

/// Self-map shorthand.
inline MonotoneMap make_map(const LatticePtr& l, std::vector<Elem> image) {
  return MonotoneMap::make(l, l, std::move(image));
}

struct MapClass {
  bool sup_preserving = false;
  bool meet_preserving = false;
  friend bool operator==(const MapClass&, const MapClass&) = default;
};

/// On a finite lattice preserving the empty join plus all binary joins is
/// preserving every join (induction on family size); likewise for meets.
inline bool is_sup_preserving(const MonotoneMap& f) {
  const Lattice& a = *f.dom();
  const Lattice& b = *f.cod();
  if (f(a.bottom()) != b.bottom()) return false;
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = x + 1; y < a.size(); ++y)
      if (f(a.join(x, y)) != b.join(f(x), f(y))) return false;
  return true;
}

inline bool is_meet_preserving(const MonotoneMap& f) {
  const Lattice& a = *f.dom();
  const Lattice& b = *f.cod();
  if (f(a.top()) != b.top()) return false;
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = x + 1; y < a.size(); ++y)
      if (f(a.meet(x, y)) != b.meet(f(x), f(y))) return false;
  return true;
}

inline MapClass classify(const MonotoneMap& f) { return {is_sup_preserving(f), is_meet_preserving(f)}; }

enum class CanonicalKind {
  id,         // identity
  bot_const,  // every point to 0
  top_const,  // every point to 1
  top_S,      // 0 to 0, everything else to 1; top of the sup-preserving maps
  bot_M,      // 1 to 1, everything else to 0; bottom of the meet-preserving maps
  f_a,        // 0 to 0, everything else to a
};

/// Distinguished self-maps of l. `a` is only read for f_a.
inline MonotoneMap canonical(const LatticePtr& l, CanonicalKind kind, Elem a = 0) {
  const std::size_t n = l->size();
  std::vector<Elem> img(n);
  for (Elem x = 0; x < n; ++x) {
    switch (kind) {
      case CanonicalKind::id: img[x] = x; break;
      case CanonicalKind::bot_const: img[x] = l->bottom(); break;
      case CanonicalKind::top_const: img[x] = l->top(); break;
      case CanonicalKind::top_S: img[x] = x == l->bottom() ? l->bottom() : l->top(); break;
      case CanonicalKind::bot_M: img[x] = x == l->top() ? l->top() : l->bottom(); break;
      case CanonicalKind::f_a:
        if (a >= n) throw Error(Errc::index_out_of_range, "f_a parameter " + std::to_string(a), {a});
        img[x] = x == l->bottom() ? l->bottom() : a;
        break;
    }
  }
  return MonotoneMap::trusted(l, l, std::move(img));
}

/// Constant maps between different lattices.
inline MonotoneMap constant_map(const LatticePtr& dom, const LatticePtr& cod, Elem value) {
  return MonotoneMap::trusted(dom, cod, std::vector<Elem>(dom->size(), value));
}

namespace detail {
inline void require_carriers(const MonotoneMap& f, const LatticePtr& dom, const LatticePtr& cod) {
  if (!same_carrier(f.dom(), dom) || !same_carrier(f.cod(), cod))
    throw Error(Errc::mixed_carriers, "family members live on different lattices");
}
inline void require_middle(const MonotoneMap& g, const MonotoneMap& f) {
  if (!same_carrier(f.cod(), g.dom()))
    throw Error(Errc::mixed_carriers, "codomain of f (" + f.cod()->name() + ") is not the domain of g (" +
                                          g.dom()->name() + ")");
}
inline void require_relation(const WedgeRelation& w, const LatticePtr& l, WedgeKind kind) {
  if (w.kind() != kind) throw Error(Errc::invalid_argument, "wrong wedge relation kind");
  if (!same_carrier(w.lattice(), l)) throw Error(Errc::mixed_carriers, "wedge relation is for another lattice");
}
}  // namespace detail

/// Pointwise join; the empty family gives the constant-bottom map.
inline MonotoneMap pointwise_join(const LatticePtr& dom, const LatticePtr& cod, std::span<const MonotoneMap> family) {
  std::vector<Elem> img(dom->size(), cod->bottom());
  for (const auto& f : family) {
    detail::require_carriers(f, dom, cod);
    for (Elem x = 0; x < img.size(); ++x) img[x] = cod->join(img[x], f(x));
  }
  return MonotoneMap::trusted(dom, cod, std::move(img));
}

/// Pointwise meet; the empty family gives the constant-top map.
inline MonotoneMap pointwise_meet(const LatticePtr& dom, const LatticePtr& cod, std::span<const MonotoneMap> family) {
  std::vector<Elem> img(dom->size(), cod->top());
  for (const auto& f : family) {
    detail::require_carriers(f, dom, cod);
    for (Elem x = 0; x < img.size(); ++x) img[x] = cod->meet(img[x], f(x));
  }
  return MonotoneMap::trusted(dom, cod, std::move(img));
}

inline MonotoneMap join2(const MonotoneMap& f, const MonotoneMap& g) {
  const MonotoneMap fam[] = {f, g};
  return pointwise_join(f.dom(), f.cod(), fam);
}
inline MonotoneMap meet2(const MonotoneMap& f, const MonotoneMap& g) {
  const MonotoneMap fam[] = {f, g};
  return pointwise_meet(f.dom(), f.cod(), fam);
}

/// (g ∘ f)(a) = g(f(a)).
inline MonotoneMap compose_usual(const MonotoneMap& g, const MonotoneMap& f) {
  detail::require_middle(g, f);
  std::vector<Elem> img(f.size());
  for (Elem a = 0; a < img.size(); ++a) img[a] = g(f(a));
  return MonotoneMap::trusted(f.dom(), g.cod(), std::move(img));
}

/// (g · f)(a) = ⋁{g(b) : b ◁ f(a)}, the one-variable form valid when the
/// codomain is completely distributive. `mid` is ◁ on cod(f) = dom(g).
inline MonotoneMap compose_dot(const MonotoneMap& g, const MonotoneMap& f, const WedgeRelation& mid) {
  detail::require_middle(g, f);
  detail::require_relation(mid, f.cod(), WedgeKind::wedge);
  const Lattice& c = *g.cod();
  std::vector<Elem> img(f.size());
  for (Elem a = 0; a < img.size(); ++a) {
    Elem acc = c.bottom();
    for (Elem b : mid.below_list(f(a))) acc = c.join(acc, g(b));
    img[a] = acc;
  }
  return MonotoneMap::trusted(f.dom(), g.cod(), std::move(img));
}

/// (g • f)(a) = ⋀{g(b) : b ◁co f(a)}. `mid` is ◁co on cod(f) = dom(g).
inline MonotoneMap compose_bullet(const MonotoneMap& g, const MonotoneMap& f, const WedgeRelation& mid) {
  detail::require_middle(g, f);
  detail::require_relation(mid, f.cod(), WedgeKind::co_wedge);
  const Lattice& c = *g.cod();
  std::vector<Elem> img(f.size());
  for (Elem a = 0; a < img.size(); ++a) {
    Elem acc = c.top();
    for (Elem b : mid.below_list(f(a))) acc = c.meet(acc, g(b));
    img[a] = acc;
  }
  return MonotoneMap::trusted(f.dom(), g.cod(), std::move(img));
}

/// Defining two-variable form: (g · f)(a) = ⋁{c : ∃b, b ◁ f(a), c ◁ g(b)}.
/// Needs ◁ on the middle lattice and on cod(g). Kept as a cross-check of the
/// one-variable fold. The result is not validated as monotone.
inline MonotoneMap compose_dot_two_variable(const MonotoneMap& g, const MonotoneMap& f, const WedgeRelation& mid,
                                            const WedgeRelation& outer) {
  detail::require_middle(g, f);
  detail::require_relation(mid, f.cod(), WedgeKind::wedge);
  detail::require_relation(outer, g.cod(), WedgeKind::wedge);
  const Lattice& c = *g.cod();
  std::vector<Elem> img(f.size());
  for (Elem a = 0; a < img.size(); ++a) {
    Elem acc = c.bottom();
    for (Elem b : mid.below_list(f(a)))
      for (Elem z : outer.below_list(g(b))) acc = c.join(acc, z);
    img[a] = acc;
  }
  return MonotoneMap::trusted(f.dom(), g.cod(), std::move(img));
}

/// (g • f)(a) = ⋀{c : ∃b, b ◁co f(a), c ◁co g(b)}.
inline MonotoneMap compose_bullet_two_variable(const MonotoneMap& g, const MonotoneMap& f, const WedgeRelation& mid,
                                               const WedgeRelation& outer) {
  detail::require_middle(g, f);
  detail::require_relation(mid, f.cod(), WedgeKind::co_wedge);
  detail::require_relation(outer, g.cod(), WedgeKind::co_wedge);
  const Lattice& c = *g.cod();
  std::vector<Elem> img(f.size());
  for (Elem a = 0; a < img.size(); ++a) {
    Elem acc = c.top();
    for (Elem b : mid.below_list(f(a)))
      for (Elem z : outer.below_list(g(b))) acc = c.meet(acc, z);
    img[a] = acc;
  }
  return MonotoneMap::trusted(f.dom(), g.cod(), std::move(img));
}

/// ψ(f)(a) = ⋁{f(s) : s ◁ a}: the largest sup-preserving map below f.
/// `dom_wedge` is ◁ on dom(f).
inline MonotoneMap psi(const MonotoneMap& f, const WedgeRelation& dom_wedge) {
  detail::require_relation(dom_wedge, f.dom(), WedgeKind::wedge);
  const Lattice& b = *f.cod();
  std::vector<Elem> img(f.size());
  for (Elem a = 0; a < img.size(); ++a) {
    Elem acc = b.bottom();
    for (Elem s : dom_wedge.below_list(a)) acc = b.join(acc, f(s));
    img[a] = acc;
  }
  return MonotoneMap::trusted(f.dom(), f.cod(), std::move(img));
}

/// ψ(f)(a) = ⋁{b : s ◁ a, b ◁ f(s)}.
inline MonotoneMap psi_two_variable(const MonotoneMap& f, const WedgeRelation& dom_wedge,
                                    const WedgeRelation& cod_wedge) {
  detail::require_relation(dom_wedge, f.dom(), WedgeKind::wedge);
  detail::require_relation(cod_wedge, f.cod(), WedgeKind::wedge);
  const Lattice& b = *f.cod();
  std::vector<Elem> img(f.size());
  for (Elem a = 0; a < img.size(); ++a) {
    Elem acc = b.bottom();
    for (Elem s : dom_wedge.below_list(a))
      for (Elem z : cod_wedge.below_list(f(s))) acc = b.join(acc, z);
    img[a] = acc;
  }
  return MonotoneMap::trusted(f.dom(), f.cod(), std::move(img));
}

/// φ(f)(a) = ⋀{f(s) : s ◁co a}: the smallest meet-preserving map above f.
inline MonotoneMap phi(const MonotoneMap& f, const WedgeRelation& dom_co_wedge) {
  detail::require_relation(dom_co_wedge, f.dom(), WedgeKind::co_wedge);
  const Lattice& b = *f.cod();
  std::vector<Elem> img(f.size());
  for (Elem a = 0; a < img.size(); ++a) {
    Elem acc = b.top();
    for (Elem s : dom_co_wedge.below_list(a)) acc = b.meet(acc, f(s));
    img[a] = acc;
  }
  return MonotoneMap::trusted(f.dom(), f.cod(), std::move(img));
}

inline MonotoneMap phi_two_variable(const MonotoneMap& f, const WedgeRelation& dom_co_wedge,
                                    const WedgeRelation& cod_co_wedge) {
  detail::require_relation(dom_co_wedge, f.dom(), WedgeKind::co_wedge);
  detail::require_relation(cod_co_wedge, f.cod(), WedgeKind::co_wedge);
  const Lattice& b = *f.cod();
  std::vector<Elem> img(f.size());
  for (Elem a = 0; a < img.size(); ++a) {
    Elem acc = b.top();
    for (Elem s : dom_co_wedge.below_list(a))
      for (Elem z : cod_co_wedge.below_list(f(s))) acc = b.meet(acc, z);
    img[a] = acc;
  }
  return MonotoneMap::trusted(f.dom(), f.cod(), std::move(img));
}

/// Visits every monotone map dom -> cod once, in canonical map order, by
/// sweeping dom's linear extension and choosing each image in increasing
/// index among the elements above the join of the images of the lower covers.
/// Returns the count. Throws SizeLimitExceeded once more than `cap` maps are
/// found (the message carries that lower bound).
template <class Visit>
std::size_t for_each_monotone(const LatticePtr& dom, const LatticePtr& cod, std::size_t cap, Visit&& visit) {
  const auto& ext = dom->linear_extension();
  const std::size_t n = dom->size();
  std::vector<Elem> img(n, 0);
  std::size_t count = 0;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      if (++count > cap)
        throw Error(Errc::size_limit_exceeded, "at least " + std::to_string(count) + " monotone maps " +
                                                   dom->name() + " -> " + cod->name() + ", cap is " +
                                                   std::to_string(cap));
      visit(MonotoneMap::trusted(dom, cod, img));
      return;
    }
    const Elem x = ext[i];
    Elem floor = cod->bottom();
    for (Elem c : dom->poset().lower_covers(x)) floor = cod->join(floor, img[c]);
    cod->up(floor).for_each([&](Elem v) {
      img[x] = v;
      self(self, i + 1);
    });
  };
  rec(rec, 0);
  return count;
}

inline std::vector<MonotoneMap> enumerate_monotone(const LatticePtr& dom, const LatticePtr& cod,
                                                   std::size_t cap = Limits{}.max_maps) {
  std::vector<MonotoneMap> out;
  for_each_monotone(dom, cod, cap, [&](MonotoneMap m) { out.push_back(std::move(m)); });
  return out;
}

inline std::vector<MonotoneMap> enumerate_monotone(const LatticePtr& l, std::size_t cap = Limits{}.max_maps) {
  return enumerate_monotone(l, l, cap);
}

/// A monotone map drawn by sweeping dom's linear extension and picking each
/// image uniformly among the elements above the join of the images of the
/// lower covers. Always monotone; not uniform over maps.
inline MonotoneMap sample_monotone(const LatticePtr& dom, const LatticePtr& cod, Rng& rng) {
  std::vector<Elem> img(dom->size(), 0);
  for (Elem x : dom->linear_extension()) {
    Elem floor = cod->bottom();
    for (Elem c : dom->poset().lower_covers(x)) floor = cod->join(floor, img[c]);
    const Bitset& choices = cod->up(floor);
    auto k = rng.below(choices.count());
    std::size_t v = choices.find_first();
    while (k-- > 0) v = choices.find_next(v);
    img[x] = static_cast<Elem>(v);
  }
  return MonotoneMap::trusted(dom, cod, std::move(img));
}

inline MonotoneMap sample_monotone(const LatticePtr& l, std::uint64_t seed) {
  Rng rng(seed);
  return sample_monotone(l, l, rng);
}

}  // namespace qlab

#endif  // QLAB_MONOTONE_MAP_HPP
