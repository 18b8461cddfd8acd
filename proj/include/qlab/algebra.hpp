#ifndef QLAB_ALGEBRA_HPP
#define QLAB_ALGEBRA_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "qlab/generators.hpp"
#include "qlab/monotone_map.hpp"
#include "qlab/search.hpp"

namespace qlab {

// ---- the adjoint pair k ⊣ k* ------------------------------------------------

/// k*(f)(s) = ⋀{f(a) : s ◁ a}, the largest g with ψ(g) <= f.
inline MonotoneMap kstar(const MonotoneMap& f, const WedgeRelation& w) {
  const Lattice& l = *f.cod();
  std::vector<Elem> img(f.size(), l.top());
  for (Elem a = 0; a < img.size(); ++a)
    for (Elem s : w.below_list(a)) img[s] = l.meet(img[s], f(a));
  return MonotoneMap::trusted(f.dom(), f.cod(), std::move(img));
}

/// k*(f) = ⋁{g ∈ L^L : ψ(g) <= f} as a join over the enumerated fiber.
inline MonotoneMap kstar_fiber(const MonotoneMap& f, std::span<const MonotoneMap> all,
                               std::span<const MonotoneMap> psi_of_all) {
  std::vector<Elem> img(f.size(), f.cod()->bottom());
  for (std::size_t i = 0; i < all.size(); ++i)
    if (psi_of_all[i].leq(f))
      for (Elem x = 0; x < img.size(); ++x) img[x] = f.cod()->join(img[x], all[i](x));
  return MonotoneMap::trusted(f.dom(), f.cod(), std::move(img));
}

/// Right adjoint of k at a sup-preserving f, by enumerating L^L.
inline MonotoneMap right_adjoint_kstar(const LatticeContext& ctx, const MonotoneMap& f,
                                       std::size_t cap = Limits{}.max_maps) {
  if (!is_sup_preserving(f)) throw Error(Errc::invalid_argument, "k* is defined on sup-preserving maps");
  const auto& w = ctx.cd_wedge();
  auto all = enumerate_monotone(ctx.lattice, cap);
  std::vector<MonotoneMap> psis;
  psis.reserve(all.size());
  for (const auto& g : all) psis.push_back(psi(g, w));
  return kstar_fiber(f, all, psis);
}

// ---- nuclei -------------------------------------------------------------------

struct Nucleus {
  std::string name;  // "k*k", "phi" or "id"
  std::function<MonotoneMap(const MonotoneMap&)> apply;
  MonotoneMap operator()(const MonotoneMap& f) const { return apply(f); }
};

/// j = k* ∘ k on (L^L, ·).
inline Nucleus nucleus_j(const ContextPtr& ctx) {
  const WedgeRelation& w = ctx->cd_wedge();
  return {"k*k", [ctx, &w](const MonotoneMap& f) { return kstar(psi(f, w), w); }};
}

/// j = φ on (L^L, •).
inline Nucleus nucleus_phi(const ContextPtr& ctx) {
  const WedgeRelation& co = ctx->cd_co_wedge();
  return {"phi", [ctx, &co](const MonotoneMap& f) { return phi(f, co); }};
}

inline Nucleus nucleus_identity() {
  return {"id", [](const MonotoneMap& f) { return f; }};
}

inline Nucleus make_nucleus(const ContextPtr& ctx, std::string_view name) {
  if (name == "k*k") return nucleus_j(ctx);
  if (name == "phi") return nucleus_phi(ctx);
  if (name == "id") return nucleus_identity();
  throw Error(Errc::invalid_argument, "unknown nucleus '" + std::string(name) + "'");
}

// ---- algebras of maps ---------------------------------------------------------

enum class Op { circ, dot, bullet };

inline std::string_view to_string(Op op) {
  switch (op) {
    case Op::circ: return "circ";
    case Op::dot: return "dot";
    case Op::bullet: return "bullet";
  }
  return "?";
}

inline Op parse_op(std::string_view s) {
  if (s == "circ") return Op::circ;
  if (s == "dot") return Op::dot;
  if (s == "bullet") return Op::bullet;
  throw Error(Errc::invalid_argument, "unknown operation '" + std::string(s) + "'");
}

/// A carrier of self-maps of L with a binary operation and its lattice
/// operations. mul(x, y) is x * y, i.e. x applied after y.
struct Algebra {
  std::string key;      // e.g. "L^L/dot", "S/circ", "L^L/bullet/j=phi"
  std::string carrier;  // domain key of the carrier
  Op op = Op::circ;
  std::optional<std::string> nucleus;
  std::function<MonotoneMap(const MonotoneMap&, const MonotoneMap&)> mul;
  std::function<MonotoneMap(const MapFamily&)> join;
  std::function<MonotoneMap(const MapFamily&)> meet;
  std::function<bool(const MonotoneMap&)> contains;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

namespace detail {

struct DomainKey {
  std::string kind;  // hom, S, M, SM, fix, elem, efam, fam
  std::string a, b;  // lattice aliases
  std::string nucleus;
  std::string inner;  // for fam
};

inline DomainKey parse_domain(const std::string& key) {
  DomainKey d;
  if (key.rfind("fam:", 0) == 0) {
    d.kind = "fam";
    d.inner = key.substr(4);
    return d;
  }
  const auto open = key.find('('), close = key.rfind(')');
  if (open == std::string::npos || close != key.size() - 1)
    throw Error(Errc::invalid_argument, "bad domain key '" + key + "'");
  std::string head = key.substr(0, open);
  std::string args = key.substr(open + 1, close - open - 1);
  if (head.rfind("fix[", 0) == 0 && head.back() == ']') {
    d.kind = "fix";
    d.nucleus = head.substr(4, head.size() - 5);
    d.a = args;
    return d;
  }
  d.kind = head;
  const auto comma = args.find(',');
  d.a = args.substr(0, comma);
  if (comma != std::string::npos) d.b = args.substr(comma + 1);
  return d;
}

}  // namespace detail

/// Everything a law needs about one audited lattice L and the fixed
/// heterogeneous zoo B2 = boolean(2), C3 = chain(3), C2 = chain(2): contexts,
/// cached enumerations, samplers and algebras. Lattices are addressed by
/// alias ("L", "B2", "C3", "C2") in law parameters and by name in witnesses.
/// Preparation is serialized by a mutex; the prepared objects are immutable
/// and shared by the search workers.
class Env {
 public:
  explicit Env(LatticePtr l, Limits limits = {}, std::uint64_t seed = 0) : limits_(limits), seed_(seed) {
    add("L", l);
    const std::pair<const char*, LatticePtr> zoo[] = {{"B2", boolean(2)}, {"C3", chain(3)}, {"C2", chain(2)}};
    for (auto& [alias, z] : zoo) {
      auto it = by_name_.find(z->name());
      add(alias, it == by_name_.end() || same_carrier(it->second, z) ? z : z->renamed("zoo." + z->name()));
    }
  }

  const Limits& limits() const noexcept { return limits_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const LatticePtr& audited() const { return context("L")->lattice; }

  const ContextPtr& context(const std::string& alias) const {
    auto it = contexts_.find(alias);
    if (it == contexts_.end()) throw Error(Errc::invalid_argument, "unknown lattice alias '" + alias + "'");
    return it->second;
  }
  const LatticePtr& lattice(const std::string& alias) const { return context(alias)->lattice; }

  /// Lattice by its own name (used when reading witnesses back).
  LatticePtr by_name(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw Error(Errc::invalid_argument, "no lattice named '" + name + "' in this run");
    return it->second;
  }

  const LatticePtr& dual_of(const std::string& alias) {
    std::lock_guard lock(mu_);
    auto& slot = duals_[alias];
    if (!slot) slot = dual(*lattice(alias));
    return slot;
  }

  /// Every monotone map in a class, in canonical order. Throws
  /// SizeLimitExceeded past limits().max_maps.
  const std::vector<MonotoneMap>& maps(const std::string& key) {
    std::lock_guard lock(mu_);
    return maps_locked(key);
  }

  /// Exhaustive slot values for a domain key.
  const std::vector<Value>& values(const std::string& key) {
    std::lock_guard lock(mu_);
    if (auto it = values_.find(key); it != values_.end()) return *it->second;
    auto out = std::make_shared<std::vector<Value>>();
    const auto d = detail::parse_domain(key);
    if (d.kind == "elem") {
      for (Elem x = 0; x < lattice(d.a)->size(); ++x) out->emplace_back(x);
    } else if (d.kind == "efam") {
      WedgeCheckOptions opt{limits_.exhaustive_family_carrier, limits_.random_families, seed_};
      for (auto& f : element_families(lattice(d.a)->size(), opt)) out->emplace_back(std::move(f));
    } else if (d.kind == "fam") {
      const auto& base = maps_locked(d.inner);
      for (const auto& idx : family_indices(base.size(), "families/" + d.inner)) {
        MapFamily fam;
        for (std::size_t i : idx) fam.push_back(base[i]);
        out->emplace_back(std::move(fam));
      }
    } else {
      for (const auto& f : maps_locked(key)) out->emplace_back(f);
    }
    return *values_.emplace(key, std::move(out)).first->second;
  }

  /// Sampled slot values. An empty optional means the domain is empty.
  using Sampler = std::function<std::optional<Value>(Rng&)>;
  Sampler sampler(const std::string& key) {
    std::lock_guard lock(mu_);
    return sampler_locked(key);
  }

  /// Index sets of the families of an m-element carrier: all subsets when
  /// m <= exhaustive_family_carrier, otherwise ∅, singletons, pairs and
  /// random_families seeded subsets.
  std::vector<std::vector<std::size_t>> family_indices(std::size_t m, const std::string& label) const {
    std::vector<std::vector<std::size_t>> out;
    if (m <= limits_.exhaustive_family_carrier) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<std::size_t> f;
        for (std::size_t i = 0; i < m; ++i)
          if (mask >> i & 1U) f.push_back(i);
        out.push_back(std::move(f));
      }
      return out;
    }
    out.emplace_back();
    for (std::size_t i = 0; i < m; ++i) out.push_back({i});
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) out.push_back({i, j});
    Rng rng(derive_seed(seed_, label));
    for (std::size_t r = 0; r < limits_.random_families; ++r) {
      std::vector<std::size_t> f;
      for (std::size_t i = 0; i < m; ++i)
        if (rng.bernoulli(0.5)) f.push_back(i);
      out.push_back(std::move(f));
    }
    return out;
  }

  /// Algebra by key: "<carrier>/<op>[/j=<nucleus>]" with carrier L^L, S or M
  /// over the audited lattice.
  AlgebraPtr algebra(const std::string& key) {
    std::lock_guard lock(mu_);
    if (auto it = algebras_.find(key); it != algebras_.end()) return it->second;
    auto a = build_algebra(key);
    algebras_.emplace(key, a);
    return a;
  }

  Nucleus nucleus(const std::string& name) { return make_nucleus(context("L"), name); }

 private:
  void add(const std::string& alias, LatticePtr l) {
    by_name_.emplace(l->name(), l);
    contexts_.emplace(alias, LatticeContext::make(l, limits_));
  }

  std::function<bool(const MonotoneMap&)> class_test(const detail::DomainKey& d) {
    if (d.kind == "hom") return [](const MonotoneMap&) { return true; };
    if (d.kind == "S") return [](const MonotoneMap& f) { return is_sup_preserving(f); };
    if (d.kind == "M") return [](const MonotoneMap& f) { return is_meet_preserving(f); };
    if (d.kind == "SM") return [](const MonotoneMap& f) { return is_sup_preserving(f) && is_meet_preserving(f); };
    if (d.kind == "fix") {
      auto j = make_nucleus(context(d.a), d.nucleus);
      return [j](const MonotoneMap& f) { return j(f) == f; };
    }
    throw Error(Errc::invalid_argument, "domain '" + d.kind + "' is not a class of maps");
  }

  const std::vector<MonotoneMap>& maps_locked(const std::string& key) {
    if (auto it = maps_.find(key); it != maps_.end()) return *it->second;
    const auto d = detail::parse_domain(key);
    auto out = std::make_shared<std::vector<MonotoneMap>>();
    if (d.kind == "hom") {
      *out = enumerate_monotone(lattice(d.a), lattice(d.b), limits_.max_maps);
    } else {
      const auto& all = maps_locked(d.kind == "fix" ? "hom(" + d.a + "," + d.a + ")" : "hom(" + d.a + "," + d.b + ")");
      auto test = class_test(d);
      for (const auto& f : all)
        if (test(f)) out->push_back(f);
    }
    return *maps_.emplace(key, std::move(out)).first->second;
  }

  /// Uniform over the class when hom(A,B) enumerates cheaply, otherwise a
  /// structural draw: sample_monotone, then ψ / φ / the nucleus, or rejection
  /// when the source lattice is not distributive.
  Sampler sampler_locked(const std::string& key) {
    if (auto it = samplers_.find(key); it != samplers_.end()) return it->second;
    const auto d = detail::parse_domain(key);
    Sampler s;
    if (d.kind == "elem") {
      const std::size_t n = lattice(d.a)->size();
      s = [n](Rng& rng) -> std::optional<Value> { return Value(static_cast<Elem>(rng.below(n))); };
    } else if (d.kind == "efam") {
      const std::size_t n = lattice(d.a)->size();
      s = [n](Rng& rng) -> std::optional<Value> {
        ElemFamily f;
        for (Elem x = 0; x < n; ++x)
          if (rng.bernoulli(0.5)) f.push_back(x);
        return Value(std::move(f));
      };
    } else if (d.kind == "fam") {
      Sampler inner = sampler_locked(d.inner);
      s = [inner](Rng& rng) -> std::optional<Value> {
        MapFamily fam;
        const auto size = rng.below(5);
        for (std::uint64_t i = 0; i < size; ++i) {
          auto v = inner(rng);
          if (!v) break;
          fam.push_back(std::get<MonotoneMap>(*v));
        }
        return Value(std::move(fam));
      };
    } else {
      s = class_sampler(d, key);
    }
    samplers_.emplace(key, s);
    return s;
  }

  Sampler class_sampler(const detail::DomainKey& d, const std::string& key) {
    const std::string a = d.a, b = d.kind == "fix" ? d.a : d.b;
    const std::size_t cheap = std::min<std::size_t>(limits_.max_maps, 200'000);
    std::shared_ptr<const std::vector<MonotoneMap>> pool;
    try {
      auto all = enumerate_monotone(lattice(a), lattice(b), cheap);
      auto test = class_test(d);
      auto kept = std::make_shared<std::vector<MonotoneMap>>();
      for (auto& f : all)
        if (test(f)) kept->push_back(std::move(f));
      pool = std::move(kept);
    } catch (const Error& e) {
      if (e.code() != Errc::size_limit_exceeded) throw;
    }
    if (pool) {
      return [pool](Rng& rng) -> std::optional<Value> {
        if (pool->empty()) return std::nullopt;
        return Value((*pool)[rng.below(pool->size())]);
      };
    }
    const LatticePtr la = lattice(a), lb = lattice(b);
    const ContextPtr ca = context(a);
    auto raw = [la, lb](Rng& rng) { return sample_monotone(la, lb, rng); };
    if (d.kind == "hom") return [raw](Rng& rng) -> std::optional<Value> { return Value(raw(rng)); };
    if (d.kind == "fix") {
      auto j = make_nucleus(ca, d.nucleus);
      return [raw, j](Rng& rng) -> std::optional<Value> { return Value(j(raw(rng))); };
    }
    if (ca->distributive() && d.kind == "S")
      return [raw, ca](Rng& rng) -> std::optional<Value> { return Value(psi(raw(rng), ca->cd_wedge())); };
    if (ca->distributive() && d.kind == "M")
      return [raw, ca](Rng& rng) -> std::optional<Value> { return Value(phi(raw(rng), ca->cd_co_wedge())); };
    auto test = class_test(d);
    const bool via_psi = ca->distributive();
    return [raw, test, ca, via_psi, key](Rng& rng) -> std::optional<Value> {
      for (int tries = 0; tries < 256; ++tries) {
        auto f = raw(rng);
        if (via_psi) f = psi(f, ca->cd_wedge());
        if (test(f)) return Value(std::move(f));
      }
      throw Error(Errc::size_limit_exceeded, "no member of " + key + " found in 256 draws");
    };
  }

  AlgebraPtr build_algebra(const std::string& key) {
    const ContextPtr ctx = context("L");
    const LatticePtr l = ctx->lattice;
    auto a = std::make_shared<Algebra>();
    a->key = key;
    std::vector<std::string> parts;
    {
      std::size_t start = 0, pos;
      while ((pos = key.find('/', start)) != std::string::npos) {
        parts.push_back(key.substr(start, pos - start));
        start = pos + 1;
      }
      parts.push_back(key.substr(start));
    }
    if (parts.size() < 2 || parts.size() > 3) throw Error(Errc::invalid_argument, "bad algebra key '" + key + "'");
    const std::string& carrier = parts[0];
    a->op = parse_op(parts[1]);
    auto pjoin = [l](const MapFamily& fam) { return pointwise_join(l, l, fam); };
    auto pmeet = [l](const MapFamily& fam) { return pointwise_meet(l, l, fam); };

    std::function<MonotoneMap(const MonotoneMap&, const MonotoneMap&)> mul;
    switch (a->op) {
      case Op::circ: mul = [](const MonotoneMap& x, const MonotoneMap& y) { return compose_usual(x, y); }; break;
      case Op::dot: {
        const WedgeRelation& w = ctx->cd_wedge();
        mul = [ctx, &w](const MonotoneMap& x, const MonotoneMap& y) { return compose_dot(x, y, w); };
        break;
      }
      case Op::bullet: {
        const WedgeRelation& co = ctx->cd_co_wedge();
        mul = [ctx, &co](const MonotoneMap& x, const MonotoneMap& y) { return compose_bullet(x, y, co); };
        break;
      }
    }

    if (carrier == "L^L") {
      a->carrier = "hom(L,L)";
      a->join = pjoin;
      a->meet = pmeet;
      a->contains = [](const MonotoneMap&) { return true; };
    } else if (carrier == "S") {
      a->carrier = "S(L,L)";
      a->join = pjoin;
      a->meet = [ctx, pmeet](const MapFamily& fam) { return psi(pmeet(fam), ctx->cd_wedge()); };
      a->contains = [](const MonotoneMap& f) { return is_sup_preserving(f); };
    } else if (carrier == "M") {
      a->carrier = "M(L,L)";
      a->join = [ctx, pjoin](const MapFamily& fam) { return phi(pjoin(fam), ctx->cd_co_wedge()); };
      a->meet = pmeet;
      a->contains = [](const MonotoneMap& f) { return is_meet_preserving(f); };
    } else {
      throw Error(Errc::invalid_argument, "unknown carrier '" + carrier + "'");
    }

    if (parts.size() == 3) {
      if (carrier != "L^L" || parts[2].rfind("j=", 0) != 0)
        throw Error(Errc::invalid_argument, "bad quotient key '" + key + "'");
      const Nucleus j = make_nucleus(ctx, parts[2].substr(2));
      a->nucleus = j.name;
      a->carrier = j.name == "id" ? "hom(L,L)" : "fix[" + j.name + "](L)";
      a->mul = [j, mul](const MonotoneMap& x, const MonotoneMap& y) { return j(mul(x, y)); };
      a->join = [j, pjoin](const MapFamily& fam) { return j(pjoin(fam)); };
      a->meet = pmeet;
      a->contains = [j](const MonotoneMap& f) { return j(f) == f; };
    } else {
      a->mul = std::move(mul);
    }
    return a;
  }

  Limits limits_;
  std::uint64_t seed_;
  std::map<std::string, ContextPtr> contexts_;
  std::map<std::string, LatticePtr> by_name_;
  std::map<std::string, LatticePtr> duals_;
  std::map<std::string, std::shared_ptr<const std::vector<MonotoneMap>>> maps_;
  std::map<std::string, std::shared_ptr<const std::vector<Value>>> values_;
  std::map<std::string, Sampler> samplers_;
  std::map<std::string, AlgebraPtr> algebras_;
  std::recursive_mutex mu_;
};

}  // namespace qlab

#endif  // QLAB_ALGEBRA_HPP
