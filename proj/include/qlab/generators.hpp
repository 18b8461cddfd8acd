#ifndef QLAB_GENERATORS_HPP
#define QLAB_GENERATORS_HPP

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qlab/lattice.hpp"
#include "qlab/rng.hpp"

namespace qlab {

/// Lattice from covers, renumbered along the canonical linear extension.
inline LatticePtr canonical_lattice(std::size_t n, std::span<const Cover> covers, std::string name,
                                    const Limits& limits = {}) {
  return Lattice::from_poset(Poset::from_covers(n, covers).canonical(), std::move(name), limits);
}

inline LatticePtr chain(std::size_t n, const Limits& limits = {}) {
  if (n == 0) throw Error(Errc::invalid_argument, "chain needs n >= 1");
  std::vector<Cover> covers;
  for (std::size_t i = 0; i + 1 < n; ++i) covers.emplace_back(static_cast<Elem>(i), static_cast<Elem>(i + 1));
  return canonical_lattice(n, covers, "chain(" + std::to_string(n) + ")", limits);
}

/// Boolean lattice 2^k as the downsets of a k-antichain.
inline LatticePtr boolean(std::size_t k, const Limits& limits = {}) {
  return downset_lattice(antichain_poset(k), "boolean(" + std::to_string(k) + ")", limits);
}

/// Product order; the pair (a, b) starts as a * |l2| + b before renumbering.
inline LatticePtr product(const Lattice& l1, const Lattice& l2, const Limits& limits = {}) {
  const std::size_t n1 = l1.size(), n2 = l2.size();
  if (n1 * n2 > limits.max_lattice)
    throw Error(Errc::size_limit_exceeded, "product has " + std::to_string(n1 * n2) + " elements");
  std::vector<Cover> covers;
  for (auto [lo, hi] : l1.poset().covers())
    for (std::size_t b = 0; b < n2; ++b)
      covers.emplace_back(static_cast<Elem>(lo * n2 + b), static_cast<Elem>(hi * n2 + b));
  for (std::size_t a = 0; a < n1; ++a)
    for (auto [lo, hi] : l2.poset().covers())
      covers.emplace_back(static_cast<Elem>(a * n2 + lo), static_cast<Elem>(a * n2 + hi));
  return canonical_lattice(n1 * n2, covers, "product(" + l1.name() + "," + l2.name() + ")", limits);
}

/// 0 < a, b, c < 1.
inline LatticePtr diamond_m3() {
  const std::vector<Cover> covers{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}};
  return canonical_lattice(5, covers, "m3");
}

/// 0 < a < c < 1 and 0 < b < 1.
inline LatticePtr pentagon_n5() {
  const std::vector<Cover> covers{{0, 1}, {1, 3}, {3, 4}, {0, 2}, {2, 4}};
  return canonical_lattice(5, covers, "n5");
}

/// Random poset on `size` points (edge i < j kept with probability
/// edge_prob), then its downset lattice. Always distributive.
inline LatticePtr from_random_poset(std::size_t size, double edge_prob, std::uint64_t seed,
                                    const Limits& limits = {}) {
  Rng rng(seed);
  std::vector<Cover> edges;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i + 1; j < size; ++j)
      if (rng.bernoulli(edge_prob)) edges.emplace_back(static_cast<Elem>(i), static_cast<Elem>(j));
  std::ostringstream name;
  name << "random(" << size << "," << edge_prob << "," << seed << ")";
  return downset_lattice(Poset::from_covers(size, edges), name.str(), limits);
}

/// Every poset on n points whose index order is a linear extension, one per
/// distinct order table. Covers every isomorphism class at least once.
inline std::vector<Poset> naturally_labeled_posets(std::size_t n) {
  std::vector<Cover> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(static_cast<Elem>(i), static_cast<Elem>(j));
  std::set<std::vector<std::vector<Elem>>> seen;
  std::vector<Poset> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<Cover> chosen;
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask >> b & 1U) chosen.push_back(pairs[b]);
    Poset p = Poset::from_covers(n, chosen);
    std::vector<std::vector<Elem>> key;
    for (std::size_t x = 0; x < n; ++x) key.push_back(p.up(static_cast<Elem>(x)).members());
    if (seen.insert(key).second) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace qlab

#endif  // QLAB_GENERATORS_HPP
