#ifndef QLAB_POSET_HPP
#define QLAB_POSET_HPP

#include <algorithm>
#include <deque>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qlab/bits.hpp"
#include "qlab/error.hpp"

namespace qlab {

using Cover = std::pair<Elem, Elem>;  // (lower, upper)

/// Finite partial order on 0..n-1. Holds the order both ways (up-sets and
/// down-sets as bit rows) and its Hasse diagram.
class Poset {
 public:
  Poset() = default;

  /// Reflexive-transitive closure of the given cover pairs. The stored covers
  /// are the transitive reduction of that closure, sorted.
  static Poset from_covers(std::size_t n, std::span<const Cover> covers) {
    BitMatrix leq(n);
    for (std::size_t i = 0; i < n; ++i) leq.set(i, i);
    for (auto [lo, hi] : covers) {
      if (lo >= n || hi >= n)
        throw Error(Errc::index_out_of_range,
                    "cover (" + std::to_string(lo) + "," + std::to_string(hi) + ") outside 0.." +
                        std::to_string(n == 0 ? 0 : n - 1),
                    {lo, hi});
      if (lo == hi) throw Error(Errc::cycle_detected, "self-loop on " + std::to_string(lo), {lo, hi});
      leq.set(lo, hi);
    }
    // Warshall over bit rows: row i |= row k whenever i <= k.
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (leq.test(i, k)) leq.row(i) |= leq.row(k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (leq.test(i, j) && leq.test(j, i))
          throw Error(Errc::cycle_detected,
                      "elements " + std::to_string(i) + " and " + std::to_string(j) + " lie on a cycle",
                      {static_cast<Elem>(i), static_cast<Elem>(j)});
    return from_closed(std::move(leq));
  }

  /// Builds from an order table that is already reflexive, antisymmetric and
  /// transitive. Covers are derived.
  static Poset from_closed(BitMatrix leq) {
    const std::size_t n = leq.size();
    std::vector<Cover> covers;
    for (std::size_t x = 0; x < n; ++x) {
      Bitset strict = leq.row(x);
      strict.reset(x);
      Bitset implied(n);
      strict.for_each([&](Elem z) {
        Bitset above = leq.row(z);
        above.reset(z);
        implied |= above;
      });
      (strict - implied).for_each([&](Elem y) { covers.emplace_back(static_cast<Elem>(x), y); });
    }
    return Poset(std::move(leq), std::move(covers));
  }

  /// Trusted constructor for callers that already know both the order and its
  /// Hasse diagram (Birkhoff construction).
  static Poset from_order_and_covers(BitMatrix leq, std::vector<Cover> covers) {
    std::sort(covers.begin(), covers.end());
    return Poset(std::move(leq), std::move(covers));
  }

  std::size_t size() const noexcept { return leq_.size(); }
  bool leq(Elem x, Elem y) const noexcept { return leq_.test(x, y); }
  const Bitset& up(Elem x) const noexcept { return leq_.row(x); }
  const Bitset& down(Elem x) const noexcept { return geq_.row(x); }
  const BitMatrix& order() const noexcept { return leq_; }
  const std::vector<Cover>& covers() const noexcept { return covers_; }
  const std::vector<Elem>& lower_covers(Elem x) const noexcept { return lower_[x]; }
  const std::vector<Elem>& upper_covers(Elem x) const noexcept { return upper_[x]; }

  /// Fixed linear extension: Kahn's algorithm with a FIFO queue, seeded with
  /// the minimal elements in index order, releasing upper covers in index
  /// order. Bottom-first and breadth-first over the Hasse diagram.
  const std::vector<Elem>& linear_extension() const noexcept { return extension_; }
  std::size_t position(Elem x) const noexcept { return position_[x]; }

  /// True when index order is itself a linear extension.
  bool numbering_is_linear_extension() const noexcept { return index_is_extension_; }

  /// Relabels element x as perm[x].
  Poset relabeled(std::span<const Elem> perm) const {
    const std::size_t n = size();
    BitMatrix leq(n);
    for (std::size_t x = 0; x < n; ++x) leq_.row(x).for_each([&](Elem y) { leq.set(perm[x], perm[y]); });
    std::vector<Cover> covers;
    covers.reserve(covers_.size());
    for (auto [lo, hi] : covers_) covers.emplace_back(perm[lo], perm[hi]);
    return from_order_and_covers(std::move(leq), std::move(covers));
  }

  /// Permutation mapping each element to its position in the canonical
  /// linear extension.
  std::vector<Elem> canonical_permutation() const {
    std::vector<Elem> perm(size());
    for (std::size_t i = 0; i < extension_.size(); ++i) perm[extension_[i]] = static_cast<Elem>(i);
    return perm;
  }

  Poset canonical() const { return relabeled(canonical_permutation()); }

  /// Order-dual poset on the same indices.
  Poset dual() const {
    std::vector<Cover> covers;
    covers.reserve(covers_.size());
    for (auto [lo, hi] : covers_) covers.emplace_back(hi, lo);
    return from_order_and_covers(geq_, std::move(covers));
  }

  friend bool operator==(const Poset& a, const Poset& b) { return a.leq_ == b.leq_; }

 private:
  Poset(BitMatrix leq, std::vector<Cover> covers)
      : leq_(std::move(leq)), covers_(std::move(covers)) {
    const std::size_t n = leq_.size();
    geq_ = leq_.transposed();
    lower_.assign(n, {});
    upper_.assign(n, {});
    for (auto [lo, hi] : covers_) {
      upper_[lo].push_back(hi);
      lower_[hi].push_back(lo);
    }
    for (auto& v : lower_) std::sort(v.begin(), v.end());
    for (auto& v : upper_) std::sort(v.begin(), v.end());

    std::vector<std::size_t> pending(n);
    std::deque<Elem> queue;
    for (std::size_t x = 0; x < n; ++x) {
      pending[x] = lower_[x].size();
      if (pending[x] == 0) queue.push_back(static_cast<Elem>(x));
    }
    extension_.reserve(n);
    while (!queue.empty()) {
      Elem x = queue.front();
      queue.pop_front();
      extension_.push_back(x);
      for (Elem y : upper_[x])
        if (--pending[y] == 0) queue.push_back(y);
    }
    position_.assign(n, 0);
    for (std::size_t i = 0; i < extension_.size(); ++i) position_[extension_[i]] = i;
    index_is_extension_ = true;
    for (auto [lo, hi] : covers_)
      if (lo > hi) index_is_extension_ = false;
  }

  BitMatrix leq_;
  BitMatrix geq_;
  std::vector<Cover> covers_;
  std::vector<std::vector<Elem>> lower_;
  std::vector<std::vector<Elem>> upper_;
  std::vector<Elem> extension_;
  std::vector<std::size_t> position_;
  bool index_is_extension_ = true;
};

/// Poset generated by the given covers. Throws CycleDetected or
/// IndexOutOfRange.
inline Poset build_poset(std::size_t n, std::span<const Cover> covers) {
  return Poset::from_covers(n, covers);
}

inline Poset build_poset(std::size_t n, std::initializer_list<Cover> covers) {
  return Poset::from_covers(n, std::span<const Cover>(covers.begin(), covers.size()));
}

inline Poset antichain_poset(std::size_t k) { return Poset::from_covers(k, {}); }

}  // namespace qlab

#endif  // QLAB_POSET_HPP
