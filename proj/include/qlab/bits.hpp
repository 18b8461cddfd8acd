#ifndef QLAB_BITS_HPP
#define QLAB_BITS_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace qlab {

/// Lattice elements are dense indices 0..n-1.
using Elem = std::uint32_t;
inline constexpr Elem kNoElem = ~Elem{0};

/// Fixed-size dynamic bitset. Word layout is little-endian by index so that
/// `find_first` returns the smallest member.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  static Bitset full(std::size_t n) {
    Bitset b(n);
    for (std::size_t i = 0; i < n; ++i) b.set(i);
    return b;
  }

  std::size_t size() const noexcept { return n_; }

  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool any() const noexcept {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }
  bool none() const noexcept { return !any(); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  Bitset& operator&=(const Bitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  /// Set difference.
  Bitset& operator-=(const Bitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) noexcept { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) noexcept { return a |= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) noexcept { return a -= b; }

  bool is_subset_of(const Bitset& o) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  /// Smallest member, or size() when empty.
  std::size_t find_first() const noexcept { return scan_from(0); }
  std::size_t find_next(std::size_t i) const noexcept { return scan_from(i + 1); }

  /// Largest member, or size() when empty.
  std::size_t find_last() const noexcept {
    for (std::size_t w = words_.size(); w-- > 0;)
      if (words_[w]) return w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(words_[w]));
    return n_;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(static_cast<Elem>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
        bits &= bits - 1;
      }
    }
  }

  std::vector<Elem> members() const {
    std::vector<Elem> out;
    for_each([&](Elem e) { out.push_back(e); });
    return out;
  }

  friend bool operator==(const Bitset&, const Bitset&) = default;
  friend auto operator<=>(const Bitset& a, const Bitset& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

 private:
  std::size_t scan_from(std::size_t i) const noexcept {
    if (i >= n_) return n_;
    std::size_t w = i >> 6;
    std::uint64_t bits = words_[w] & (~std::uint64_t{0} << (i & 63));
    while (true) {
      if (bits) return w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      if (++w == words_.size()) return n_;
      bits = words_[w];
    }
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Square boolean relation stored row-wise; row(x) is the set {y : rel(x, y)}.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : rows_(n, Bitset(n)) {}

  std::size_t size() const noexcept { return rows_.size(); }
  bool test(std::size_t r, std::size_t c) const noexcept { return rows_[r].test(c); }
  void set(std::size_t r, std::size_t c) noexcept { rows_[r].set(c); }
  void reset(std::size_t r, std::size_t c) noexcept { rows_[r].reset(c); }
  const Bitset& row(std::size_t r) const noexcept { return rows_[r]; }
  Bitset& row(std::size_t r) noexcept { return rows_[r]; }

  BitMatrix transposed() const {
    BitMatrix t(size());
    for (std::size_t r = 0; r < size(); ++r) rows_[r].for_each([&](Elem c) { t.set(c, r); });
    return t;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (const auto& r : rows_) c += r.count();
    return c;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::vector<Bitset> rows_;
};

}  // namespace qlab

#endif  // QLAB_BITS_HPP
