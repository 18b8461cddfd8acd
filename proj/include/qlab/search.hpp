#ifndef QLAB_SEARCH_HPP
#define QLAB_SEARCH_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <variant>
#include <vector>

#include "qlab/monotone_map.hpp"

namespace qlab {

using MapFamily = std::vector<MonotoneMap>;
using ElemFamily = std::vector<Elem>;

/// One slot value of a law instance.
using Value = std::variant<MonotoneMap, MapFamily, Elem, ElemFamily>;

struct Witness {
  std::string name;
  Value value;
};

enum class SearchMode { exhaustive, sampled };

inline std::string_view to_string(SearchMode m) { return m == SearchMode::exhaustive ? "exhaustive" : "sampled"; }

struct SearchOptions {
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  Limits limits;
};

inline unsigned default_workers() { return std::max(1U, std::thread::hardware_concurrency()); }

/// Least i in [0, count) with pred(i), scanning with `workers` threads.
/// Chunks are claimed in increasing order and every chunk below the current
/// best is finished, so the answer does not depend on scheduling.
template <class Pred>
std::optional<std::uint64_t> find_first(std::uint64_t count, unsigned workers, Pred&& pred) {
  if (count == 0) return std::nullopt;
  workers = std::max(1U, workers);
  if (workers == 1 || count < 64) {
    for (std::uint64_t i = 0; i < count; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }
  const std::uint64_t chunk = std::max<std::uint64_t>(1, count / (std::uint64_t{workers} * 64));
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> best{count};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    try {
      while (true) {
        const std::uint64_t start = next.fetch_add(1) * chunk;
        if (start >= best.load()) return;
        const std::uint64_t stop = std::min(count, start + chunk);
        for (std::uint64_t i = start; i < stop && i < best.load(); ++i) {
          if (pred(i)) {
            std::uint64_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            break;
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mu);
      if (!error) error = std::current_exception();
      best.store(0);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  const std::uint64_t b = best.load();
  return b < count ? std::optional(b) : std::nullopt;
}

/// Mixed-radix decoding with the first slot most significant, so index order
/// is lexicographic order of the slot tuples.
inline std::vector<std::size_t> decode_index(std::uint64_t index, std::span<const std::size_t> radix) {
  std::vector<std::size_t> digits(radix.size());
  for (std::size_t k = radix.size(); k-- > 0;) {
    digits[k] = static_cast<std::size_t>(index % radix[k]);
    index /= radix[k];
  }
  return digits;
}

/// Product of the radices, or nullopt once it passes `cap`.
inline std::optional<std::uint64_t> tuple_count(std::span<const std::size_t> radix, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t r : radix) {
    if (r == 0) return 0;
    if (total > cap / r) return std::nullopt;
    total *= r;
  }
  return total <= cap ? std::optional(total) : std::nullopt;
}

}  // namespace qlab

#endif  // QLAB_SEARCH_HPP
