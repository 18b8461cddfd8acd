#ifndef QLAB_DIAGNOSTICS_HPP
#define QLAB_DIAGNOSTICS_HPP

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "qlab/bits.hpp"

namespace qlab {

enum class CheckStatus { pass, fail, skipped };

inline std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

struct Check {
  std::string item;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
  std::vector<Elem> witness;
};

/// Ordered list of named checks. A failing check carries the first witness
/// found in scan order.
struct Diagnostics {
  std::vector<Check> checks;

  void pass(std::string item, std::string detail = {}) {
    checks.push_back({std::move(item), CheckStatus::pass, std::move(detail), {}});
  }
  void fail(std::string item, std::string detail, std::vector<Elem> witness = {}) {
    checks.push_back({std::move(item), CheckStatus::fail, std::move(detail), std::move(witness)});
  }
  void skip(std::string item, std::string reason) {
    checks.push_back({std::move(item), CheckStatus::skipped, std::move(reason), {}});
  }

  bool ok() const {
    return std::none_of(checks.begin(), checks.end(),
                        [](const Check& c) { return c.status == CheckStatus::fail; });
  }

  const Check* find(std::string_view item) const {
    auto it = std::find_if(checks.begin(), checks.end(), [&](const Check& c) { return c.item == item; });
    return it == checks.end() ? nullptr : &*it;
  }

  CheckStatus status(std::string_view item) const {
    const Check* c = find(item);
    return c ? c->status : CheckStatus::skipped;
  }
};

}  // namespace qlab

#endif  // QLAB_DIAGNOSTICS_HPP
