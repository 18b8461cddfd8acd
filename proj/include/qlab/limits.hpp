#ifndef QLAB_LIMITS_HPP
#define QLAB_LIMITS_HPP

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <string>

#include "qlab/error.hpp"

namespace qlab {

/// Size caps for every potentially explosive computation.
struct Limits {
  std::size_t max_lattice = 4096;          // elements of any constructed lattice
  std::size_t max_maps = 1'000'000;        // monotone maps in one enumeration
  std::uint64_t max_tuples = 100'000'000;  // witness tuples in one exhaustive scan
  std::size_t max_oracle_irreducibles = 20;
  std::size_t exhaustive_family_carrier = 12;  // all subsets up to this carrier size
  std::size_t random_families = 1000;

  /// Reads QLAB_LIMIT. Either a bare integer (overrides max_lattice) or a
  /// comma-separated list of key=value with keys lattice, maps, tuples, ji,
  /// families.
  static Limits from_env() {
    Limits l;
    const char* env = std::getenv("QLAB_LIMIT");
    if (env == nullptr || *env == '\0') return l;
    l.apply(env);
    return l;
  }

  void apply(const std::string& text) {
    auto parse_num = [&](const std::string& s) -> std::uint64_t {
      std::size_t pos = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(s, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != s.size() || v == 0)
        throw Error(Errc::invalid_argument, "bad QLAB_LIMIT value '" + s + "'");
      return v;
    };
    if (text.find('=') == std::string::npos) {
      max_lattice = parse_num(text);
      return;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw Error(Errc::invalid_argument, "bad QLAB_LIMIT entry '" + item + "'");
      auto key = item.substr(0, eq);
      auto val = parse_num(item.substr(eq + 1));
      if (key == "lattice") max_lattice = val;
      else if (key == "maps") max_maps = val;
      else if (key == "tuples") max_tuples = val;
      else if (key == "ji") max_oracle_irreducibles = val;
      else if (key == "families") random_families = val;
      else throw Error(Errc::invalid_argument, "unknown QLAB_LIMIT key '" + key + "'");
    }
  }
};

}  // namespace qlab

#endif  // QLAB_LIMITS_HPP
