#ifndef QLAB_ERROR_HPP
#define QLAB_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qlab {

enum class Errc {
  cycle_detected,
  index_out_of_range,
  size_limit_exceeded,
  not_distributive,
  not_monotone,
  mixed_carriers,
  nucleus_not_verified,
  invalid_lattice,
  io_error,
  invalid_argument,
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::cycle_detected: return "CycleDetected";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::size_limit_exceeded: return "SizeLimitExceeded";
    case Errc::not_distributive: return "NotDistributive";
    case Errc::not_monotone: return "NotMonotone";
    case Errc::mixed_carriers: return "MixedCarriers";
    case Errc::nucleus_not_verified: return "NucleusNotVerified";
    case Errc::invalid_lattice: return "InvalidLattice";
    case Errc::io_error: return "IoError";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library. `witness` carries the offending
/// element indices when there are any (e.g. the pair breaking monotonicity).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::vector<std::uint32_t> witness = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        witness_(std::move(witness)) {}

  Errc code() const noexcept { return code_; }
  const std::vector<std::uint32_t>& witness() const noexcept { return witness_; }

 private:
  Errc code_;
  std::vector<std::uint32_t> witness_;
};

}  // namespace qlab

#endif  // QLAB_ERROR_HPP
