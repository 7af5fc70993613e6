#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace evcheck {

/// Arbitrary-width non-negative integer.
///
/// Values that fit in 64 bits are stored inline; larger values spill into a
/// shared, immutable big integer. The representation is canonical: a value
/// is big iff it does not fit in 64 bits, so equality never needs to mix
/// representations.
class Natural {
 public:
  using Big = boost::multiprecision::cpp_int;

  Natural() = default;
  Natural(std::uint64_t value) : small_(value) {}  // NOLINT: implicit by intent

  /// Parses a non-empty string of decimal digits.
  static Natural parse(std::string_view digits);

  bool is_small() const noexcept { return !big_; }
  /// Precondition: is_small().
  std::uint64_t small() const noexcept { return small_; }

  friend Natural operator+(const Natural& a, const Natural& b);
  /// Truncating subtraction: max(0, a - b).
  friend Natural monus(const Natural& a, const Natural& b);

  friend bool operator==(const Natural& a, const Natural& b);
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b);

  std::string to_string() const;
  std::size_t hash() const noexcept;

 private:
  static Natural from_big(Big value);
  Big to_big() const;

  std::uint64_t small_ = 0;
  std::shared_ptr<const Big> big_;
};

}  // namespace evcheck
