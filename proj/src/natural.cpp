#include "evcheck/natural.hpp"

#include <functional>
#include <limits>

#include "evcheck/error.hpp"

namespace evcheck {

Natural Natural::from_big(Big value) {
  if (value <= std::numeric_limits<std::uint64_t>::max()) {
    return Natural(static_cast<std::uint64_t>(value));
  }
  Natural n;
  n.big_ = std::make_shared<const Big>(std::move(value));
  return n;
}

Natural::Big Natural::to_big() const { return big_ ? *big_ : Big(small_); }

Natural Natural::parse(std::string_view digits) {
  if (digits.empty()) throw Error(ErrorKind::Syntax, "empty numeral");
  Big value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw Error(ErrorKind::Syntax, "bad digit in numeral");
    value = value * 10 + (c - '0');
  }
  return from_big(std::move(value));
}

Natural operator+(const Natural& a, const Natural& b) {
  if (a.is_small() && b.is_small()) {
    std::uint64_t r = a.small_ + b.small_;
    if (r >= a.small_) return Natural(r);
  }
  return Natural::from_big(a.to_big() + b.to_big());
}

Natural monus(const Natural& a, const Natural& b) {
  if (a.is_small() && b.is_small()) {
    return Natural(a.small_ > b.small_ ? a.small_ - b.small_ : 0);
  }
  if (a <= b) return Natural(0);
  return Natural::from_big(a.to_big() - b.to_big());
}

bool operator==(const Natural& a, const Natural& b) {
  if (a.is_small() != b.is_small()) return false;
  if (a.is_small()) return a.small_ == b.small_;
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
  if (a.is_small() && b.is_small()) return a.small_ <=> b.small_;
  if (a.is_small()) return std::strong_ordering::less;
  if (b.is_small()) return std::strong_ordering::greater;
  int c = a.big_->compare(*b.big_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Natural::to_string() const {
  return big_ ? big_->str() : std::to_string(small_);
}

std::size_t Natural::hash() const noexcept {
  if (!big_) return std::hash<std::uint64_t>{}(small_);
  return std::hash<std::string>{}(big_->str());
}

}  // namespace evcheck
