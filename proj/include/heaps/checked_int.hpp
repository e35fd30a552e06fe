#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace heaps {

/// 64-bit signed integer whose arithmetic throws std::overflow_error instead
/// of wrapping. Default coefficient type of MultiPoly.
class CheckedInt {
 public:
  constexpr CheckedInt() = default;
  constexpr CheckedInt(std::int64_t v) : v_(v) {}  // NOLINT: implicit by design of a numeric wrapper

  constexpr std::int64_t value() const { return v_; }

  friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw std::overflow_error("CheckedInt: addition overflow");
    return r;
  }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw std::overflow_error("CheckedInt: subtraction overflow");
    return r;
  }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw std::overflow_error("CheckedInt: multiplication overflow");
    return r;
  }
  CheckedInt operator-() const { return CheckedInt{0} - *this; }

  CheckedInt& operator+=(CheckedInt o) { return *this = *this + o; }
  CheckedInt& operator-=(CheckedInt o) { return *this = *this - o; }
  CheckedInt& operator*=(CheckedInt o) { return *this = *this * o; }

  /// Exact division; throws if the divisor is zero or does not divide.
  friend CheckedInt exact_div(CheckedInt a, CheckedInt b) {
    if (b.v_ == 0) throw std::domain_error("CheckedInt: division by zero");
    if (b.v_ == -1) return -a;
    if (a.v_ % b.v_ != 0) throw std::domain_error("CheckedInt: inexact division");
    return a.v_ / b.v_;
  }

  friend constexpr bool operator==(CheckedInt, CheckedInt) = default;
  friend constexpr auto operator<=>(CheckedInt, CheckedInt) = default;

  friend std::ostream& operator<<(std::ostream& os, CheckedInt c) { return os << c.v_; }
  friend std::string to_string(CheckedInt c) { return std::to_string(c.v_); }

 private:
  std::int64_t v_ = 0;
};

}  // namespace heaps
