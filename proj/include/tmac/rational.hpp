#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace tmac {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number. All time stamps and durations in the library use
/// this type: the scheduling semantics hinge on strict comparisons of event
/// times, which floating point cannot provide.
class Rat {
 public:
  Rat() = default;
  Rat(long long value) : num_(value) {}  // NOLINT: implicit by design
  Rat(BigInt num, BigInt den);

  static Rat of(long long num, long long den) { return Rat(BigInt(num), BigInt(den)); }

  /// Accepts integers ("7", "-3"), fractions ("3/4"), and decimals ("1.25").
  /// Decimal text converts exactly: "0.1" becomes 1/10, not a float.
  static std::optional<Rat> parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool positive() const { return num_ > 0; }
  bool negative() const { return num_ < 0; }
  bool zero() const { return num_ == 0; }

  /// Largest integer <= *this.
  BigInt floor() const;
  /// Smallest integer >= *this.
  BigInt ceil() const;

  /// "p" when the denominator is 1, "p/q" otherwise.
  std::string str() const;

  Rat operator-() const;
  Rat& operator+=(const Rat& o);
  Rat& operator-=(const Rat& o);
  Rat& operator*=(const Rat& o);
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const BigInt lhs = a.num_ * b.den_;
    const BigInt rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  void normalize();

  BigInt num_ = 0;
  BigInt den_ = 1;
};

}  // namespace tmac
