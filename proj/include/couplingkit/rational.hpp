#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace couplingkit {

/// Exact rational number in canonical form (positive denominator, reduced).
///
/// Thin value wrapper over GMP's mpq_class; every arithmetic operation
/// re-canonicalizes, so equality is structural.
class Rat {
 public:
  Rat() = default;
  Rat(std::int64_t n);  // NOLINT(google-explicit-constructor)
  Rat(std::int64_t num, std::int64_t den);
  explicit Rat(mpq_class q);

  /// Parses "p/q", a finite decimal ("0.03750", "-.5") or an integer.
  /// Throws ParseError on malformed input or a zero denominator.
  static Rat parse(std::string_view text);

  const mpq_class& raw() const noexcept { return q_; }

  bool is_zero() const noexcept { return sgn(q_) == 0; }
  int sign() const noexcept { return sgn(q_); }
  Rat abs() const { return Rat(mpq_class(::abs(q_))); }

  std::string numerator() const { return q_.get_num().get_str(); }
  std::string denominator() const { return q_.get_den().get_str(); }

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;

  /// Fixed-point rendering with `places` digits, rounding half away from zero.
  /// Display only; never feed the result back into a comparison.
  std::string decimal(int places = 5) const;

  double to_double() const { return q_.get_d(); }

  Rat& operator+=(const Rat& o);
  Rat& operator-=(const Rat& o);
  Rat& operator*=(const Rat& o);
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  Rat operator-() const { return Rat(mpq_class(-q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    return cmp(a.q_, b.q_) <=> 0;
  }

 private:
  mpq_class q_;
};

inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace couplingkit
