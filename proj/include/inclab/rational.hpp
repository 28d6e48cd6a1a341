#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace inclab {

using Int = mpz_class;

/// Exact signed rational, always reduced with a positive denominator.
///
/// A thin value wrapper over GMP's mpq. Every arithmetic result is
/// canonicalized, so structural equality is numeric equality.
class Rat {
 public:
  Rat() = default;
  Rat(int v) : v_(v) {}                          // NOLINT(implicit)
  Rat(long v) : v_(v) {}                         // NOLINT(implicit)
  Rat(long long v) : v_(static_cast<long>(v)) {}  // NOLINT(implicit)
  Rat(const Int& v) : v_(v) {}                   // NOLINT(implicit)
  Rat(const Int& num, const Int& den);
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Parses "num/den" or "num" (optional leading '-'). Throws
  /// std::invalid_argument on malformed input or a zero denominator.
  static Rat parse(std::string_view text);

  /// "num/den", with "/den" omitted when the denominator is 1.
  std::string str() const;

  Int num() const { return v_.get_num(); }
  Int den() const { return v_.get_den(); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  long double to_long_double() const;
  const mpq_class& raw() const { return v_; }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

Rat abs(const Rat& r);

/// Largest integer not exceeding r.
Int floor(const Rat& r);

/// True iff r = s*s for some rational s (both parts perfect squares).
bool is_square(const Rat& r);

/// Sign of a + b*sqrt(u) + c*sqrt(v) + d*sqrt(u*v) for u, v >= 0.
/// Exact; decided by repeated squaring.
int sign_sqrt_expr(const Rat& a, const Rat& b, const Rat& u, const Rat& c, const Rat& v,
                   const Rat& d);

/// Sign of a + b*sqrt(u), u >= 0.
int sign_sqrt_expr(const Rat& a, const Rat& b, const Rat& u);

std::size_t hash_value(const Rat& r);

}  // namespace inclab

template <>
struct std::hash<inclab::Rat> {
  std::size_t operator()(const inclab::Rat& r) const { return inclab::hash_value(r); }
};
