#pragma once

#include <gmpxx.h>

#include <string>

namespace unitri {

/// Element of Z[1/p] stored as a * p^v with p not dividing a.
///
/// Zero is stored as (0, 0). Every constructor and arithmetic result is
/// normalised, so two values are equal iff their (a, v) pairs are equal.
class LocalizedInteger {
public:
  explicit LocalizedInteger(unsigned long p);
  LocalizedInteger(mpz_class a, long v, unsigned long p);

  /// Embeds a rational whose denominator is a power of p.
  /// Throws out_of_range otherwise.
  static LocalizedInteger from_rational(const mpq_class &q, unsigned long p);

  const mpz_class &unit_part() const noexcept { return a_; }
  long valuation() const noexcept { return v_; }
  unsigned long prime() const noexcept { return p_; }

  bool is_zero() const noexcept { return a_ == 0; }
  bool is_unit() const noexcept { return abs(a_) == 1; }
  LocalizedInteger inverse() const;
  mpq_class to_rational() const;

  /// "a" for v = 0, otherwise "a*p^v".
  std::string to_string() const;

  friend LocalizedInteger operator+(const LocalizedInteger &x,
                                    const LocalizedInteger &y);
  friend LocalizedInteger operator-(const LocalizedInteger &x,
                                    const LocalizedInteger &y);
  friend LocalizedInteger operator*(const LocalizedInteger &x,
                                    const LocalizedInteger &y);
  friend LocalizedInteger operator-(const LocalizedInteger &x);
  friend bool operator==(const LocalizedInteger &x, const LocalizedInteger &y) {
    return x.p_ == y.p_ && x.v_ == y.v_ && x.a_ == y.a_;
  }

private:
  void normalise();

  mpz_class a_;
  long v_ = 0;
  unsigned long p_;
};

/// p^e as an arbitrary precision integer, e >= 0.
mpz_class pow_ui(unsigned long p, unsigned long e);

} // namespace unitri
