#include "unitri/localized.hpp"

#include "unitri/error.hpp"

#include <algorithm>
#include <utility>

namespace unitri {

mpz_class pow_ui(unsigned long p, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

LocalizedInteger::LocalizedInteger(unsigned long p) : a_(0), v_(0), p_(p) {}

LocalizedInteger::LocalizedInteger(mpz_class a, long v, unsigned long p)
    : a_(std::move(a)), v_(v), p_(p) {
  normalise();
}

void LocalizedInteger::normalise() {
  if (a_ == 0) {
    v_ = 0;
    return;
  }
  const mpz_class p(p_);
  v_ += static_cast<long>(mpz_remove(a_.get_mpz_t(), a_.get_mpz_t(), p.get_mpz_t()));
}

LocalizedInteger LocalizedInteger::from_rational(const mpq_class &q,
                                                 unsigned long p) {
  mpz_class den = q.get_den();
  const mpz_class pz(p);
  const long shift =
      static_cast<long>(mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
  if (den != 1)
    throw Error(errc::out_of_range,
                "denominator of " + q.get_str() + " is not a power of " +
                    std::to_string(p));
  return LocalizedInteger(q.get_num(), -shift, p);
}

LocalizedInteger LocalizedInteger::inverse() const {
  if (!is_unit())
    throw Error(errc::not_a_unit, to_string() + " is not a unit of Z[1/" +
                                      std::to_string(p_) + "]");
  return LocalizedInteger(a_, -v_, p_);
}

mpq_class LocalizedInteger::to_rational() const {
  if (v_ >= 0)
    return mpq_class(a_ * pow_ui(p_, static_cast<unsigned long>(v_)));
  mpq_class r(a_, pow_ui(p_, static_cast<unsigned long>(-v_)));
  r.canonicalize();
  return r;
}

std::string LocalizedInteger::to_string() const {
  if (v_ == 0)
    return a_.get_str();
  return a_.get_str() + "*" + std::to_string(p_) + "^" + std::to_string(v_);
}

LocalizedInteger operator+(const LocalizedInteger &x,
                           const LocalizedInteger &y) {
  if (x.is_zero())
    return y;
  if (y.is_zero())
    return x;
  long v = std::min(x.v_, y.v_);
  mpz_class a = x.a_ * pow_ui(x.p_, static_cast<unsigned long>(x.v_ - v)) +
                y.a_ * pow_ui(x.p_, static_cast<unsigned long>(y.v_ - v));
  return LocalizedInteger(std::move(a), v, x.p_);
}

LocalizedInteger operator-(const LocalizedInteger &x) {
  LocalizedInteger r = x;
  r.a_ = -r.a_;
  return r;
}

LocalizedInteger operator-(const LocalizedInteger &x,
                           const LocalizedInteger &y) {
  return x + (-y);
}

LocalizedInteger operator*(const LocalizedInteger &x,
                           const LocalizedInteger &y) {
  if (x.is_zero() || y.is_zero())
    return LocalizedInteger(x.p_);
  // p is prime, so p does not divide a_x * a_y.
  LocalizedInteger r(x.p_);
  r.a_ = x.a_ * y.a_;
  r.v_ = x.v_ + y.v_;
  return r;
}

} // namespace unitri
