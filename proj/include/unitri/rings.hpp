#pragma once

#include "unitri/localized.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace unitri {

enum class RingKind { zmod, prime_field, rationals, integers, localized, product };

/// Structural description of a concrete commutative ring.
struct RingDescriptor {
  RingKind kind;
  mpz_class modulus;              // m for zmod, p for prime_field / localized
  std::vector<mpz_class> factors; // moduli of a product of Z/m rings
};

class Element;

/// Handle to an interned ring descriptor.
///
/// Descriptors are interned on construction, so structurally equal rings
/// share one descriptor and equality is a pointer comparison. Interned
/// descriptors live for the whole program and are never mutated.
class Ring {
public:
  static Ring zmod(const mpz_class &m);
  static Ring gf(const mpz_class &p);
  static Ring rationals();
  static Ring integers();
  static Ring localized(unsigned long p);
  static Ring product(const std::vector<mpz_class> &moduli);

  /// Parses the command-line syntax: zmod:m, gf:p, q, z, zp:p,
  /// product:zmod:2,zmod:3.
  static Ring parse(std::string_view text);

  RingKind kind() const noexcept { return d_->kind; }
  const RingDescriptor &descriptor() const noexcept { return *d_; }
  const mpz_class &modulus() const noexcept { return d_->modulus; }
  unsigned long prime() const;
  const std::vector<mpz_class> &factors() const noexcept { return d_->factors; }

  /// Rings declared to have stable rank 1.
  bool has_sr1() const noexcept;
  bool is_field() const noexcept;
  bool is_finite() const noexcept;
  /// Number of elements; only for finite rings.
  mpz_class size() const;

  /// zmod:6, gf:5, q, z, zp:2, product:zmod:2,zmod:3
  std::string name() const;

  Element zero() const;
  Element one() const;
  Element from_int(const mpz_class &value) const;
  Element from_int(long value) const;
  /// Enumeration order for finite rings; index < size().
  Element element_at(std::uint64_t index) const;
  /// Text form of one element, see Element::to_string.
  Element parse_element(std::string_view text) const;

  friend bool operator==(const Ring &a, const Ring &b) noexcept {
    return a.d_ == b.d_;
  }

private:
  explicit Ring(const RingDescriptor *d) : d_(d) {}
  static Ring intern(RingDescriptor d);

  const RingDescriptor *d_;
};

/// Immutable ring element in canonical form.
class Element {
public:
  using Payload = std::variant<mpz_class, mpq_class, LocalizedInteger,
                               std::vector<mpz_class>>;

  Element(Ring ring, Payload payload);

  const Ring &ring() const noexcept { return ring_; }
  const Payload &payload() const noexcept { return payload_; }

  /// Residue (zmod, prime_field) or integer value (integers).
  const mpz_class &integer() const { return std::get<mpz_class>(payload_); }
  const mpq_class &rational() const { return std::get<mpq_class>(payload_); }
  const LocalizedInteger &localized() const {
    return std::get<LocalizedInteger>(payload_);
  }
  const std::vector<mpz_class> &residues() const {
    return std::get<std::vector<mpz_class>>(payload_);
  }

  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;
  /// Two-sided inverse; throws not_a_unit.
  Element inverse() const;

  /// Position in Ring::element_at order; finite rings only.
  std::uint64_t index() const;

  /// Canonical text: "5", "-3/4", "3*2^-1", "(1,0,2)".
  std::string to_string() const;

  friend Element operator+(const Element &a, const Element &b);
  friend Element operator-(const Element &a, const Element &b);
  friend Element operator*(const Element &a, const Element &b);
  friend Element operator-(const Element &a);
  friend bool operator==(const Element &a, const Element &b);

private:
  Ring ring_;
  Payload payload_;
};

/// Returns z with c + d*z a unit, the stable rank 1 witness.
///
/// Z/m scans z = 0, 1, ..., m-1 and returns the first hit. Fields return
/// 0 when c is already a unit and 1 otherwise. Products of Z/m rings are
/// handled componentwise. Throws capability_missing for Z and Z[1/p] and
/// not_unimodular when cR + dR != R.
Element sr1_witness(const Element &c, const Element &d);

/// Returns z with d + sum c[i]*z[i] a unit.
///
/// Coordinates are fixed right to left: z[i] is a scalar witness for the
/// running value of d modulo the ideal generated by c[0..i-1], so that the
/// remaining tuple stays unimodular.
std::vector<Element> sr1_witness_vec(std::span<const Element> c,
                                     const Element &d);

} // namespace unitri
