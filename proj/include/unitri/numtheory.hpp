#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace unitri {

/// Miller-Rabin with the first twelve prime bases, which is exact below
/// 3.3e24; larger inputs get additional GMP rounds on top.
bool is_prime(const mpz_class &q);

/// Prime factors of m with multiplicity, ascending. m >= 2; throws
/// out_of_range otherwise. Trial division then Pollard-Brent rho.
std::vector<mpz_class> factorize(const mpz_class &m);

/// Distinct prime factors of m, ascending.
std::vector<mpz_class> prime_divisors(const mpz_class &m);

/// True iff p generates (Z/q)^*. q must be prime and not divide p.
bool is_primitive_root(const mpz_class &p, const mpz_class &q);

/// Smallest u in [1, q-1] with p^u = b (mod q), for p a primitive root
/// modulo the prime q. Pohlig-Hellman over the factors of q-1 with
/// baby-step giant-step inside each prime-power component.
/// Throws no_solution if the preconditions fail.
mpz_class discrete_log(const mpz_class &p, const mpz_class &b,
                       const mpz_class &q);

struct PrimeSearchResult {
  mpz_class k;
  mpz_class q;
};

/// Scans q = c + d*k for k = 1, 2, ..., k_max (k runs through negative
/// values instead when d < 0, so that q grows) and returns the first q that
/// is prime, odd, different from p, coprime to d, and has p as a primitive
/// root. Throws search_exhausted when no candidate qualifies; the existence
/// of infinitely many such q is only known under GRH.
PrimeSearchResult find_prime_with_primitive_root(const mpz_class &c,
                                                 const mpz_class &d,
                                                 const mpz_class &p,
                                                 std::uint64_t k_max);

} // namespace unitri
