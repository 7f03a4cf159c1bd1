#pragma once

#include "unitri/elimination.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace unitri {

/// Largest |R|^(n*n) that enumerate_sets accepts.
inline constexpr std::uint64_t kEnumerationLimit = 10'000;

struct EnumerationReport {
  Ring ring;
  std::size_t n = 0;
  std::uint64_t sl = 0;
  std::uint64_t ulu = 0;        // U U- U
  std::uint64_t ulul = 0;       // (U U-)^2
  std::uint64_t ulul_torus = 0; // (U U-)^2 meet T
  std::uint64_t ulu_torus = 0;  // U U- U meet T
  bool length4_complete = false;
  bool length3_complete = false;
  /// U U- U meets the torus only in the identity.
  bool sharp = false;
};

/// Exhaustive set computations over a finite ring. Throws too_large when
/// |R|^(n*n) exceeds kEnumerationLimit, out_of_range for infinite rings.
EnumerationReport enumerate_sets(const Ring &ring, std::size_t n);

/// Random element: uniform over finite rings, small values otherwise.
Element random_element(const Ring &ring, std::mt19937_64 &rng);

struct RandomSl {
  Matrix matrix;
  TransvectionWord word;
};

/// Product of word_len random transvections, deterministic in seed.
RandomSl random_sl(const Ring &ring, std::size_t n, std::size_t word_len,
                   std::uint64_t seed);

struct CommutatorDecomposition {
  Matrix commutator; // [ux, uv]
  Matrix ux;         // u x u^-1
  Matrix uv;         // u v u^-1
  Block upper;       // u v
  Block lower;       // x y
};

/// For g = u x v y splits g = [ux, uv] * (u v) * (x y). f must fit
/// U L U L after padding with identity blocks. Throws bad_pattern.
CommutatorDecomposition commutator3(const Matrix &g, const Factorisation &f);

struct OracleCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// Enumeration and commutator oracles over small rings.
std::vector<OracleCheck> run_oracles();

} // namespace unitri
