#pragma once

#include "unitri/elimination.hpp"

#include <cstdint>
#include <optional>

namespace unitri {

inline constexpr std::uint64_t kDefaultKMax = 1'000'000;

enum class Lemma6Case { case1, case2, degenerate };

/// Audit record of the length-5 algorithm for SL(2, Z[1/p]).
///
/// alpha and beta are the valuations of the top row of g. In Case 2 the
/// search runs on the order-reversed matrix, and k, q, u, l, theta refer to
/// that matrix. multipliers are the four right multipliers in g's own
/// coordinates: g * m1 * m2 * m3 * m4 is lower (Case 1) or upper (Case 2)
/// unitriangular. When transposed is set, all of this describes g^T
/// instead of g. Degenerate inputs leave the numeric fields empty.
struct Lemma6Trace {
  Lemma6Case kind = Lemma6Case::degenerate;
  bool transposed = false;
  long alpha = 0;
  long beta = 0;
  mpz_class k;
  mpz_class q;
  mpz_class u;
  mpz_class l;
  std::optional<Element> theta;
  std::vector<Transvection> multipliers;
};

struct Lemma6Result {
  Factorisation factorisation;
  Lemma6Trace trace;
};

/// At most 5 alternating blocks, L U L U L or U L U L U. Case 1 is used
/// when alpha >= beta, Case 2 otherwise. If the prime found that way is
/// too large for p^u to be written out, the other case and the transpose
/// are searched as well and the smallest prime wins.
/// Throws not_sl, search_exhausted.
Lemma6Result factor_sl2_zp(const Matrix &g, std::uint64_t k_max = kDefaultKMax);

/// g * m1 * m2 * m3 * m4 for the recorded multipliers.
Matrix replay_lemma6(const Matrix &g, const Lemma6Trace &trace);

/// Elimination over Z[1/p] by Euclidean reduction of unit parts.
TransvectionWord eliminate_euclidean(const Matrix &g);

/// At most 6 alternating blocks. n = 2 pads the length-5 answer to 6 with
/// one identity block; n > 2 peels one parabolic level at a time and
/// reassembles the blocks in L = 3 normal form. Throws not_sl,
/// search_exhausted.
Factorisation factor_sl_n_zp(const Matrix &g, std::uint64_t k_max = kDefaultKMax);

} // namespace unitri
