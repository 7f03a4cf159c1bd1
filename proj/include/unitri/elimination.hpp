#pragma once

#include "unitri/matrix.hpp"

#include <functional>
#include <vector>

namespace unitri {

struct TransvectionWord {
  Ring ring;
  std::size_t n;
  std::vector<Transvection> letters;

  Matrix product() const { return word_product(ring, n, letters); }
};

/// Picks a row index p >= col with g(p, col) a unit, applying left row
/// operations to g (recorded in ops) when no such row exists yet.
using PivotStrategy =
    std::function<std::size_t(Matrix &g, std::size_t col, std::vector<Transvection> &ops)>;

/// Gaussian elimination to the identity driven by a pivot strategy; the
/// returned word multiplies out to g.
TransvectionWord eliminate_with(const Matrix &g, const PivotStrategy &pivot);

/// Word with product g over a stable rank 1 ring. Throws not_sl,
/// capability_missing.
TransvectionWord eliminate(const Matrix &g);

/// The corner letter t_1n(xi) or t_n1(xi) as a 4-letter commutator through
/// index 2. Throws dimension_too_small for n = 2.
TransvectionWord expand_corner(const Transvection &t, std::size_t n);

/// At most 4 alternating blocks, fitting U L U L.
Factorisation factor_sl(const Matrix &g);

struct GaussDecomposition {
  Block u;  // upper
  Matrix t; // diagonal, det 1
  Block v;  // lower
  Block u2; // upper
};

/// g = u t v u2.
GaussDecomposition gauss(const Matrix &g);

/// At most 5 alternating blocks, fitting U L U L U.
Factorisation factor5(const Matrix &g);

} // namespace unitri
