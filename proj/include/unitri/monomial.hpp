#pragma once

#include "unitri/parabolic.hpp"

#include <span>
#include <vector>

namespace unitri {

/// Monomial matrix with units[j] at position (perm[j], j), 0-based.
struct MonomialMatrix {
  std::vector<std::size_t> perm;
  std::vector<Element> units;

  Matrix to_matrix() const;
  /// Throws not_monomial unless g has exactly one unit per row and column.
  static MonomialMatrix from_matrix(const Matrix &g);
};

/// Four slots U L U L (identity slots allowed) whose product is the
/// monomial matrix g of determinant 1. Works over any commutative ring.
NormalForm monomial_normal_form(const Matrix &g);

/// At most 4 alternating blocks. Throws not_sl, not_monomial.
Factorisation factor_monomial(const MonomialMatrix &g);
Factorisation factor_monomial(const Matrix &g);

/// diag(d) for units with product 1. Throws not_a_unit, det_not_one.
Factorisation factor_torus(std::span<const Element> d);

} // namespace unitri
