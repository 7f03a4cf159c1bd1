#pragma once

#include "unitri/rings.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace unitri {

enum class Side { upper, lower };

inline char side_letter(Side s) { return s == Side::upper ? 'U' : 'L'; }
inline Side opposite(Side s) { return s == Side::upper ? Side::lower : Side::upper; }

/// Dense square matrix over one ring. Indices are 0-based.
class Matrix {
public:
  /// Zero matrix.
  Matrix(Ring ring, std::size_t n);

  static Matrix identity(Ring ring, std::size_t n);
  static Matrix from_ints(Ring ring,
                          std::initializer_list<std::initializer_list<long>> rows);
  static Matrix from_rows(Ring ring, std::vector<std::vector<Element>> rows);
  /// Diagonal matrix with the given entries.
  static Matrix diagonal(std::span<const Element> entries);

  std::size_t size() const noexcept { return n_; }
  const Ring &ring() const noexcept { return ring_; }

  const Element &operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  void set(std::size_t i, std::size_t j, Element value);

  Matrix transpose() const;
  /// Square block starting at (offset, offset).
  Matrix block(std::size_t offset, std::size_t size) const;
  /// Identity of dimension n with this matrix placed at (offset, offset).
  Matrix embed(std::size_t n, std::size_t offset) const;

  bool is_identity() const;

  friend Matrix operator*(const Matrix &a, const Matrix &b);
  friend bool operator==(const Matrix &a, const Matrix &b);

  std::string to_string() const;

private:
  Ring ring_;
  std::size_t n_;
  std::vector<Element> entries_;
};

Matrix mul(const Matrix &a, const Matrix &b);

/// Elementary transvection t_ij(xi) = e + xi * e_ij, 0-based i != j.
struct Transvection {
  std::size_t i;
  std::size_t j;
  Element xi;

  Side side() const noexcept { return i < j ? Side::upper : Side::lower; }
  Matrix matrix(std::size_t n) const;
  Transvection inverse() const { return {i, j, -xi}; }
};

enum class ApplySide { left, right };

/// Left application adds xi * (row j) to row i; right application adds
/// xi * (column i) to column j. Either way the result is exact.
Matrix apply_transvection(const Matrix &g, const Transvection &t, ApplySide side);

/// Product of the letters, left to right, as an n x n matrix.
Matrix word_product(const Ring &ring, std::size_t n,
                    std::span<const Transvection> word);

/// t_ij(xi) as the commutator [t_ik(xi), t_kj(1)] written out in four
/// letters. k must differ from i and j.
std::vector<Transvection> commutator_letters(const Transvection &t, std::size_t k);

/// Division-free determinant (Berkowitz), valid over any commutative ring.
Element det(const Matrix &g);

/// Conjugation by the order-reversing permutation: entry (i, j) moves to
/// (n-1-i, n-1-j). Swaps upper and lower unitriangular matrices.
Matrix reverse_conjugate(const Matrix &g);

/// Inverse via the adjugate; throws not_a_unit when det(g) is not a unit.
Matrix inverse(const Matrix &g);

/// Inverse of an upper or lower unitriangular matrix by substitution.
Matrix unitriangular_inverse(const Matrix &g);

bool is_upper_unitriangular(const Matrix &g);
bool is_lower_unitriangular(const Matrix &g);
bool is_unitriangular(const Matrix &g, Side side);

struct MatrixFlags {
  bool upper_unitriangular = false;
  bool lower_unitriangular = false;
  bool diagonal = false;
  bool monomial = false;
  bool identity = false;
  bool sl = false;

  friend bool operator==(const MatrixFlags &, const MatrixFlags &) = default;
};

MatrixFlags classify(const Matrix &g);

struct Block {
  Side side;
  Matrix mat;
};

/// Alternating product of unitriangular blocks equal to target.
struct Factorisation {
  std::vector<Block> blocks;
  Matrix target;
  /// Optional provenance: a transvection word with the same product.
  std::vector<Transvection> word;

  std::size_t length() const noexcept { return blocks.size(); }
  /// "U L U" style; empty for no blocks.
  std::string pattern() const;
  Matrix product() const;
};

/// Builds a factorisation from a list of blocks: identity blocks are
/// dropped and neighbouring blocks of the same side are multiplied
/// together, so the result alternates.
Factorisation compact(std::vector<Block> blocks, Matrix target);

struct VerifyReport {
  bool ok = false;
  std::size_t length = 0;
  std::string pattern;
  /// Empty when ok.
  std::string first_violation;
};

VerifyReport verify_factorisation(const Factorisation &f);

} // namespace unitri
