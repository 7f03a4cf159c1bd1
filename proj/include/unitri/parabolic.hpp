#pragma once

#include "unitri/matrix.hpp"

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace unitri {

/// Terminal parabolic splitting of type A_{n-1} for the fundamental root
/// r in {1, n-1} (1-based root label). Positions are 0-based.
///
/// r = n-1: the Levi block is rows/columns 0..n-2, Sigma is the last column.
/// r = 1:   the Levi block is rows/columns 1..n-1, Sigma is the first row.
class ParabolicSplit {
public:
  ParabolicSplit(std::size_t n, std::size_t r);

  std::size_t n() const noexcept { return n_; }
  std::size_t r() const noexcept { return r_; }
  /// First index of the Levi block.
  std::size_t levi_offset() const noexcept { return r_ == 1 && n_ > 2 ? 1 : 0; }
  std::size_t levi_size() const noexcept { return n_ - 1; }

  bool member_of_delta(std::size_t i, std::size_t j) const;
  /// Positive unipotent part Sigma.
  bool member_of_sigma(std::size_t i, std::size_t j) const;
  /// Negative part -Sigma, the transpose of Sigma.
  bool member_of_neg_sigma(std::size_t i, std::size_t j) const {
    return member_of_sigma(j, i);
  }

  /// Prefers r = n-1; returns nothing for the corners (0, n-1), (n-1, 0).
  static std::optional<ParabolicSplit> containing(std::size_t n, std::size_t i,
                                                  std::size_t j);

private:
  std::size_t n_;
  std::size_t r_;
};

/// True when every off-diagonal nonzero entry sits at a position accepted by
/// the predicate and the diagonal is all ones.
bool supported_in(const Matrix &m,
                  const std::function<bool(std::size_t, std::size_t)> &allowed);
bool supported_in_delta(const Matrix &m, const ParabolicSplit &s);
bool supported_in_sigma(const Matrix &m, const ParabolicSplit &s, Side side);

/// A word of 2L alternating blocks U L U L ... (identity blocks allowed)
/// together with its product.
class NormalForm {
public:
  /// 2L identity blocks of dimension n.
  static NormalForm trivial(const Ring &ring, std::size_t n, std::size_t levels = 2);
  /// Block k must be upper unitriangular for even k, lower for odd k.
  explicit NormalForm(std::vector<Matrix> blocks);

  const std::vector<Matrix> &blocks() const noexcept { return blocks_; }
  const Matrix &product() const noexcept { return product_; }
  std::size_t levels() const noexcept { return blocks_.size() / 2; }
  std::size_t size() const noexcept { return product_.size(); }
  static Side side_of(std::size_t k) { return k % 2 == 0 ? Side::upper : Side::lower; }

  /// Identity blocks pruned, neighbours merged.
  Factorisation to_factorisation() const;

private:
  std::vector<Matrix> blocks_;
  Matrix product_;
};

struct SigmaChunk {
  Matrix v; // supported in Sigma
  Matrix m; // supported in -Sigma
};

/// b = delta * sigma with delta supported in the Levi block and sigma in
/// Sigma (upper blocks) or -Sigma (lower blocks).
std::pair<Block, Matrix> split_block(const Block &b, const ParabolicSplit &s);

/// d^-1 * x * d for a Levi element d; throws support_violation if the
/// result leaves the +-Sigma support of x.
Matrix conj_sigma(const Matrix &x, const Matrix &d, const ParabolicSplit &s);

struct Collected {
  std::vector<Matrix> delta_word; // 2L blocks supported in the Levi block
  std::vector<SigmaChunk> chunks; // L chunks
};

/// product(delta_word) * product(chunks) = nf.product().
Collected collect(const NormalForm &nf, const ParabolicSplit &s);

/// Inverse of collect: each chunk letter is conjugated forward past the
/// Levi tail and merged into its slot.
NormalForm reinsert(const std::vector<Matrix> &delta_word,
                    const std::vector<SigmaChunk> &chunks, const ParabolicSplit &s);

/// Factors a 2x2 matrix of determinant 1 into exactly 2L slot matrices
/// U L U L ... (identity slots allowed).
using BaseFactoriser = std::function<std::vector<Matrix>(const Matrix &)>;

/// Maintains a normal form of 2L blocks under left multiplication by
/// transvections. The Levi refactoring recurses down to a 2x2 base case.
class AbsorptionEngine {
public:
  AbsorptionEngine(std::size_t levels, BaseFactoriser base);

  std::size_t levels() const noexcept { return levels_; }

  /// Normal form of t * nf. Throws corner_transvection for (0, n-1) and
  /// (n-1, 0) when n >= 3.
  NormalForm absorb(const Transvection &t, const NormalForm &nf) const;

  /// Folds the word right to left into nf, expanding corner letters.
  NormalForm absorb_word(std::span<const Transvection> word, NormalForm nf) const;

private:
  NormalForm absorb_levi(const Transvection &t, const NormalForm &nf) const;
  NormalForm absorb_any(const Transvection &t, const NormalForm &nf) const;

  std::size_t levels_;
  BaseFactoriser base_;
};

/// The L = 2 engine over stable rank 1 rings with the length-4 SL(2) base.
const AbsorptionEngine &sr1_engine();

NormalForm absorb(const Transvection &t, const NormalForm &nf);

} // namespace unitri
