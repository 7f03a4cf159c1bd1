#include "unitri/parabolic.hpp"

#include "unitri/error.hpp"
#include "unitri/sl2.hpp"

namespace unitri {

namespace {

bool is_corner(std::size_t n, std::size_t i, std::size_t j) {
  return n >= 3 && ((i == 0 && j == n - 1) || (i == n - 1 && j == 0));
}

void require_support(const Matrix &m, const ParabolicSplit &s, Side side,
                     const char *what) {
  if (!supported_in_sigma(m, s, side))
    throw Error(errc::support_violation,
                std::string(what) + " left " + (side == Side::upper ? "" : "-") +
                    "Sigma_" + std::to_string(s.r()) + ": " + m.to_string());
}

// d^-1 x d with the inverse supplied.
Matrix conjugate(const Matrix &x, const Matrix &d, const Matrix &dinv) {
  return dinv * x * d;
}

Side sigma_side(const Matrix &x) {
  return is_upper_unitriangular(x) ? Side::upper : Side::lower;
}

} // namespace

// ---------------------------------------------------------- ParabolicSplit

ParabolicSplit::ParabolicSplit(std::size_t n, std::size_t r) : n_(n), r_(r) {
  if (n < 2)
    throw Error(errc::dimension_too_small, "parabolic split needs n >= 2");
  if (r != 1 && r != n - 1)
    throw Error(errc::out_of_range,
                "terminal root index must be 1 or n-1, got " + std::to_string(r));
}

bool ParabolicSplit::member_of_delta(std::size_t i, std::size_t j) const {
  if (i == j || i >= n_ || j >= n_)
    return false;
  const std::size_t lo = levi_offset();
  return i >= lo && j >= lo && i < lo + n_ - 1 && j < lo + n_ - 1;
}

bool ParabolicSplit::member_of_sigma(std::size_t i, std::size_t j) const {
  if (i == j || i >= n_ || j >= n_)
    return false;
  if (levi_offset() == 0)
    return j == n_ - 1 && i < n_ - 1;
  return i == 0 && j > 0;
}

std::optional<ParabolicSplit> ParabolicSplit::containing(std::size_t n, std::size_t i,
                                                         std::size_t j) {
  ParabolicSplit last(n, n - 1);
  if (last.member_of_delta(i, j))
    return last;
  if (n > 2) {
    ParabolicSplit first(n, 1);
    if (first.member_of_delta(i, j))
      return first;
  }
  return std::nullopt;
}

bool supported_in(const Matrix &m,
                  const std::function<bool(std::size_t, std::size_t)> &allowed) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Element &x = m(i, j);
      if (i == j) {
        if (!x.is_one())
          return false;
      } else if (!x.is_zero() && !allowed(i, j)) {
        return false;
      }
    }
  return true;
}

bool supported_in_delta(const Matrix &m, const ParabolicSplit &s) {
  return supported_in(m, [&](std::size_t i, std::size_t j) { return s.member_of_delta(i, j); });
}

bool supported_in_sigma(const Matrix &m, const ParabolicSplit &s, Side side) {
  if (side == Side::upper)
    return supported_in(m, [&](std::size_t i, std::size_t j) { return s.member_of_sigma(i, j); });
  return supported_in(m,
                      [&](std::size_t i, std::size_t j) { return s.member_of_neg_sigma(i, j); });
}

// ------------------------------------------------------------- NormalForm

NormalForm NormalForm::trivial(const Ring &ring, std::size_t n, std::size_t levels) {
  return NormalForm(std::vector<Matrix>(2 * levels, Matrix::identity(ring, n)));
}

NormalForm::NormalForm(std::vector<Matrix> blocks)
    : blocks_(std::move(blocks)),
      product_(blocks_.empty() ? throw Error(errc::bad_pattern, "empty normal form")
                               : blocks_.front()) {
  if (blocks_.size() % 2 != 0)
    throw Error(errc::bad_pattern, "normal form needs an even number of blocks");
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (!is_unitriangular(blocks_[k], side_of(k)))
      throw Error(errc::bad_pattern, "normal form block " + std::to_string(k + 1) +
                                         " is not " +
                                         (side_of(k) == Side::upper ? "upper" : "lower") +
                                         " unitriangular");
    if (k > 0)
      product_ = product_ * blocks_[k];
  }
}

Factorisation NormalForm::to_factorisation() const {
  std::vector<Block> blocks;
  blocks.reserve(blocks_.size());
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    blocks.push_back({side_of(k), blocks_[k]});
  return compact(std::move(blocks), product_);
}

// ------------------------------------------------------- split and chunks

std::pair<Block, Matrix> split_block(const Block &b, const ParabolicSplit &s) {
  if (b.mat.size() != s.n())
    throw Error(errc::dimension_mismatch, "block and split dimensions differ");
  if (!is_unitriangular(b.mat, b.side))
    throw Error(errc::support_violation, "block is not unitriangular on its side");
  Matrix delta = Matrix::identity(b.mat.ring(), s.n());
  for (std::size_t i = 0; i < s.n(); ++i)
    for (std::size_t j = 0; j < s.n(); ++j)
      if (s.member_of_delta(i, j))
        delta.set(i, j, b.mat(i, j));
  Matrix sigma = unitriangular_inverse(delta) * b.mat;
  require_support(sigma, s, b.side, "split_block");
  return {Block{b.side, std::move(delta)}, std::move(sigma)};
}

Matrix conj_sigma(const Matrix &x, const Matrix &d, const ParabolicSplit &s) {
  const std::size_t lo = s.levi_offset(), hi = lo + s.levi_size();
  for (std::size_t i = 0; i < s.n(); ++i)
    for (std::size_t j = 0; j < s.n(); ++j) {
      const bool inside = i >= lo && i < hi && j >= lo && j < hi;
      if (!inside && (i == j ? !d(i, j).is_one() : !d(i, j).is_zero()))
        throw Error(errc::support_violation, "conjugator leaves the Levi block");
    }
  const Side side = sigma_side(x);
  require_support(x, s, side, "conj_sigma input");
  Matrix r = conjugate(x, d, inverse(d));
  require_support(r, s, side, "conj_sigma");
  return r;
}

Collected collect(const NormalForm &nf, const ParabolicSplit &s) {
  const auto &blocks = nf.blocks();
  const std::size_t k = blocks.size();
  std::vector<Matrix> deltas, sigmas;
  deltas.reserve(k);
  sigmas.reserve(k);
  for (std::size_t b = 0; b < k; ++b) {
    auto [delta, sigma] = split_block({NormalForm::side_of(b), blocks[b]}, s);
    deltas.push_back(std::move(delta.mat));
    sigmas.push_back(std::move(sigma));
  }
  // sigma_b moves right past delta_{b+1} ... delta_{k-1}.
  Matrix tail = Matrix::identity(nf.product().ring(), s.n());
  Matrix tail_inv = tail;
  std::vector<Matrix> moved(k, tail);
  for (std::size_t b = k; b-- > 0;) {
    moved[b] = conjugate(sigmas[b], tail, tail_inv);
    require_support(moved[b], s, NormalForm::side_of(b), "collect");
    tail = deltas[b] * tail;
    tail_inv = tail_inv * unitriangular_inverse(deltas[b]);
  }
  Collected out{std::move(deltas), {}};
  for (std::size_t b = 0; b < k; b += 2)
    out.chunks.push_back({std::move(moved[b]), std::move(moved[b + 1])});
  return out;
}

NormalForm reinsert(const std::vector<Matrix> &delta_word,
                    const std::vector<SigmaChunk> &chunks, const ParabolicSplit &s) {
  const std::size_t k = delta_word.size();
  if (chunks.size() * 2 != k)
    throw Error(errc::bad_pattern, "chunk count does not match the Levi word");
  std::vector<Matrix> slots(k, delta_word.front());
  Matrix tail = Matrix::identity(delta_word.front().ring(), s.n());
  Matrix tail_inv = tail;
  for (std::size_t b = k; b-- > 0;) {
    const Side side = NormalForm::side_of(b);
    if (!supported_in_delta(delta_word[b], s) || !is_unitriangular(delta_word[b], side))
      throw Error(errc::support_violation, "Levi word block " + std::to_string(b + 1) +
                                               " leaves Delta_" + std::to_string(s.r()));
    const Matrix &c = b % 2 == 0 ? chunks[b / 2].v : chunks[b / 2].m;
    require_support(c, s, side, "reinsert input");
    Matrix forward = conjugate(c, tail_inv, tail);
    require_support(forward, s, side, "reinsert");
    slots[b] = delta_word[b] * forward;
    tail = delta_word[b] * tail;
    tail_inv = tail_inv * unitriangular_inverse(delta_word[b]);
  }
  return NormalForm(std::move(slots));
}

// ------------------------------------------------------- AbsorptionEngine

namespace {

// An upper letter joins block 0; a lower one joins block 1 when block 0 is
// trivial.
std::optional<NormalForm> merge_front(const Transvection &t, const NormalForm &nf) {
  const bool upper = t.i < t.j;
  if (!upper && !nf.blocks()[0].is_identity())
    return std::nullopt;
  std::vector<Matrix> blocks = nf.blocks();
  Matrix &b = blocks[upper ? 0 : 1];
  b = apply_transvection(b, t, ApplySide::left);
  return NormalForm(std::move(blocks));
}

} // namespace

AbsorptionEngine::AbsorptionEngine(std::size_t levels, BaseFactoriser base)
    : levels_(levels), base_(std::move(base)) {
  if (levels_ == 0)
    throw Error(errc::out_of_range, "engine needs at least one level");
}

NormalForm AbsorptionEngine::absorb(const Transvection &t, const NormalForm &nf) const {
  const std::size_t n = nf.size();
  if (t.i == t.j || t.i >= n || t.j >= n)
    throw Error(errc::dimension_mismatch, "transvection index out of range");
  if (is_corner(n, t.i, t.j))
    throw Error(errc::corner_transvection,
                "t_" + std::to_string(t.i + 1) + std::to_string(t.j + 1) +
                    " lies in no terminal Levi; expand it first");
  if (nf.levels() != levels_)
    throw Error(errc::bad_pattern, "normal form has the wrong number of levels");
  return absorb_levi(t, nf);
}

NormalForm AbsorptionEngine::absorb_word(std::span<const Transvection> word,
                                         NormalForm nf) const {
  if (nf.levels() != levels_)
    throw Error(errc::bad_pattern, "normal form has the wrong number of levels");
  for (std::size_t k = word.size(); k-- > 0;)
    nf = absorb_any(word[k], nf);
  return nf;
}

NormalForm AbsorptionEngine::absorb_any(const Transvection &t, const NormalForm &nf) const {
  if (t.xi.is_zero())
    return nf;
  if (auto merged = merge_front(t, nf))
    return *merged;
  const std::size_t n = nf.size();
  if (!is_corner(n, t.i, t.j))
    return absorb_levi(t, nf);
  NormalForm cur = nf;
  auto letters = commutator_letters(t, 1);
  for (std::size_t k = letters.size(); k-- > 0;)
    cur = absorb_levi(letters[k], cur);
  return cur;
}

NormalForm AbsorptionEngine::absorb_levi(const Transvection &t, const NormalForm &nf) const {
  if (t.xi.is_zero())
    return nf;
  if (auto merged = merge_front(t, nf))
    return *merged;
  const std::size_t n = nf.size();
  if (n == 2) {
    Matrix target = apply_transvection(nf.product(), t, ApplySide::left);
    std::vector<Matrix> slots = base_(target);
    if (slots.size() != 2 * levels_)
      throw Error(errc::bad_pattern, "base factoriser returned the wrong slot count");
    return NormalForm(std::move(slots));
  }
  auto split = ParabolicSplit::containing(n, t.i, t.j);
  if (!split)
    throw Error(errc::corner_transvection, "corner letter reached the Levi step");
  Collected col = collect(nf, *split);
  const std::size_t off = split->levi_offset();
  const std::size_t m = split->levi_size();
  std::vector<Matrix> sub;
  sub.reserve(col.delta_word.size());
  for (const auto &d : col.delta_word)
    sub.push_back(d.block(off, m));
  NormalForm levi = absorb_any({t.i - off, t.j - off, t.xi}, NormalForm(std::move(sub)));
  std::vector<Matrix> delta_word;
  delta_word.reserve(levi.blocks().size());
  for (const auto &d : levi.blocks())
    delta_word.push_back(d.embed(n, off));
  return reinsert(delta_word, col.chunks, *split);
}

const AbsorptionEngine &sr1_engine() {
  static const AbsorptionEngine engine(2, [](const Matrix &g) {
    auto slots = sl2_slots(g);
    return std::vector<Matrix>(slots.begin(), slots.end());
  });
  return engine;
}

NormalForm absorb(const Transvection &t, const NormalForm &nf) {
  if (!nf.product().ring().has_sr1())
    throw Error(errc::capability_missing,
                nf.product().ring().name() + " has no stable rank 1 witness");
  return sr1_engine().absorb(t, nf);
}

} // namespace unitri
