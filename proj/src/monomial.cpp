#include "unitri/monomial.hpp"

#include "unitri/error.hpp"

#include <stdexcept>

namespace unitri {

namespace {

// Checks that right-multiplying by the four-letter move replaced the minor
// on rows (r, last) and columns (s, last) by diag(expected, 1) and left
// everything else alone.
void require_minor(const Matrix &before, const Matrix &after, std::size_t r, std::size_t s,
                   const Element &expected) {
  const std::size_t n = before.size(), last = n - 1;
  const Element one = before.ring().one(), zero = before.ring().zero();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Element want = before(i, j);
      if (i == r && j == s)
        want = expected;
      else if ((i == r || i == last) && (j == s || j == last))
        want = i == last && j == last ? one : zero;
      if (!(after(i, j) == want))
        throw std::logic_error("monomial step broke the minor identity at (" +
                               std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
}

NormalForm recurse(const Matrix &g) {
  const std::size_t n = g.size();
  const Ring &ring = g.ring();
  if (n == 1)
    return NormalForm::trivial(ring, 1);
  const std::size_t last = n - 1;
  const Element &b_nn = g(last, last);
  Matrix h = g;
  std::vector<SigmaChunk> chunks(2, {Matrix::identity(ring, n), Matrix::identity(ring, n)});

  if (!b_nn.is_one()) {
    auto right = [&](const Matrix &m, std::size_t i, std::size_t j, const Element &x) {
      return apply_transvection(m, {i, j, x}, ApplySide::right);
    };
    auto t = [&](std::size_t i, std::size_t j, const Element &x) {
      return Transvection{i, j, x}.matrix(n);
    };
    if (b_nn.is_zero()) {
      std::size_t r = 0, s = 0;
      while (g(r, last).is_zero())
        ++r;
      while (g(last, s).is_zero())
        ++s;
      const Element a = g(r, last), b = g(last, s), binv = b.inverse();
      h = right(right(right(g, s, last, binv), last, s, -b), s, last, binv);
      require_minor(g, h, r, s, -(a * b));
      // g = h t_sn(-b^-1) t_ns(b) t_sn(-b^-1)
      chunks[0] = {t(s, last, -binv), t(last, s, b)};
      chunks[1].v = t(s, last, -binv);
    } else {
      const std::size_t r = 0;
      std::size_t s = 0;
      while (g(r, s).is_zero())
        ++s;
      const Element a = g(r, s), b = b_nn, binv = b.inverse();
      const Element one = ring.one();
      h = right(g, last, s, binv);
      h = right(h, s, last, one - b);
      h = right(h, last, s, -one);
      h = right(h, s, last, -(binv * (one - b)));
      require_minor(g, h, r, s, a * b);
      // g = h t_sn(b^-1 (1-b)) t_ns(1) t_sn(b-1) t_ns(-b^-1)
      chunks[0] = {t(s, last, binv * (one - b)), t(last, s, one)};
      chunks[1] = {t(s, last, b - one), t(last, s, -binv)};
    }
  }

  NormalForm sub = recurse(h.block(0, last));
  std::vector<Matrix> delta_word;
  for (const auto &m : sub.blocks())
    delta_word.push_back(m.embed(n, 0));
  return reinsert(delta_word, chunks, ParabolicSplit(n, n - 1));
}

} // namespace

Matrix MonomialMatrix::to_matrix() const {
  if (perm.empty() || perm.size() != units.size())
    throw Error(errc::dimension_mismatch, "permutation and units differ in length");
  const std::size_t n = perm.size();
  Matrix m(units.front().ring(), n);
  std::vector<bool> seen(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    if (perm[j] >= n || seen[perm[j]])
      throw Error(errc::not_monomial, "not a permutation");
    seen[perm[j]] = true;
    if (!units[j].is_unit())
      throw Error(errc::not_monomial, units[j].to_string() + " is not a unit");
    m.set(perm[j], j, units[j]);
  }
  return m;
}

MonomialMatrix MonomialMatrix::from_matrix(const Matrix &g) {
  const std::size_t n = g.size();
  MonomialMatrix out{std::vector<std::size_t>(n), std::vector<Element>(n, g.ring().zero())};
  std::vector<bool> row_used(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (g(i, j).is_zero())
        continue;
      if (++count > 1 || row_used[i] || !g(i, j).is_unit())
        throw Error(errc::not_monomial, "column " + std::to_string(j + 1) +
                                            " is not a single unit");
      row_used[i] = true;
      out.perm[j] = i;
      out.units[j] = g(i, j);
    }
    if (count == 0)
      throw Error(errc::not_monomial, "column " + std::to_string(j + 1) + " is zero");
  }
  return out;
}

NormalForm monomial_normal_form(const Matrix &g) {
  MonomialMatrix::from_matrix(g);
  if (!det(g).is_one())
    throw Error(errc::not_sl, "determinant is " + det(g).to_string());
  NormalForm nf = recurse(g);
  if (!(nf.product() == g))
    throw std::logic_error("monomial normal form does not reproduce the input");
  return nf;
}

Factorisation factor_monomial(const MonomialMatrix &g) {
  return factor_monomial(g.to_matrix());
}

Factorisation factor_monomial(const Matrix &g) {
  return monomial_normal_form(g).to_factorisation();
}

Factorisation factor_torus(std::span<const Element> d) {
  if (d.empty())
    throw Error(errc::dimension_mismatch, "empty diagonal");
  Element prod = d.front().ring().one();
  for (const auto &x : d) {
    if (!x.is_unit())
      throw Error(errc::not_a_unit, x.to_string() + " is not a unit");
    prod = prod * x;
  }
  if (!prod.is_one())
    throw Error(errc::det_not_one, "product of the diagonal is " + prod.to_string());
  return factor_monomial(Matrix::diagonal(d));
}

} // namespace unitri
