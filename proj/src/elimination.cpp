#include "unitri/elimination.hpp"

#include "unitri/error.hpp"
#include "unitri/monomial.hpp"
#include "unitri/parabolic.hpp"
#include "unitri/sl2.hpp"

#include <stdexcept>

namespace unitri {

namespace {

void require_sl(const Matrix &g) {
  if (!det(g).is_one())
    throw Error(errc::not_sl, "determinant is " + det(g).to_string());
}

void require_sr1(const Ring &ring) {
  if (!ring.has_sr1())
    throw Error(errc::capability_missing, ring.name() + " has no stable rank 1 witness");
}

void left(Matrix &g, Transvection t, std::vector<Transvection> &ops) {
  if (t.xi.is_zero())
    return;
  g = apply_transvection(g, t, ApplySide::left);
  ops.push_back(std::move(t));
}

std::size_t sr1_pivot(Matrix &g, std::size_t col, std::vector<Transvection> &ops) {
  const std::size_t n = g.size();
  for (std::size_t i = col; i < n; ++i)
    if (g(i, col).is_unit())
      return i;
  std::vector<Element> c;
  for (std::size_t i = col + 1; i < n; ++i)
    c.push_back(g(i, col));
  auto z = sr1_witness_vec(c, g(col, col));
  for (std::size_t i = col + 1; i < n; ++i)
    left(g, {col, i, z[i - col - 1]}, ops);
  if (!g(col, col).is_unit())
    throw std::logic_error("stable rank witness did not produce a unit pivot");
  return col;
}

// Gauss decomposition of an invertible matrix h = u t v u2.
struct GaussParts {
  Matrix u, t, v, u2;
};

GaussParts gauss_general(const Matrix &g) {
  const std::size_t n = g.size();
  const Ring &ring = g.ring();
  if (n == 1) {
    Matrix e = Matrix::identity(ring, 1);
    return {e, g, e, e};
  }
  const std::size_t last = n - 1;
  // Column operations make the south-east entry a unit.
  Matrix w = Matrix::identity(ring, n);
  if (!g(last, last).is_unit()) {
    std::vector<Element> c;
    for (std::size_t j = 0; j < last; ++j)
      c.push_back(g(last, j));
    auto x = sr1_witness_vec(c, g(last, last));
    for (std::size_t j = 0; j < last; ++j)
      w.set(j, last, x[j]);
  }
  const Matrix h = g * w;
  const Element eps = h(last, last), inv = eps.inverse();
  Matrix u1 = Matrix::identity(ring, n), v1 = Matrix::identity(ring, n);
  Matrix a(ring, last);
  for (std::size_t i = 0; i < last; ++i) {
    u1.set(i, last, h(i, last) * inv);
    v1.set(last, i, inv * h(last, i));
    for (std::size_t j = 0; j < last; ++j)
      a.set(i, j, h(i, j) - h(i, last) * inv * h(last, j));
  }
  GaussParts sub = gauss_general(a);
  // Move diag(u2', 1) to the right of the lower factor.
  Matrix u2inv = unitriangular_inverse(sub.u2);
  Matrix v1m = Matrix::identity(ring, n);
  for (std::size_t j = 0; j < last; ++j) {
    Element y = ring.zero();
    for (std::size_t k = 0; k < last; ++k)
      y = y + v1(last, k) * u2inv(k, j);
    v1m.set(last, j, y);
  }
  Matrix t = sub.t.embed(n, 0);
  t.set(last, last, eps);
  return {u1 * sub.u.embed(n, 0), std::move(t), sub.v.embed(n, 0) * v1m,
          sub.u2.embed(n, 0) * unitriangular_inverse(w)};
}

// Slot layout for a factorisation whose pattern fits the alternating
// template starting with `lead`.
std::vector<Matrix> to_slots(const Factorisation &f, std::size_t count, Side lead) {
  const Matrix e = Matrix::identity(f.target.ring(), f.target.size());
  std::vector<Matrix> slots(count, e);
  std::size_t start = !f.blocks.empty() && f.blocks.front().side != lead ? 1 : 0;
  if (start + f.blocks.size() > count)
    throw Error(errc::bad_pattern, "factorisation " + f.pattern() + " does not fit");
  for (std::size_t k = 0; k < f.blocks.size(); ++k)
    slots[start + k] = f.blocks[k].mat;
  return slots;
}

} // namespace

TransvectionWord eliminate_with(const Matrix &g, const PivotStrategy &pivot) {
  require_sl(g);
  const std::size_t n = g.size();
  const Ring &ring = g.ring();
  Matrix h = g;
  std::vector<Transvection> lefts, rights;
  for (std::size_t col = 0; col + 1 < n; ++col) {
    const std::size_t p = pivot(h, col, lefts);
    if (p != col) {
      left(h, {col, p, (ring.one() - h(col, col)) * h(p, col).inverse()}, lefts);
    } else if (!h(col, col).is_one()) {
      const Element eps = h(col, col);
      left(h, {col + 1, col, eps.inverse() * (ring.one() - h(col + 1, col))}, lefts);
      left(h, {col, col + 1, ring.one() - eps}, lefts);
    }
    if (!h(col, col).is_one())
      throw std::logic_error("pivot normalisation failed");
    for (std::size_t i = col + 1; i < n; ++i)
      left(h, {i, col, -h(i, col)}, lefts);
    for (std::size_t j = col + 1; j < n; ++j) {
      Transvection t{col, j, -h(col, j)};
      if (t.xi.is_zero())
        continue;
      h = apply_transvection(h, t, ApplySide::right);
      rights.push_back(std::move(t));
    }
  }
  if (!h.is_identity())
    throw std::logic_error("elimination did not reach the identity");
  // I = L_k ... L_1 g R_1 ... R_m
  TransvectionWord w{ring, n, {}};
  w.letters.reserve(lefts.size() + rights.size());
  for (const auto &t : lefts)
    w.letters.push_back(t.inverse());
  for (std::size_t k = rights.size(); k-- > 0;)
    w.letters.push_back(rights[k].inverse());
  return w;
}

TransvectionWord eliminate(const Matrix &g) {
  require_sl(g);
  require_sr1(g.ring());
  return eliminate_with(g, sr1_pivot);
}

TransvectionWord expand_corner(const Transvection &t, std::size_t n) {
  if (n < 3)
    throw Error(errc::dimension_too_small, "corner expansion needs n >= 3");
  const bool corner = (t.i == 0 && t.j == n - 1) || (t.i == n - 1 && t.j == 0);
  if (!corner)
    throw Error(errc::out_of_range, "not a corner transvection");
  return {t.xi.ring(), n, commutator_letters(t, 1)};
}

Factorisation factor_sl(const Matrix &g) {
  require_sl(g);
  const std::size_t n = g.size();
  const Ring &ring = g.ring();
  if (g.is_identity())
    return compact({}, g);
  if (is_upper_unitriangular(g))
    return compact({{Side::upper, g}}, g);
  if (is_lower_unitriangular(g))
    return compact({{Side::lower, g}}, g);
  require_sr1(ring);
  if (n == 2)
    return factor_sl2(g);
  TransvectionWord word = eliminate(g);
  NormalForm nf = sr1_engine().absorb_word(word.letters, NormalForm::trivial(ring, n, 2));
  if (!(nf.product() == g))
    throw std::logic_error("absorption lost the product");
  Factorisation f = nf.to_factorisation();
  f.word = std::move(word.letters);
  return f;
}

GaussDecomposition gauss(const Matrix &g) {
  require_sl(g);
  const Ring &ring = g.ring();
  const std::size_t n = g.size();
  if (is_unitriangular(g, Side::lower) || classify(g).diagonal) {
    Matrix e = Matrix::identity(ring, n);
    if (classify(g).diagonal)
      return {{Side::upper, e}, g, {Side::lower, e}, {Side::upper, e}};
    return {{Side::upper, e}, e, {Side::lower, g}, {Side::upper, e}};
  }
  require_sr1(ring);
  GaussParts p = gauss_general(g);
  if (!(p.u * p.t * p.v * p.u2 == g))
    throw std::logic_error("Gauss decomposition lost the product");
  return {{Side::upper, std::move(p.u)}, std::move(p.t), {Side::lower, std::move(p.v)},
          {Side::upper, std::move(p.u2)}};
}

Factorisation factor5(const Matrix &g) {
  GaussDecomposition d = gauss(g);
  std::vector<Element> diag;
  for (std::size_t i = 0; i < g.size(); ++i)
    diag.push_back(d.t(i, i));
  auto w = to_slots(factor_torus(diag), 4, Side::upper);
  return compact({{Side::upper, d.u.mat * w[0]},
                  {Side::lower, w[1]},
                  {Side::upper, w[2]},
                  {Side::lower, w[3] * d.v.mat},
                  {Side::upper, d.u2.mat}},
                 g);
}

} // namespace unitri
