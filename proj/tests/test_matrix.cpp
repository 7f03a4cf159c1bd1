#include "doctest.h"

#include "unitri/error.hpp"
#include "unitri/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace unitri;

namespace {

Matrix random_matrix(const Ring &r, std::size_t n, std::mt19937_64 &rng) {
  Matrix m(r, n);
  std::uniform_int_distribution<std::uint64_t> dist(0, r.size().get_ui() - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.set(i, j, r.element_at(dist(rng)));
  return m;
}

// Leibniz expansion, independent of the library determinant.
Element leibniz(const Matrix &g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Element total = g.ring().zero();
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j])
          ++inversions;
    Element term = g.ring().one();
    for (std::size_t i = 0; i < n; ++i)
      term = term * g(i, perm[i]);
    total = inversions % 2 ? total - term : total + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

} // namespace

TEST_CASE("apply_transvection examples") {
  Ring r = Ring::zmod(5);
  Matrix g = Matrix::from_ints(r, {{0, 1}, {4, 0}});
  CHECK(apply_transvection(g, {0, 1, r.from_int(4)}, ApplySide::right) ==
        Matrix::from_ints(r, {{0, 1}, {4, 1}}));
  Transvection t{1, 0, r.from_int(3)};
  CHECK(apply_transvection(Matrix::identity(r, 2), t, ApplySide::left) == t.matrix(2));
  Ring z = Ring::integers();
  CHECK(Transvection{0, 1, z.one()}.matrix(2) * Transvection{1, 0, z.one()}.matrix(2) ==
        Matrix::from_ints(z, {{2, 1}, {1, 1}}));
}

TEST_CASE("transvection application equals multiplication") {
  std::mt19937_64 rng(7);
  Ring r = Ring::zmod(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 4;
    Matrix g = random_matrix(r, n, rng);
    std::size_t i = rng() % n, j = rng() % n;
    if (i == j)
      j = (j + 1) % n;
    Transvection t{i, j, r.element_at(rng() % 9)};
    CHECK(apply_transvection(g, t, ApplySide::right) == g * t.matrix(n));
    CHECK(apply_transvection(g, t, ApplySide::left) == t.matrix(n) * g);
  }
}

TEST_CASE("determinant") {
  Ring r = Ring::zmod(5);
  CHECK(det(Matrix::from_ints(r, {{0, 1}, {4, 0}})).is_one());
  CHECK(det(Matrix::from_ints(r, {{2, 0}, {0, 3}})).is_one());
  for (std::size_t n = 1; n <= 5; ++n)
    CHECK(det(Matrix::identity(r, n)).is_one());
  std::mt19937_64 rng(11);
  for (long m : {4L, 6L, 9L}) {
    Ring rm = Ring::zmod(m);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 1 + trial % 5;
      Matrix a = random_matrix(rm, n, rng), b = random_matrix(rm, n, rng);
      CHECK(det(a * b) == det(a) * det(b));
      if (n <= 4)
        CHECK(det(a) == leibniz(a));
    }
  }
}

TEST_CASE("inverse and unitriangular inverse") {
  Ring q = Ring::rationals();
  Matrix g = Matrix::from_ints(q, {{2, 1, 0}, {1, 1, 3}, {0, 1, 1}});
  CHECK((g * inverse(g)).is_identity());
  Matrix u = Matrix::from_ints(q, {{1, 2, 3}, {0, 1, 4}, {0, 0, 1}});
  CHECK((u * unitriangular_inverse(u)).is_identity());
  CHECK((unitriangular_inverse(u.transpose()) * u.transpose()).is_identity());
  CHECK_THROWS_AS(inverse(Matrix::from_ints(Ring::zmod(6), {{2, 0}, {0, 1}})), Error);
}

TEST_CASE("classify") {
  Ring z = Ring::integers();
  MatrixFlags f = classify(Matrix::from_ints(z, {{1, 3}, {0, 1}}));
  CHECK(f.upper_unitriangular);
  CHECK(f.sl);
  CHECK_FALSE(f.monomial);
  f = classify(Matrix::from_ints(z, {{0, 1}, {-1, 0}}));
  CHECK(f.monomial);
  CHECK(f.sl);
  CHECK_FALSE(f.diagonal);
  f = classify(Matrix::from_ints(Ring::zmod(5), {{2, 0}, {0, 3}}));
  CHECK(f.diagonal);
  CHECK(f.monomial);
  CHECK(f.sl);
  CHECK_FALSE(f.identity);
  f = classify(Matrix::identity(z, 3));
  CHECK(f.identity);
  CHECK(f.upper_unitriangular);
  CHECK(f.lower_unitriangular);
  CHECK(f.diagonal);
}

TEST_CASE("verify_factorisation") {
  Ring r = Ring::zmod(5);
  auto t12 = [&](long x) { return Transvection{0, 1, r.from_int(x)}.matrix(2); };
  auto t21 = [&](long x) { return Transvection{1, 0, r.from_int(x)}.matrix(2); };
  Matrix target = Matrix::from_ints(r, {{0, 1}, {4, 0}});
  Factorisation f{{{Side::upper, t12(1)}, {Side::lower, t21(4)}, {Side::upper, t12(1)}},
                  target,
                  {}};
  VerifyReport rep = verify_factorisation(f);
  CHECK(rep.ok);
  CHECK(rep.pattern == "U L U");
  CHECK(rep.length == 3);

  Factorisation empty{{}, Matrix::identity(r, 2), {}};
  CHECK(verify_factorisation(empty).ok);
  CHECK(verify_factorisation(empty).length == 0);

  Factorisation twice{{{Side::upper, t12(1)}, {Side::upper, t12(1)}}, t12(2), {}};
  CHECK_FALSE(verify_factorisation(twice).ok);

  Factorisation wrong_side{{{Side::lower, t12(1)}}, t12(1), {}};
  CHECK_FALSE(verify_factorisation(wrong_side).ok);

  // Mutating any entry of any block must break verification.
  for (std::size_t b = 0; b < f.blocks.size(); ++b)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        Factorisation g = f;
        g.blocks[b].mat.set(i, j, g.blocks[b].mat(i, j) + r.one());
        CHECK_FALSE(verify_factorisation(g).ok);
      }
}

TEST_CASE("compact merges and prunes") {
  Ring r = Ring::zmod(7);
  Matrix e = Matrix::identity(r, 2);
  Matrix u = Transvection{0, 1, r.from_int(2)}.matrix(2);
  Matrix l = Transvection{1, 0, r.from_int(3)}.matrix(2);
  Factorisation f = compact({{Side::upper, u}, {Side::lower, e}, {Side::upper, u},
                             {Side::lower, l}, {Side::upper, e}},
                            u * u * l);
  CHECK(f.pattern() == "U L");
  CHECK(verify_factorisation(f).ok);
}

TEST_CASE("commutator letters") {
  Ring r = Ring::zmod(7);
  Transvection t{0, 2, r.from_int(3)};
  auto w = commutator_letters(t, 1);
  CHECK(w.size() == 4);
  CHECK(word_product(r, 3, w) == t.matrix(3));
  Transvection s{2, 0, r.from_int(5)};
  CHECK(word_product(r, 3, commutator_letters(s, 1)) == s.matrix(3));
}

TEST_CASE("reverse conjugation swaps sides") {
  Ring r = Ring::zmod(7);
  Matrix u = Matrix::from_ints(r, {{1, 2, 3}, {0, 1, 4}, {0, 0, 1}});
  CHECK(is_lower_unitriangular(reverse_conjugate(u)));
  CHECK(reverse_conjugate(reverse_conjugate(u)) == u);
}
