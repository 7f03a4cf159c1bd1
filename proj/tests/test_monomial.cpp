#include "doctest.h"

#include "test_support.hpp"
#include "unitri/error.hpp"
#include "unitri/monomial.hpp"

#include <algorithm>
#include <numeric>

using namespace unitri;
using namespace testing_support;

TEST_CASE("factor_monomial examples") {
  Ring z = Ring::integers();
  Matrix w = Matrix::from_ints(z, {{0, 1}, {-1, 0}});
  Factorisation f = factor_monomial(w);
  CHECK(f.pattern() == "U L U");
  CHECK(f.blocks[0].mat == Transvection{0, 1, z.one()}.matrix(2));
  CHECK(f.blocks[1].mat == Transvection{1, 0, -z.one()}.matrix(2));
  CHECK(f.blocks[2].mat == Transvection{0, 1, z.one()}.matrix(2));
  CHECK(factor_monomial(Matrix::identity(z, 4)).length() == 0);

  MonomialMatrix cycle{{1, 2, 0}, {z.one(), z.one(), z.one()}};
  Matrix c = cycle.to_matrix();
  CHECK(det(c).is_one());
  Factorisation fc = factor_monomial(cycle);
  CHECK(verify_factorisation(fc).ok);
  CHECK(fc.length() <= 4);
  CHECK(MonomialMatrix::from_matrix(c).perm == cycle.perm);
}

TEST_CASE("factor_monomial errors") {
  Ring z = Ring::integers();
  try {
    factor_monomial(Matrix::from_ints(z, {{1, 1}, {0, 1}}));
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == errc::not_monomial);
  }
  try {
    factor_monomial(Matrix::from_ints(z, {{0, 1}, {1, 0}}));
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == errc::not_sl);
  }
  try {
    factor_monomial(Matrix::from_ints(z, {{2, 0}, {0, 1}}));
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == errc::not_monomial);
  }
}

TEST_CASE("signed permutation matrices over Z, n <= 4") {
  Ring z = Ring::integers();
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (unsigned signs = 0; signs < (1u << n); ++signs) {
        MonomialMatrix mm{perm, {}};
        for (std::size_t j = 0; j < n; ++j)
          mm.units.push_back(z.from_int(signs >> j & 1 ? -1 : 1));
        Matrix g = mm.to_matrix();
        if (!det(g).is_one())
          continue;
        Factorisation f = factor_monomial(g);
        REQUIRE(verify_factorisation(f).ok);
        CHECK(fits(f, 4));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("factor_torus") {
  Ring r = Ring::zmod(5);
  std::vector<Element> d{r.from_int(2), r.from_int(3)};
  Factorisation f = factor_torus(d);
  CHECK(verify_factorisation(f).ok);
  CHECK(f.target == Matrix::diagonal(d));
  std::vector<Element> ones(3, r.one());
  CHECK(factor_torus(ones).length() == 0);
  Ring r7 = Ring::zmod(7);
  std::vector<Element> d7(3, r7.from_int(2));
  Factorisation f7 = factor_torus(d7);
  CHECK(verify_factorisation(f7).ok);
  CHECK(f7.length() <= 4);
  std::vector<Element> bad{r.from_int(2), r.from_int(2)};
  try {
    factor_torus(bad);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == errc::det_not_one);
  }
  std::vector<Element> zero{r.zero(), r.one()};
  try {
    factor_torus(zero);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == errc::not_a_unit);
  }
}

TEST_CASE("all torus elements of SL(n, Z/m), n <= 3, m <= 9") {
  for (long m = 2; m <= 9; ++m) {
    Ring r = Ring::zmod(m);
    std::vector<Element> units;
    for (long a = 0; a < m; ++a)
      if (r.from_int(a).is_unit())
        units.push_back(r.from_int(a));
    for (const auto &a : units) {
      std::vector<Element> d2{a, a.inverse()};
      Factorisation f2 = factor_torus(d2);
      CHECK(verify_factorisation(f2).ok);
      CHECK(fits(f2, 4));
      for (const auto &b : units) {
        std::vector<Element> d3{a, b, (a * b).inverse()};
        Factorisation f3 = factor_torus(d3);
        CHECK(verify_factorisation(f3).ok);
        CHECK(fits(f3, 4));
      }
    }
  }
}

TEST_CASE("monomial matrices over other rings") {
  std::mt19937_64 rng(17);
  Ring q = Ring::rationals();
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 4;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    MonomialMatrix mm{perm, {}};
    Element prod = q.one();
    for (std::size_t j = 0; j + 1 < n; ++j) {
      Element u = q.from_int(static_cast<long>(rng() % 7) + 1) *
                  q.from_int(static_cast<long>(rng() % 5) + 1).inverse();
      mm.units.push_back(u);
      prod = prod * u;
    }
    mm.units.push_back(q.one());
    Element d = det(mm.to_matrix());
    mm.units.back() = d.inverse();
    Factorisation f = factor_monomial(mm);
    CHECK(verify_factorisation(f).ok);
    CHECK(fits(f, 4));
  }
}
