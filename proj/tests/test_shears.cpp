#include "doctest.h"

#include "unitri/error.hpp"
#include "unitri/shears.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace unitri;

namespace {

bool unit_diagonal(const RealMatrix &m) {
  for (std::size_t i = 0; i < m.n; ++i)
    if (std::abs(m(i, i) - 1.0) > 1e-14)
      return false;
  return true;
}

bool triangular(const RealMatrix &m, Side side) {
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) {
      bool off = side == Side::upper ? i > j : i < j;
      if (off && m(i, j) != 0.0)
        return false;
    }
  return true;
}

} // namespace

TEST_CASE("paeth2 examples") {
  const double pi = std::numbers::pi;
  auto d = paeth2(pi / 2);
  REQUIRE(d.factors.size() == 3);
  CHECK(d.factors[0].mat(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.factors[1].mat(1, 0) == doctest::Approx(-1.0).epsilon(1e-15));
  auto p = d.product();
  CHECK(std::abs(p(0, 0)) < 1e-15);
  CHECK(std::abs(p(0, 1) - 1) < 1e-15);
  CHECK(std::abs(p(1, 0) + 1) < 1e-15);
  CHECK(std::abs(p(1, 1)) < 1e-15);

  auto z = paeth2(0.0);
  for (const auto &f : z.factors)
    CHECK(max_abs_diff(f.mat, RealMatrix::identity(2)) == 0.0);

  try {
    paeth2(pi - 1e-16);
    FAIL("expected near_singular");
  } catch (const Error &e) {
    CHECK(e.code() == errc::near_singular);
  }
}

TEST_CASE("paeth2 sweep") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  int checked = 0;
  while (checked < 1000) {
    double phi = angle(rng);
    if (std::abs(std::cos(phi / 2)) <= 0.1)
      continue;
    auto d = paeth2(phi);
    CHECK(d.max_abs_error <= 1e-12);
    CHECK(max_abs_diff(d.factors[0].mat, d.factors[2].mat) == 0.0);
    CHECK(d.factors[0].side == Side::upper);
    CHECK(d.factors[1].side == Side::lower);
    ++checked;
  }
}

TEST_CASE("euler3") {
  CHECK(max_abs_diff(euler3({0, 0, 0}), RealMatrix::identity(3)) == 0.0);

  double b = 0.7;
  auto g = euler3({0, b, 0});
  CHECK(g(0, 0) == doctest::Approx(std::cos(b)));
  CHECK(g(0, 2) == doctest::Approx(std::sin(b)));
  CHECK(g(2, 0) == doctest::Approx(-std::sin(b)));
  CHECK(g(2, 2) == doctest::Approx(std::cos(b)));
  CHECK(g(1, 1) == doctest::Approx(1.0));
  CHECK(g(0, 1) == 0.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(-10, 10);
  for (int k = 0; k < 200; ++k) {
    auto r = euler3({angle(rng), angle(rng), angle(rng)});
    CHECK(orthogonality_residual(r) < 1e-12);
    CHECK(std::abs(det3(r) - 1) < 1e-12);
  }
}

TEST_CASE("toffoli_quick3 examples") {
  auto id = toffoli_quick3({0, 0, 0});
  for (const auto &f : id.factors)
    CHECK(max_abs_diff(f.mat, RealMatrix::identity(3)) == 0.0);

  auto flat = toffoli_quick3({0.9, 0, -0.9});
  for (const auto &f : flat.factors)
    CHECK(max_abs_diff(f.mat, RealMatrix::identity(3)) < 1e-15);

  for (EulerAngles bad : {EulerAngles{std::numbers::pi, 0.3, 0},
                          EulerAngles{0.2, std::numbers::pi, 0.1}}) {
    try {
      toffoli_quick3(bad);
      FAIL("expected near_singular");
    } catch (const Error &e) {
      CHECK(e.code() == errc::near_singular);
    }
  }
}

TEST_CASE("toffoli_quick3 sweep") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  int checked = 0;
  while (checked < 1000) {
    EulerAngles e{angle(rng), angle(rng), angle(rng)};
    if (e.sum_cosine() <= 0.1 || e.half_beta_cosine() <= 0.1)
      continue;
    auto d = toffoli_quick3(e);
    CHECK(d.max_abs_error <= 1e-10);
    REQUIRE(d.factors.size() == 3);
    CHECK(d.factors[0].side == Side::upper);
    CHECK(d.factors[1].side == Side::lower);
    CHECK(d.factors[2].side == Side::upper);
    for (const auto &f : d.factors) {
      CHECK(unit_diagonal(f.mat));
      CHECK(triangular(f.mat, f.side));
    }
    ++checked;
  }
}
