#include "unitri/error.hpp"
#include "unitri/monomial.hpp"
#include "unitri/numtheory.hpp"
#include "unitri/shears.hpp"
#include "unitri/sl2.hpp"
#include "unitri/verify.hpp"
#include "unitri/zp.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

using namespace unitri;

namespace {

/// Result of one criterion; detail names the first failure.
struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string &why) {
    if (ok)
      detail = why;
    ok = false;
  }
};

bool alternates_within(const Factorisation &f, std::size_t max_len) {
  return verify_factorisation(f).ok && f.length() <= max_len;
}

/// Alternating and short enough to fit the four-slot pattern U L U L.
bool fits_ulul(const Factorisation &f) {
  if (!verify_factorisation(f).ok)
    return false;
  std::size_t slots = f.length() + (f.length() > 0 && f.blocks[0].side == Side::lower);
  return slots <= 4;
}

std::vector<Matrix> all_sl2(long m) {
  Ring r = Ring::zmod(m);
  std::vector<Matrix> out;
  for (long a = 0; a < m; ++a)
    for (long b = 0; b < m; ++b)
      for (long c = 0; c < m; ++c)
        for (long d = 0; d < m; ++d)
          if (((a * d - b * c) % m + m) % m == 1 % m)
            out.push_back(Matrix::from_ints(r, {{a, b}, {c, d}}));
  return out;
}

Outcome length_four_exhaustive() {
  Outcome o;
  for (long m = 2; m <= 9; ++m) {
    for (const Matrix &g : all_sl2(m)) {
      Factorisation f = factor_sl(g);
      if (!(f.product() == g) || !alternates_within(f, 4))
        o.fail("factor_sl over Z/" + std::to_string(m) + " on " + g.to_string());
    }
    if (!enumerate_sets(Ring::zmod(m), 2).length4_complete)
      o.fail("(U U-)^2 != SL(2, Z/" + std::to_string(m) + ")");
  }
  return o;
}

Outcome sharpness() {
  Outcome o;
  for (long m = 3; m <= 9; ++m) {
    auto e = enumerate_sets(Ring::zmod(m), 2);
    if (!e.sharp || e.ulu_torus != 1)
      o.fail("U U- U meets the torus in " + std::to_string(e.ulu_torus) + " elements over Z/" +
             std::to_string(m));
    if (e.length3_complete || e.ulu >= e.sl)
      o.fail("U U- U covers SL(2, Z/" + std::to_string(m) + ")");
  }
  return o;
}

Outcome boolean_length_three() {
  Outcome o;
  for (std::size_t k = 1; k <= 3; ++k) {
    auto e = enumerate_sets(Ring::product(std::vector<mpz_class>(k, 2)), 2);
    if (!e.length3_complete)
      o.fail("U U- U misses part of SL(2, F2^" + std::to_string(k) + ")");
  }
  return o;
}

Outcome rank_reduction() {
  Outcome o;
  for (std::size_t n : {3, 4, 5})
    for (long m : {4, 6, 9, 101}) {
      Ring r = Ring::zmod(m);
      for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto s = random_sl(r, n, 4 * n * n, seed * 1000 + n * 10 + m);
        Factorisation f = factor_sl(s.matrix);
        if (!(f.product() == s.matrix) || !alternates_within(f, 4))
          o.fail("factor_sl n=" + std::to_string(n) + " m=" + std::to_string(m) +
                 " seed=" + std::to_string(seed));
      }
    }
  return o;
}

Outcome signed_permutations() {
  Outcome o;
  Ring z = Ring::integers();
  for (std::size_t n = 2; n <= 5; ++n) {
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
        if (!(f.product() == g) || !fits_ulul(f))
          o.fail("factor_monomial on " + g.to_string());
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return o;
}

Outcome torus_identities() {
  Outcome o;
  auto check = [&](const Element &eps) {
    const Ring &r = eps.ring();
    std::vector<Element> d{eps, eps.inverse()};
    Matrix want = Matrix::diagonal(d);
    Factorisation f4 = torus4(eps), f5 = torus5(eps);
    if (!(f4.product() == want) || f4.length() > 4 || !verify_factorisation(f4).ok)
      o.fail("torus4 over " + r.name() + " at " + eps.to_string());
    if (!(f5.product() == want) || f5.length() > 5 || !verify_factorisation(f5).ok)
      o.fail("torus5 over " + r.name() + " at " + eps.to_string());
  };
  Ring z101 = Ring::zmod(101);
  for (long a = 1; a < 101; ++a)
    check(z101.from_int(a));
  Ring q = Ring::rationals();
  std::mt19937_64 rng(6);
  for (int k = 0; k < 100; ++k) {
    long num = static_cast<long>(rng() % 2001) - 1000;
    if (num == 0)
      num = 1;
    mpq_class v(num, static_cast<unsigned long>(rng() % 1000) + 1);
    v.canonicalize();
    check(Element(q, v));
  }
  return o;
}

Outcome gauss_length_five() {
  Outcome o;
  const long moduli[] = {2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 101};
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    std::size_t n = 2 + seed % 3;
    long m = moduli[seed % std::size(moduli)];
    auto s = random_sl(Ring::zmod(m), n, 3 * n * n, seed);
    const Matrix &g = s.matrix;
    GaussDecomposition d = gauss(g);
    auto t = classify(d.t);
    bool ok = is_upper_unitriangular(d.u.mat) && is_lower_unitriangular(d.v.mat) &&
              is_upper_unitriangular(d.u2.mat) && t.diagonal && t.sl &&
              d.u.mat * d.t * d.v.mat * d.u2.mat == g;
    if (!ok)
      o.fail("gauss n=" + std::to_string(n) + " m=" + std::to_string(m));
    Factorisation f = factor5(g);
    if (!(f.product() == g) || !alternates_within(f, 5))
      o.fail("factor5 n=" + std::to_string(n) + " m=" + std::to_string(m));
  }
  return o;
}

Outcome zp_length_five() {
  Outcome o;
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
    Ring r = Ring::localized(p);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      auto s = random_sl(r, 2, 6, seed * 31 + p);
      try {
        Lemma6Result res = factor_sl2_zp(s.matrix, kDefaultKMax);
        const auto &f = res.factorisation;
        if (!(f.product() == s.matrix) || !alternates_within(f, 5))
          o.fail("factor_sl2_zp p=" + std::to_string(p) + " seed=" + std::to_string(seed));
        if (res.trace.kind != Lemma6Case::degenerate && res.trace.k > 1'000'000)
          o.fail("prime search needed k=" + res.trace.k.get_str());
      } catch (const Error &e) {
        o.fail(std::string("p=") + std::to_string(p) + " seed=" + std::to_string(seed) + ": " +
               e.what());
      }
    }
  }
  Ring z2 = Ring::localized(2);
  Matrix g = Matrix::from_rows(z2, {{z2.parse_element("1"), z2.parse_element("3")},
                                    {z2.parse_element("1*2^-1"), z2.parse_element("5*2^-1")}});
  Lemma6Result w = factor_sl2_zp(g);
  const auto &t = w.trace;
  bool exact = t.kind == Lemma6Case::case1 && t.alpha == 0 && t.beta == 0 && t.k == 4 &&
               t.q == 13 && t.u == 4 && t.l == 1 && t.theta &&
               *t.theta == z2.parse_element("-3*2^-2") &&
               w.factorisation.pattern() == "L U L U L" && w.factorisation.product() == g;
  if (!exact)
    o.fail("worked instance trace differs");
  return o;
}

Outcome prime_search() {
  Outcome o;
  auto r = find_prime_with_primitive_root(1, 3, 2, kDefaultKMax);
  if (r.q != 13 || r.k != 4)
    o.fail("find_prime(1, 3, 2) gave k=" + r.k.get_str() + " q=" + r.q.get_str());
  if (!is_prime(13) || is_prime(91))
    o.fail("is_prime");
  if (factorize(12) != std::vector<mpz_class>{2, 2, 3})
    o.fail("factorize(12)");
  if (!is_primitive_root(2, 13) || is_primitive_root(2, 7) || !is_primitive_root(3, 2))
    o.fail("is_primitive_root");
  if (discrete_log(2, 3, 13) != 4 || discrete_log(2, 1, 13) != 12 || discrete_log(2, 2, 13) != 1)
    o.fail("discrete_log");
  try {
    find_prime_with_primitive_root(1, 3, 2, 0);
    o.fail("k_max = 0 did not exhaust");
  } catch (const Error &e) {
    if (e.code() != errc::search_exhausted)
      o.fail("k_max = 0 raised " + std::string(to_string(e.code())));
  }
  return o;
}

Outcome shears() {
  Outcome o;
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int k = 0; k < 1000;) {
    double phi = angle(rng);
    if (std::abs(std::cos(phi / 2)) <= 0.1)
      continue;
    if (paeth2(phi).max_abs_error > 1e-12)
      o.fail("paeth2 residual at phi=" + std::to_string(phi));
    ++k;
  }
  for (int k = 0; k < 1000;) {
    EulerAngles e{angle(rng), angle(rng), angle(rng)};
    if (e.sum_cosine() <= 0.1 || e.half_beta_cosine() <= 0.1)
      continue;
    auto d = toffoli_quick3(e);
    if (d.max_abs_error > 1e-10)
      o.fail("toffoli_quick3 residual " + std::to_string(d.max_abs_error));
    if (orthogonality_residual(euler3(e)) > 1e-12)
      o.fail("euler3 orthogonality");
    ++k;
  }
  return o;
}

Outcome commutator_width() {
  Outcome o;
  for (long m = 2; m <= 9; ++m)
    for (const Matrix &g : all_sl2(m)) {
      try {
        auto c = commutator3(g, factor_sl(g));
        if (!(c.commutator * c.upper.mat * c.lower.mat == g))
          o.fail("commutator identity over Z/" + std::to_string(m));
      } catch (const Error &e) {
        o.fail(std::string("commutator3: ") + e.what());
      }
    }
  return o;
}

struct Criterion {
  int id;
  const char *name;
  double limit_seconds;
  std::function<Outcome()> run;
};

} // namespace

int main() {
  const Criterion criteria[] = {
      {1, "length 4 on all of SL(2, Z/m), m = 2..9", 30, length_four_exhaustive},
      {2, "U U- U meets the torus trivially, m = 3..9", 10, sharpness},
      {3, "length 3 over Boolean rings F2^k, k <= 3", 10, boolean_length_three},
      {4, "rank reduction, n = 3..5, m in {4, 6, 9, 101}", 120, rank_reduction},
      {5, "signed permutation matrices over Z, n <= 5", 30, signed_permutations},
      {6, "torus identities over Z/101 and Q", 5, torus_identities},
      {7, "Gauss decomposition and length 5, n <= 4", 60, gauss_length_five},
      {8, "length 5 over Z[1/p], p in {2, 3, 5, 7}, and the worked trace", 120, zp_length_five},
      {9, "prime search, primitivity and discrete logs", 5, prime_search},
      {10, "shear residuals", 10, shears},
      {11, "commutator splitting of every length-4 output from 1", 10, commutator_width},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs >= c.limit_seconds)
      o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_seconds));
    std::printf("%s %2d %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.ok ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
