#include "unitri/numtheory.hpp"

#include "unitri/error.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

namespace unitri {

namespace {

constexpr std::array<unsigned long, 13> kWitnessBases = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

// Deterministic for n < 3317044064679887385961981 with the bases above.
const mpz_class &deterministic_bound() {
  static const mpz_class bound("3317044064679887385961981");
  return bound;
}

mpz_class powm(const mpz_class &base, const mpz_class &exp, const mpz_class &mod) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

mpz_class mod(const mpz_class &a, const mpz_class &m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool miller_rabin_round(const mpz_class &n, const mpz_class &d, unsigned long s,
                        const mpz_class &a) {
  mpz_class x = powm(a, d, n);
  const mpz_class n1 = n - 1;
  if (x == 1 || x == n1)
    return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n1)
      return true;
  }
  return false;
}

mpz_class pollard_brent(const mpz_class &n) {
  if (mpz_even_p(n.get_mpz_t()))
    return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, g = 1, q = 1, ys;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto f = [&](const mpz_class &v) { return mpz_class((v * v + c) % n); };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i)
        y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * abs(x - y) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        mpz_class diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n)
      return g;
  }
}

void factor_into(const mpz_class &n, std::vector<mpz_class> &out) {
  if (n == 1)
    return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  mpz_class f = pollard_brent(n);
  factor_into(f, out);
  factor_into(mpz_class(n / f), out);
}

// Solves g^x = h where g has prime order ell; x in [0, ell).
mpz_class bsgs_prime_order(const mpz_class &g, const mpz_class &h,
                           const mpz_class &ell, const mpz_class &q) {
  if (ell <= 64) {
    mpz_class cur = 1;
    for (mpz_class x = 0; x < ell; ++x) {
      if (cur == h)
        return x;
      cur = cur * g % q;
    }
    throw Error(errc::no_solution, "element not in the subgroup");
  }
  mpz_class m;
  mpz_sqrt(m.get_mpz_t(), ell.get_mpz_t());
  m += 1;
  if (!m.fits_ulong_p() || m > 50'000'000)
    throw Error(errc::out_of_range,
                "discrete logarithm subgroup of order " + ell.get_str() +
                    " is beyond desk scale");
  const unsigned long steps = m.get_ui();
  std::unordered_multimap<unsigned long, unsigned long> baby;
  baby.reserve(steps);
  mpz_class cur = 1;
  for (unsigned long j = 0; j < steps; ++j) {
    baby.emplace(mpz_get_ui(cur.get_mpz_t()), j);
    cur = cur * g % q;
  }
  mpz_class ginv;
  mpz_invert(ginv.get_mpz_t(), g.get_mpz_t(), q.get_mpz_t());
  const mpz_class factor = powm(ginv, m, q);
  mpz_class gamma = h;
  for (unsigned long i = 0; i < steps; ++i) {
    auto [lo, hi] = baby.equal_range(mpz_get_ui(gamma.get_mpz_t()));
    for (auto it = lo; it != hi; ++it) {
      if (powm(g, mpz_class(it->second), q) == gamma)
        return mpz_class(mpz_class(i) * m + it->second) % ell;
    }
    gamma = gamma * factor % q;
  }
  throw Error(errc::no_solution, "element not in the subgroup");
}

} // namespace

bool is_prime(const mpz_class &q) {
  if (q < 2)
    return false;
  for (unsigned long b : kWitnessBases) {
    if (q == b)
      return true;
    if (mpz_divisible_ui_p(q.get_mpz_t(), b))
      return false;
  }
  mpz_class d = q - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (unsigned long b : kWitnessBases)
    if (!miller_rabin_round(q, d, s, mpz_class(b)))
      return false;
  if (q >= deterministic_bound())
    return mpz_probab_prime_p(q.get_mpz_t(), 32) > 0;
  return true;
}

std::vector<mpz_class> factorize(const mpz_class &m) {
  if (m < 2)
    throw Error(errc::out_of_range, "factorize requires m >= 2, got " + m.get_str());
  std::vector<mpz_class> out;
  mpz_class n = m;
  for (unsigned long p = 2; p < 1000; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.emplace_back(p);
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  factor_into(n, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<mpz_class> prime_divisors(const mpz_class &m) {
  auto f = factorize(m);
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

bool is_primitive_root(const mpz_class &p, const mpz_class &q) {
  if (q < 2 || !is_prime(q))
    throw Error(errc::out_of_range, q.get_str() + " is not prime");
  mpz_class r = mod(p, q);
  if (r == 0)
    throw Error(errc::out_of_range, q.get_str() + " divides " + p.get_str());
  if (q == 2)
    return true;
  const mpz_class order = q - 1;
  for (const auto &ell : prime_divisors(order))
    if (powm(r, mpz_class(order / ell), q) == 1)
      return false;
  return true;
}

mpz_class discrete_log(const mpz_class &p, const mpz_class &b, const mpz_class &q) {
  if (!is_primitive_root(p, q))
    throw Error(errc::no_solution,
                p.get_str() + " is not a primitive root modulo " + q.get_str());
  const mpz_class target = mod(b, q);
  if (target == 0)
    throw Error(errc::no_solution, q.get_str() + " divides " + b.get_str());
  const mpz_class g = mod(p, q);
  const mpz_class n = q - 1;
  if (n == 1)
    return 1;

  // Pohlig-Hellman: solve modulo each prime power, then combine by CRT.
  auto factors = factorize(n);
  mpz_class x = 0, modulus = 1;
  for (std::size_t i = 0; i < factors.size();) {
    const mpz_class ell = factors[i];
    unsigned long e = 0;
    while (i < factors.size() && factors[i] == ell) {
      ++e;
      ++i;
    }
    mpz_class ell_e;
    mpz_pow_ui(ell_e.get_mpz_t(), ell.get_mpz_t(), e);
    const mpz_class cofactor = n / ell_e;
    const mpz_class g_sub = powm(g, cofactor, q);
    const mpz_class h_sub = powm(target, cofactor, q);
    mpz_class ell_pow_top;
    mpz_pow_ui(ell_pow_top.get_mpz_t(), ell.get_mpz_t(), e - 1);
    const mpz_class gamma = powm(g_sub, ell_pow_top, q);
    mpz_class g_sub_inv;
    mpz_invert(g_sub_inv.get_mpz_t(), g_sub.get_mpz_t(), q.get_mpz_t());

    mpz_class digits = 0, ell_k = 1;
    for (unsigned long k = 0; k < e; ++k) {
      mpz_class shift;
      mpz_pow_ui(shift.get_mpz_t(), ell.get_mpz_t(), e - 1 - k);
      mpz_class reduced = h_sub * powm(g_sub_inv, digits, q) % q;
      mpz_class hk = powm(reduced, shift, q);
      mpz_class dk = bsgs_prime_order(gamma, hk, ell, q);
      digits += dk * ell_k;
      ell_k *= ell;
    }
    // x = x (mod modulus), x = digits (mod ell_e)
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), ell_e.get_mpz_t());
    mpz_class t = mod(mpz_class((digits - x) * inv), ell_e);
    x += modulus * t;
    modulus *= ell_e;
  }
  x = mod(x, n);
  if (x == 0)
    x = n;
  if (powm(g, x, q) != target)
    throw Error(errc::no_solution, "discrete logarithm check failed");
  return x;
}

PrimeSearchResult find_prime_with_primitive_root(const mpz_class &c,
                                                 const mpz_class &d,
                                                 const mpz_class &p,
                                                 std::uint64_t k_max) {
  const int direction = d < 0 ? -1 : 1;
  for (std::uint64_t step = 1; step <= k_max; ++step) {
    mpz_class k = mpz_class(static_cast<unsigned long>(step)) * direction;
    mpz_class q = c + d * k;
    if (q <= 2 || q == p)
      continue;
    if (d != 0 && mpz_divisible_p(d.get_mpz_t(), q.get_mpz_t()))
      continue;
    if (mpz_divisible_p(p.get_mpz_t(), q.get_mpz_t()))
      continue;
    if (!is_prime(q))
      continue;
    if (is_primitive_root(p, q))
      return {k, q};
    if (d == 0)
      break;
  }
  throw Error(errc::search_exhausted,
              "no prime q = " + c.get_str() + " + " + d.get_str() +
                  "*k with primitive root " + p.get_str() + " for |k| <= " +
                  std::to_string(k_max) +
                  "; infinitely many exist under the Generalised Riemann "
                  "Hypothesis, raise the search bound");
}

} // namespace unitri
