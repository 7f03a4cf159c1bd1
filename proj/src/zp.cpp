#include "unitri/zp.hpp"

#include "unitri/error.hpp"
#include "unitri/monomial.hpp"
#include "unitri/numtheory.hpp"
#include "unitri/parabolic.hpp"
#include "unitri/sl2.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <optional>
#include <stdexcept>

namespace unitri {

namespace {

void require_localized(const Ring &ring) {
  if (ring.kind() != RingKind::localized)
    throw Error(errc::capability_missing, ring.name() + " is not Z[1/p]");
}

void require_sl(const Matrix &g) {
  if (!det(g).is_one())
    throw Error(errc::not_sl, "determinant is " + det(g).to_string());
}

Element lift(const Ring &ring, const mpz_class &a, long v) {
  return Element(ring, LocalizedInteger(a, v, ring.prime()));
}

// u < q, and p^u must stay representable.
const mpz_class kMaxPrime{1UL << 26};

struct Core {
  mpz_class k, q, u, l;
  Element k_param, l_param, theta, y2, s;
};

// c and b of the progression q = c + b*k searched for the top row of g.
std::pair<mpz_class, mpz_class> progression(const Matrix &g) {
  const unsigned long p = g.ring().prime();
  const LocalizedInteger &x = g(0, 0).localized();
  const LocalizedInteger &y = g(0, 1).localized();
  const long alpha = x.valuation(), beta = y.valuation();
  return {x.unit_part() * pow_ui(p, static_cast<unsigned long>(std::max(alpha - beta, 0L))),
          y.unit_part()};
}

PrimeSearchResult search_prime(const Matrix &g, std::uint64_t k_max) {
  auto [c, b] = progression(g);
  return find_prime_with_primitive_root(c, b, g.ring().prime(), k_max);
}

// Multipliers t21(k') t12(l') t21(theta) t12(-y2) turn g into t21(s), for a
// 2x2 matrix whose top row has no zero entry. found is search_prime(g).
Core lemma6_core(const Matrix &g, const PrimeSearchResult &found) {
  const Ring &ring = g.ring();
  const unsigned long p = ring.prime();
  const long alpha = g(0, 0).localized().valuation();
  const long beta = g(0, 1).localized().valuation();
  const long m = std::min(alpha, beta);
  const mpz_class b = progression(g).second;
  const mpz_class &k = found.k, &q = found.q;
  const mpz_class u = discrete_log(p, b, q);
  const mpz_class pu = pow_ui(p, u.get_ui());
  const mpz_class l = (pu - b) / q;
  if (l * q != pu - b)
    throw std::logic_error("discrete logarithm does not solve the congruence");

  Core out{k, q, u, l, lift(ring, k, std::min(0L, alpha - beta)), lift(ring, l, beta - m),
           ring.zero(), ring.zero(), ring.zero()};
  Matrix h = apply_transvection(g, {1, 0, out.k_param}, ApplySide::right);
  if (!(h(0, 0) == lift(ring, q, m)))
    throw std::logic_error("first step did not reach p^m q");
  h = apply_transvection(h, {0, 1, out.l_param}, ApplySide::right);
  out.y2 = h(0, 1);
  if (!(out.y2 == lift(ring, 1, beta + u.get_si())))
    throw std::logic_error("second step did not reach a power of p");
  out.theta = (ring.one() - h(0, 0)) * out.y2.inverse();
  h = apply_transvection(h, {1, 0, out.theta}, ApplySide::right);
  if (!h(0, 0).is_one())
    throw std::logic_error("third step did not reach 1");
  h = apply_transvection(h, {0, 1, -out.y2}, ApplySide::right);
  if (!is_lower_unitriangular(h))
    throw std::logic_error("fourth step did not reach a lower unitriangular matrix");
  out.s = h(1, 0);
  return out;
}

Matrix t12(const Element &x) { return Transvection{0, 1, x}.matrix(2); }
Matrix t21(const Element &x) { return Transvection{1, 0, x}.matrix(2); }

Lemma6Result degenerate(const Matrix &g) {
  Lemma6Result res{compact({}, g), {}};
  res.trace.kind = Lemma6Case::degenerate;
  res.trace.alpha = g(0, 0).is_zero() ? 0 : g(0, 0).localized().valuation();
  res.trace.beta = g(0, 1).is_zero() ? 0 : g(0, 1).localized().valuation();
  if (classify(g).monomial) {
    res.factorisation = factor_monomial(g);
    return res;
  }
  // Keep the diagonal or antidiagonal pair that is made of units.
  const Ring &ring = g.ring();
  Matrix mono(ring, 2);
  if (g(0, 0).is_zero() || g(1, 1).is_zero()) {
    mono.set(0, 1, g(0, 1));
    mono.set(1, 0, g(1, 0));
  } else {
    mono.set(0, 0, g(0, 0));
    mono.set(1, 1, g(1, 1));
  }
  Matrix rest = inverse(mono) * g;
  const Side side = is_upper_unitriangular(rest) ? Side::upper : Side::lower;
  if (!is_unitriangular(rest, side))
    throw std::logic_error("degenerate split left a non-unitriangular factor");
  NormalForm nf = monomial_normal_form(mono);
  std::vector<Block> blocks;
  for (std::size_t k = 0; k < 4; ++k)
    blocks.push_back({NormalForm::side_of(k), nf.blocks()[k]});
  blocks.push_back({side, rest});
  res.factorisation = compact(std::move(blocks), g);
  return res;
}

mpz_class rounded_quotient(const mpz_class &a, const mpz_class &b) {
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * abs(r) > abs(b))
    q += sgn(r) * sgn(b);
  return q;
}

std::size_t euclid_pivot(Matrix &g, std::size_t col, std::vector<Transvection> &ops) {
  const std::size_t n = g.size();
  const Ring &ring = g.ring();
  for (;;) {
    std::optional<std::size_t> best;
    for (std::size_t i = col; i < n; ++i) {
      const Element &x = g(i, col);
      if (x.is_unit())
        return i;
      if (x.is_zero())
        continue;
      if (!best || abs(x.localized().unit_part()) <
                       abs(g(*best, col).localized().unit_part()))
        best = i;
    }
    if (!best)
      throw Error(errc::not_sl, "singular column");
    const LocalizedInteger y = g(*best, col).localized();
    bool reduced = false;
    for (std::size_t i = col; i < n; ++i) {
      if (i == *best || g(i, col).is_zero())
        continue;
      const LocalizedInteger x = g(i, col).localized();
      mpz_class q = rounded_quotient(x.unit_part(), y.unit_part());
      Transvection t{i, *best, -lift(ring, q, x.valuation() - y.valuation())};
      g = apply_transvection(g, t, ApplySide::left);
      ops.push_back(std::move(t));
      reduced = true;
    }
    if (!reduced)
      throw std::logic_error("column is not unimodular");
  }
}

// Exponent bounds for unit shifts, tried in order so that small parameters
// win when they exist.
constexpr std::array<unsigned, 3> kShiftTiers{16, 256, 4096};
constexpr unsigned kWideShift = 256;

// z = m p^(s-t) with c + d z = +-p^e for the smallest e <= max_e, where
// c = gamma p^s and d = delta p^t.
std::optional<Element> unit_shift(const Element &c, const Element &d, unsigned max_e) {
  const Ring &ring = c.ring();
  if (c.is_unit())
    return ring.zero();
  if (d.is_zero())
    return std::nullopt;
  if (d.is_unit())
    return (ring.one() - c) * d.inverse();
  if (c.is_zero())
    return std::nullopt;
  const LocalizedInteger cx = c.localized(), dx = d.localized();
  const mpz_class &gamma = cx.unit_part(), &delta = dx.unit_part();
  const mpz_class mod = abs(delta);
  const mpz_class target = ((gamma % mod) + mod) % mod;
  const mpz_class neg_target = (mod - target) % mod;
  const unsigned long p = ring.prime();
  auto solution = [&](unsigned e, int sign) {
    const mpz_class m = (sign * pow_ui(p, e) - gamma) / delta;
    return lift(ring, m, cx.valuation() - dx.valuation());
  };
  // The powers of p cycle modulo |delta|; the scan stops after one period.
  if (mod.fits_ulong_p()) {
    const unsigned long md = mod.get_ui(), tg = target.get_ui(), ng = neg_target.get_ui();
    unsigned long r = 1 % md;
    for (unsigned e = 0; e <= max_e; ++e) {
      if (r == tg)
        return solution(e, 1);
      if (r == ng)
        return solution(e, -1);
      r = static_cast<unsigned long>(static_cast<unsigned __int128>(r) * p % md);
      if (r == 1 % md)
        break;
    }
    return std::nullopt;
  }
  // Hits are rare for moduli this large, so the scan is kept short.
  mpz_class r = 1;
  for (unsigned e = 0; e <= std::min(max_e, kWideShift); ++e) {
    if (r == target)
      return solution(e, 1);
    if (r == neg_target)
      return solution(e, -1);
    r = r * p % mod;
    if (r == 1)
      break;
  }
  return std::nullopt;
}

// Upper-led word t12(*) t21(*) ... with small parameters: the SL(2) elimination
// steps with a bounded unit shift of the bottom row, optionally after a t12
// that first makes the south-east entry a unit.
std::optional<std::vector<Matrix>> small_word(const Matrix &g, bool pre_shift, unsigned max_e) {
  Matrix h = g;
  std::optional<Element> y;
  if (pre_shift) {
    y = unit_shift(g(1, 1), g(1, 0), max_e);
    if (!y)
      return std::nullopt;
    h = g * t12(*y);
  }
  auto z = unit_shift(h(1, 0), h(1, 1), max_e);
  if (!z)
    return std::nullopt;
  auto s = sl2_slots_from(sl2_trace_with(h, *z));
  std::vector<Matrix> word(s.begin(), s.end());
  if (y)
    word.push_back(t12(-*y));
  return word;
}

std::size_t bit_cost(const std::vector<Matrix> &word) {
  std::size_t cost = 0;
  for (const auto &m : word)
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        const LocalizedInteger &x = m(i, j).localized();
        cost += mpz_sizeinbase(x.unit_part().get_mpz_t(), 2) +
                static_cast<std::size_t>(std::abs(x.valuation()));
      }
  return cost;
}

struct Candidate {
  std::vector<Matrix> word;
  std::size_t cost;
  bool mirrored;
};

void consider(std::optional<Candidate> &best, std::optional<std::vector<Matrix>> word,
              bool mirrored) {
  if (!word)
    return;
  const std::size_t cost = bit_cost(*word);
  if (!best || cost < best->cost)
    best = Candidate{std::move(*word), cost, mirrored};
}

// Cheapest small-parameter word of shape U L U L [U] or L U L U [L].
std::optional<Candidate> cheapest_small_word(const Matrix &m, unsigned max_e) {
  std::optional<Candidate> best;
  for (bool mirrored : {false, true}) {
    const Matrix h = mirrored ? reverse_conjugate(m) : m;
    for (bool pre : {false, true})
      consider(best, small_word(h, pre, max_e), mirrored);
  }
  return best;
}

// Six slots for a 2x2 matrix from a small-parameter word, if one exists.
std::optional<std::vector<Matrix>> small_slots(const Matrix &m) {
  for (unsigned max_e : kShiftTiers) {
    if (auto best = cheapest_small_word(m, max_e)) {
      std::vector<Matrix> slots(6, Matrix::identity(m.ring(), 2));
      for (std::size_t k = 0; k < best->word.size(); ++k)
        slots[k + best->mirrored] =
            best->mirrored ? reverse_conjugate(best->word[k]) : best->word[k];
      return slots;
    }
  }
  return std::nullopt;
}

std::vector<Matrix> lemma6_slots(const Matrix &m, std::uint64_t k_max) {
  std::vector<Matrix> slots(6, Matrix::identity(m.ring(), 2));
  Factorisation f = factor_sl2_zp(m, k_max).factorisation;
  const std::size_t start = !f.blocks.empty() && f.blocks.front().side == Side::lower;
  for (std::size_t k = 0; k < f.blocks.size(); ++k)
    slots[start + k] = f.blocks[k].mat;
  return slots;
}

// Unit part of a nonzero entry, 0 for zero.
mpz_class odd_part(const Element &x) {
  return x.is_zero() ? mpz_class(0) : abs(x.localized().unit_part());
}

long valuation_or_zero(const Element &x) {
  return x.is_zero() ? 0 : x.localized().valuation();
}

Matrix neg_sigma_matrix(const Ring &ring, std::size_t n, const std::vector<Element> &t) {
  Matrix m = Matrix::identity(ring, n);
  for (std::size_t j = 0; j + 1 < n; ++j)
    m.set(n - 1, j, t[j]);
  return m;
}

Matrix sigma_matrix(const Ring &ring, std::size_t n, const std::vector<Element> &s) {
  Matrix m = Matrix::identity(ring, n);
  for (std::size_t j = 0; j + 1 < n; ++j)
    m.set(j, n - 1, s[j]);
  return m;
}

constexpr long kSmallShift = 64;
constexpr std::size_t kSteerAttempts = 16;
constexpr long kLeadRange = 2;
constexpr std::size_t kDeepCandidates = 3;

// Shifts t making the head r_0..r_{n-2} of the unimodular last row
// unimodular after adding t * r_{n-1} (stable rank 2 of Z[1/p]). Small
// shifts come first; at most limit are returned.
std::vector<std::vector<Element>> head_shifts(const Matrix &h, std::size_t limit) {
  const Ring &ring = h.ring();
  const std::size_t n = h.size(), last = n - 1;
  std::vector<Element> t(last, ring.zero());
  const Element &r_last = h(last, last);
  if (r_last.is_zero())
    return {t};
  bool tail_zero = true;
  for (std::size_t j = 1; j < last; ++j)
    tail_zero = tail_zero && h(last, j).is_zero();
  if (tail_zero)
    t[1] = ring.one();
  mpz_class a = 0;
  for (std::size_t j = 1; j < last; ++j)
    a = gcd(a, odd_part(h(last, j) + t[j] * r_last));
  const mpz_class a0 = odd_part(h(last, 0));
  const long shift = valuation_or_zero(h(last, 0)) - r_last.localized().valuation();
  const mpz_class signed_a0 =
      h(last, 0).is_zero() ? mpz_class(0) : h(last, 0).localized().unit_part();
  const mpz_class &a_last = r_last.localized().unit_part();
  std::vector<std::vector<Element>> out;
  for (long k = 0; k <= kSmallShift && out.size() < limit; ++k)
    for (long T : {k, -k}) {
      if ((k == 0 && T < 0) || out.size() >= limit || gcd(a, abs(signed_a0 + T * a_last)) != 1)
        continue;
      t[0] = lift(ring, mpz_class(T), shift);
      out.push_back(t);
    }
  if (out.empty()) {
    // Largest divisor of a coprime to a0: every prime of a then divides
    // exactly one of a0 and T, and none divides a0 + T * r_last.
    mpz_class T = a, d;
    while ((d = gcd(T, a0)) > 1)
      T /= d;
    t[0] = lift(ring, T, shift);
    out.push_back(t);
  }
  return out;
}

// Bezout coefficients s with sum s_j r_j = target over the unimodular head.
std::vector<Element> head_bezout(const Matrix &h, const Element &target) {
  const Ring &ring = h.ring();
  const std::size_t last = h.size() - 1;
  std::vector<mpz_class> coef(last, 0);
  mpz_class acc = 0;
  for (std::size_t j = 0; j < last; ++j) {
    const mpz_class a = odd_part(h(last, j));
    if (a == 0)
      continue;
    mpz_class g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), acc.get_mpz_t(), a.get_mpz_t());
    for (std::size_t k = 0; k < j; ++k)
      coef[k] *= x;
    coef[j] = y;
    acc = g;
  }
  if (acc != 1)
    throw std::logic_error("last row head is not unimodular");
  std::vector<Element> s(last, ring.zero());
  for (std::size_t j = 0; j < last; ++j) {
    if (coef[j] == 0)
      continue;
    const LocalizedInteger &x = h(last, j).localized();
    const mpz_class c = x.unit_part() < 0 ? mpz_class(-coef[j]) : coef[j];
    s[j] = lift(ring, c, -x.valuation()) * target;
  }
  return s;
}

// For n = 3 the Bezout vector s is free up to lambda * (r1, -r0), and the
// resulting 2x2 Levi block is affine in lambda. Picks lambda so that one of
// its entries is a unit, which keeps the base factorisation small.
bool steer_to_unit(const Matrix &h, std::vector<Element> &s) {
  const Ring &ring = h.ring();
  const Element &r0 = h(2, 0), &r1 = h(2, 1);
  if (r0.is_zero() && r1.is_zero())
    return false;
  const Element k0 = r1, k1 = -r0;
  // Levi block after the Bezout step and the row clearing:
  // D = A - (c + A s) r^T with A, c, r the head block, column and row.
  auto levi = [&](const Element &s0, const Element &s1) {
    std::array<Element, 4> d{ring.zero(), ring.zero(), ring.zero(), ring.zero()};
    for (std::size_t i = 0; i < 2; ++i) {
      const Element b = h(i, 2) + h(i, 0) * s0 + h(i, 1) * s1;
      d[2 * i] = h(i, 0) - b * r0;
      d[2 * i + 1] = h(i, 1) - b * r1;
    }
    return d;
  };
  const auto x = levi(s[0], s[1]);
  for (const auto &e : x)
    if (e.is_unit())
      return true;
  const auto x1 = levi(s[0] + k0, s[1] + k1);
  std::optional<Element> best;
  std::size_t best_cost = 0;
  for (std::size_t e = 0; e < 4; ++e) {
    auto lambda = unit_shift(x[e], x1[e] - x[e], kShiftTiers.back());
    if (!lambda)
      continue;
    const std::size_t cost = bit_cost({Matrix::diagonal(std::array{*lambda, ring.one()})});
    if (!best || cost < best_cost) {
      best = *lambda;
      best_cost = cost;
    }
  }
  if (!best)
    return false;
  s[0] = s[0] + *best * k0;
  s[1] = s[1] + *best * k1;
  return true;
}

// h = D * v1 m1 v2 m2 v3 with D in the Levi block of rows/columns 0..n-2
// and (v, m) in Sigma x -Sigma.
struct Reduction {
  Matrix levi;
  std::vector<SigmaChunk> chunks;
};

// Applies the right multipliers lead (Sigma), shift (-Sigma), bezout (Sigma)
// and then clears the last row and column.
Reduction reduce(Matrix h, const Matrix &lead, const Matrix &shift, const Matrix &bezout) {
  const Ring &ring = h.ring();
  const std::size_t n = h.size(), last = n - 1;
  std::vector<Matrix> ops{lead, shift, bezout};
  h = h * lead * shift * bezout;
  std::vector<Element> t(last, ring.zero());
  for (std::size_t j = 0; j < last; ++j)
    t[j] = -h(last, j);
  ops.push_back(neg_sigma_matrix(ring, n, t));
  h = h * ops.back();
  const Matrix hinv = inverse(h);
  std::vector<Element> s(last, ring.zero());
  for (std::size_t j = 0; j < last; ++j)
    s[j] = hinv(j, last);
  ops.push_back(sigma_matrix(ring, n, s));
  h = h * ops.back();
  for (std::size_t j = 0; j < last; ++j)
    if (!h(last, j).is_zero() || !h(j, last).is_zero())
      throw std::logic_error("parabolic reduction left the Levi block");
  // v1 = ops[4]^-1, m1 = ops[3]^-1, v2 = ops[2]^-1, m2 = ops[1]^-1, v3 = ops[0]^-1.
  return {h.block(0, last),
          {{unitriangular_inverse(ops[4]), unitriangular_inverse(ops[3])},
           {unitriangular_inverse(ops[2]), unitriangular_inverse(ops[1])},
           {unitriangular_inverse(ops[0]), Matrix::identity(ring, n)}}};
}

NormalForm assemble(const Reduction &red, const NormalForm &levi) {
  const std::size_t n = red.chunks.front().v.size();
  std::vector<Matrix> delta_word;
  for (const auto &b : levi.blocks())
    delta_word.push_back(b.embed(n, 0));
  return reinsert(delta_word, red.chunks, ParabolicSplit(n, n - 1));
}

// Normal form with L = 3 via g = D * (Sigma -Sigma)^3, recursing on the Levi
// block D. Only the innermost 2x2 step needs a base factorisation. Without
// fallback only small-parameter base words are accepted and candidates are
// searched until one yields such a word; with fallback the first candidate
// is used and the base may run the prime search.
std::optional<NormalForm> zp_search(const Matrix &g, std::uint64_t k_max, bool fallback) {
  const std::size_t n = g.size();
  const Ring &ring = g.ring();
  if (n == 2) {
    if (auto slots = small_slots(g))
      return NormalForm(std::move(*slots));
    if (!fallback)
      return std::nullopt;
    return NormalForm(lemma6_slots(g, k_max));
  }
  const std::size_t last = n - 1;
  // Reduce the last row and column heads modulo the corner; the upper left
  // and lower right factors merge into the outer blocks for free.
  Matrix pre = Matrix::identity(ring, n), post = Matrix::identity(ring, n);
  Matrix h = g;
  if (!g(last, last).is_zero()) {
    const LocalizedInteger corner = g(last, last).localized();
    auto quotient = [&](const Element &x) {
      if (x.is_zero())
        return ring.zero();
      const LocalizedInteger &xl = x.localized();
      return lift(ring, rounded_quotient(xl.unit_part(), corner.unit_part()),
                  xl.valuation() - corner.valuation());
    };
    for (std::size_t j = 0; j < last; ++j)
      post.set(last, j, -quotient(g(last, j)));
    h = h * post;
    for (std::size_t i = 0; i < last; ++i)
      pre.set(i, last, -quotient(h(i, last)));
    h = pre * h;
  }
  auto finish = [&](const NormalForm &nf) {
    std::vector<Matrix> blocks = nf.blocks();
    blocks.front() = unitriangular_inverse(pre) * blocks.front();
    blocks.back() = blocks.back() * unitriangular_inverse(post);
    return NormalForm(std::move(blocks));
  };

  // Leading Sigma steps from the spare chunk vary the corner; n = 3 steers
  // the Levi block to a unit entry so that its base word is small.
  std::vector<std::vector<Element>> leads{std::vector<Element>(last, ring.zero())};
  for (long u = -kLeadRange; u <= kLeadRange; ++u)
    for (long v = -kLeadRange; v <= kLeadRange; ++v)
      if (u != 0 || v != 0) {
        std::vector<Element> lead(last, ring.zero());
        lead[0] = ring.from_int(u);
        lead[1] = ring.from_int(v);
        leads.push_back(std::move(lead));
      }
  if (n > 3)
    leads.resize(kDeepCandidates);
  std::optional<Reduction> first;
  for (const auto &lead : leads) {
    const Matrix lead_m = sigma_matrix(ring, n, lead);
    const Matrix led = h * lead_m;
    for (auto &t : head_shifts(led, n == 3 ? kSteerAttempts : kDeepCandidates)) {
      const Matrix shift = neg_sigma_matrix(ring, n, t);
      const Matrix shifted = led * shift;
      std::vector<Element> bezout = head_bezout(shifted, ring.one() - shifted(last, last));
      const bool steered = n == 3 && steer_to_unit(shifted, bezout);
      if (n == 3 && !steered && first)
        continue;
      Reduction red = reduce(h, lead_m, shift, sigma_matrix(ring, n, bezout));
      if (!first)
        first = red;
      if (n == 3 && !steered)
        continue;
      if (auto levi = zp_search(red.levi, k_max, false))
        return finish(assemble(red, *levi));
    }
  }
  if (!fallback)
    return std::nullopt;
  return finish(assemble(*first, *zp_search(first->levi, k_max, true)));
}

} // namespace

namespace {

struct Orientation {
  bool case2;
  bool transposed;
};

Matrix oriented(const Matrix &g, Orientation o) {
  Matrix w = o.transposed ? g.transpose() : g;
  return o.case2 ? reverse_conjugate(w) : w;
}

Orientation natural(const Matrix &g, bool transposed) {
  const Matrix w = transposed ? g.transpose() : g;
  return {w(0, 0).localized().valuation() < w(0, 1).localized().valuation(), transposed};
}

Lemma6Result run_oriented(const Matrix &g, Orientation o, const Matrix &work,
                          const PrimeSearchResult &found) {
  Lemma6Result res{compact({}, g), {}};
  Lemma6Trace &tr = res.trace;
  const Matrix top = o.transposed ? g.transpose() : g;
  tr.alpha = top(0, 0).localized().valuation();
  tr.beta = top(0, 1).localized().valuation();
  tr.kind = o.case2 ? Lemma6Case::case2 : Lemma6Case::case1;
  tr.transposed = o.transposed;
  Core c = lemma6_core(work, found);
  tr.k = c.k;
  tr.q = c.q;
  tr.u = c.u;
  tr.l = c.l;
  tr.theta = c.theta;
  // work = t21(s) t12(y2) t21(-theta) t12(-l') t21(-k')
  std::vector<Block> blocks{{Side::lower, t21(c.s)},
                            {Side::upper, t12(c.y2)},
                            {Side::lower, t21(-c.theta)},
                            {Side::upper, t12(-c.l_param)},
                            {Side::lower, t21(-c.k_param)}};
  tr.multipliers = {{1, 0, c.k_param}, {0, 1, c.l_param}, {1, 0, c.theta}, {0, 1, -c.y2}};
  if (o.case2) {
    for (auto &b : blocks) {
      b.side = opposite(b.side);
      b.mat = reverse_conjugate(b.mat);
    }
    for (auto &t : tr.multipliers)
      t = {1 - t.i, 1 - t.j, t.xi};
  }
  if (o.transposed) {
    std::reverse(blocks.begin(), blocks.end());
    for (auto &b : blocks) {
      b.side = opposite(b.side);
      b.mat = b.mat.transpose();
    }
  }
  res.factorisation = compact(std::move(blocks), g);
  return res;
}

} // namespace

Lemma6Result factor_sl2_zp(const Matrix &g, std::uint64_t k_max) {
  require_localized(g.ring());
  if (g.size() != 2)
    throw Error(errc::dimension_mismatch, "expected a 2x2 matrix");
  require_sl(g);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (g(i, j).is_zero())
        return degenerate(g);

  const Orientation first = natural(g, false);
  const Matrix work = oriented(g, first);
  const PrimeSearchResult found = search_prime(work, k_max);
  if (found.q <= kMaxPrime)
    return run_oriented(g, first, work, found);

  // p^u would not fit; take the smallest prime among the other orientations.
  const Orientation second = natural(g, true);
  std::optional<std::pair<Orientation, PrimeSearchResult>> best;
  for (Orientation o : {Orientation{!first.case2, false}, second,
                        Orientation{!second.case2, true}}) {
    try {
      auto r = search_prime(oriented(g, o), k_max);
      if (!best || r.q < best->second.q)
        best.emplace(o, r);
    } catch (const Error &e) {
      if (e.code() != errc::search_exhausted)
        throw;
    }
  }
  if (!best || best->second.q > kMaxPrime)
    throw Error(errc::search_exhausted,
                "prime " + (best ? best->second.q : found.q).get_str() +
                    " makes p^u too large to represent");
  return run_oriented(g, best->first, oriented(g, best->first), best->second);
}

Matrix replay_lemma6(const Matrix &g, const Lemma6Trace &trace) {
  Matrix h = trace.transposed ? g.transpose() : g;
  for (const auto &t : trace.multipliers)
    h = apply_transvection(h, t, ApplySide::right);
  return h;
}

TransvectionWord eliminate_euclidean(const Matrix &g) {
  require_localized(g.ring());
  require_sl(g);
  return eliminate_with(g, euclid_pivot);
}

Factorisation factor_sl_n_zp(const Matrix &g, std::uint64_t k_max) {
  require_localized(g.ring());
  require_sl(g);
  const std::size_t n = g.size();
  const Ring &ring = g.ring();
  if (g.is_identity())
    return compact({}, g);
  if (is_upper_unitriangular(g))
    return compact({{Side::upper, g}}, g);
  if (is_lower_unitriangular(g))
    return compact({{Side::lower, g}}, g);
  if (n == 2) {
    Factorisation f = factor_sl2_zp(g, k_max).factorisation;
    if (f.length() == 5)
      f.blocks.push_back({opposite(f.blocks.back().side), Matrix::identity(ring, 2)});
    return f;
  }
  // Four symmetric forms of g are searched for small-parameter words before
  // the prime search is allowed.
  enum class Form { plain, mirrored, transposed, both };
  auto form_of = [](const Matrix &m, Form form) {
    switch (form) {
    case Form::plain: return m;
    case Form::mirrored: return reverse_conjugate(m);
    case Form::transposed: return m.transpose();
    case Form::both: return reverse_conjugate(m.transpose());
    }
    return m;
  };
  auto unform = [&](const NormalForm &nf, Form form) {
    std::vector<Block> blocks;
    const auto &bs = nf.blocks();
    const bool mirror = form == Form::mirrored || form == Form::both;
    const bool transpose = form == Form::transposed || form == Form::both;
    for (std::size_t k = 0; k < bs.size(); ++k) {
      const std::size_t idx = transpose ? bs.size() - 1 - k : k;
      Matrix b = bs[idx];
      if (mirror)
        b = reverse_conjugate(b);
      if (transpose)
        b = b.transpose();
      Side side = NormalForm::side_of(idx);
      if (mirror != transpose)
        side = opposite(side);
      blocks.push_back({side, std::move(b)});
    }
    return compact(std::move(blocks), g);
  };
  for (Form form : {Form::plain, Form::mirrored, Form::transposed, Form::both})
    if (auto nf = zp_search(form_of(g, form), k_max, false))
      return unform(*nf, form);
  Factorisation f = unform(*zp_search(g, k_max, true), Form::plain);
  return f;
}

} // namespace unitri
