#include "unitri/verify.hpp"

#include "unitri/error.hpp"

#include <unordered_set>

namespace unitri {

namespace {

/// Finite ring as addition and multiplication tables on element indices.
struct Tables {
  std::uint64_t q = 0;
  std::vector<std::uint8_t> add, mul;
  std::uint8_t zero = 0, one = 0;
  std::vector<bool> unit;

  explicit Tables(const Ring &r) : q(r.size().get_ui()), add(q * q), mul(q * q), unit(q) {
    std::vector<Element> e;
    for (std::uint64_t i = 0; i < q; ++i)
      e.push_back(r.element_at(i));
    for (std::uint64_t i = 0; i < q; ++i) {
      unit[i] = e[i].is_unit();
      for (std::uint64_t j = 0; j < q; ++j) {
        add[i * q + j] = static_cast<std::uint8_t>((e[i] + e[j]).index());
        mul[i * q + j] = static_cast<std::uint8_t>((e[i] * e[j]).index());
      }
    }
    zero = static_cast<std::uint8_t>(r.zero().index());
    one = static_cast<std::uint8_t>(r.one().index());
  }
};

using Cells = std::vector<std::uint8_t>;

struct Enumerator {
  const Tables &t;
  std::size_t n;

  std::uint64_t code(const Cells &m) const {
    std::uint64_t c = 0;
    for (auto x : m)
      c = c * t.q + x;
    return c;
  }

  Cells decode(std::uint64_t c) const {
    Cells m(n * n);
    for (std::size_t k = n * n; k-- > 0;) {
      m[k] = static_cast<std::uint8_t>(c % t.q);
      c /= t.q;
    }
    return m;
  }

  Cells mul(const Cells &a, const Cells &b) const {
    Cells r(n * n, t.zero);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
          auto p = t.mul[a[i * n + k] * t.q + b[k * n + j]];
          r[i * n + j] = t.add[r[i * n + j] * t.q + p];
        }
    return r;
  }

  Cells identity() const {
    Cells m(n * n, t.zero);
    for (std::size_t i = 0; i < n; ++i)
      m[i * n + i] = t.one;
    return m;
  }

  std::vector<Cells> unitriangular(Side side) const {
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (side == Side::upper ? i < j : i > j)
          slots.emplace_back(i, j);
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < slots.size(); ++k)
      count *= t.q;
    std::vector<Cells> out;
    for (std::uint64_t c = 0; c < count; ++c) {
      Cells m = identity();
      std::uint64_t rest = c;
      for (auto [i, j] : slots) {
        m[i * n + j] = static_cast<std::uint8_t>(rest % t.q);
        rest /= t.q;
      }
      out.push_back(std::move(m));
    }
    return out;
  }

  std::unordered_set<std::uint64_t> products(const std::unordered_set<std::uint64_t> &a,
                                             const std::vector<Cells> &b) const {
    std::unordered_set<std::uint64_t> out;
    for (auto x : a) {
      Cells m = decode(x);
      for (const auto &y : b)
        out.insert(code(mul(m, y)));
    }
    return out;
  }

  /// Diagonal with unit entries (determinant 1 holds for anything in SL).
  bool in_torus(const Cells &m) const {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j ? m[i * n + j] != t.zero : !t.unit[m[i * n + j]])
          return false;
    return true;
  }

  std::uint64_t torus_count(const std::unordered_set<std::uint64_t> &s) const {
    std::uint64_t c = 0;
    for (auto x : s)
      c += in_torus(decode(x));
    return c;
  }
};

std::size_t sl_count(const Ring &ring, std::size_t n, std::uint64_t total) {
  std::size_t count = 0;
  const auto q = ring.size().get_ui();
  std::vector<Element> e;
  for (std::uint64_t i = 0; i < q; ++i)
    e.push_back(ring.element_at(i));
  for (std::uint64_t c = 0; c < total; ++c) {
    Matrix m(ring, n);
    std::uint64_t rest = c;
    for (std::size_t k = n * n; k-- > 0;) {
      m.set(k / n, k % n, e[rest % q]);
      rest /= q;
    }
    count += det(m).is_one();
  }
  return count;
}

} // namespace

EnumerationReport enumerate_sets(const Ring &ring, std::size_t n) {
  if (!ring.is_finite())
    throw Error(errc::out_of_range, "enumeration needs a finite ring");
  if (n < 1)
    throw Error(errc::dimension_too_small, "n must be positive");
  const mpz_class q = ring.size();
  mpz_class total;
  mpz_pow_ui(total.get_mpz_t(), q.get_mpz_t(), n * n);
  if (q > 255 || total > kEnumerationLimit)
    throw Error(errc::too_large, ring.name() + " with n = " + std::to_string(n) + " has " +
                                     total.get_str() + " matrices");
  Tables t(ring);
  Enumerator en{t, n};
  const auto upper = en.unitriangular(Side::upper);
  const auto lower = en.unitriangular(Side::lower);

  std::unordered_set<std::uint64_t> u;
  for (const auto &m : upper)
    u.insert(en.code(m));
  const auto ul = en.products(u, lower);
  const auto ulu = en.products(ul, upper);
  const auto ulul = en.products(ulu, lower);

  EnumerationReport r{ring, n};
  r.sl = sl_count(ring, n, total.get_ui());
  r.ulu = ulu.size();
  r.ulul = ulul.size();
  r.ulul_torus = en.torus_count(ulul);
  r.ulu_torus = en.torus_count(ulu);
  r.length4_complete = r.ulul == r.sl;
  r.length3_complete = r.ulu == r.sl;
  r.sharp = r.ulu_torus == 1;
  return r;
}

Element random_element(const Ring &ring, std::mt19937_64 &rng) {
  switch (ring.kind()) {
  case RingKind::zmod:
  case RingKind::prime_field:
  case RingKind::product:
    return ring.element_at(rng() % ring.size().get_ui());
  case RingKind::integers:
    return ring.from_int(static_cast<long>(rng() % 7) - 3);
  case RingKind::rationals: {
    mpq_class v(static_cast<long>(rng() % 7) - 3, static_cast<unsigned long>(rng() % 4) + 1);
    v.canonicalize();
    return Element(ring, v);
  }
  case RingKind::localized: {
    long c = static_cast<long>(rng() % 7) - 3;
    long e = static_cast<long>(rng() % 5) - 2;
    return Element(ring, LocalizedInteger(c, e, ring.prime()));
  }
  }
  throw Error(errc::out_of_range, "unknown ring kind");
}

RandomSl random_sl(const Ring &ring, std::size_t n, std::size_t word_len,
                   std::uint64_t seed) {
  if (n < 2)
    throw Error(errc::dimension_too_small, "random_sl needs n >= 2");
  std::mt19937_64 rng(seed);
  TransvectionWord w{ring, n, {}};
  for (std::size_t k = 0; k < word_len; ++k) {
    std::size_t i = rng() % n, j = rng() % (n - 1);
    if (j >= i)
      ++j;
    w.letters.push_back({i, j, random_element(ring, rng)});
  }
  return {w.product(), std::move(w)};
}

CommutatorDecomposition commutator3(const Matrix &g, const Factorisation &f) {
  const auto report = verify_factorisation(f);
  if (!report.ok)
    throw Error(errc::bad_pattern, "factorisation does not verify: " + report.first_violation);
  if (!(f.target == g))
    throw Error(errc::bad_pattern, "factorisation target differs from g");
  const std::size_t n = g.size();
  std::vector<Matrix> slots;
  std::size_t k = 0;
  for (Side want : {Side::upper, Side::lower, Side::upper, Side::lower}) {
    if (k < f.blocks.size() && f.blocks[k].side == want)
      slots.push_back(f.blocks[k++].mat);
    else
      slots.push_back(Matrix::identity(g.ring(), n));
  }
  if (k != f.blocks.size())
    throw Error(errc::bad_pattern, "pattern " + f.pattern() + " does not fit U L U L");
  const Matrix &u = slots[0], &x = slots[1], &v = slots[2], &y = slots[3];
  const Matrix ui = unitriangular_inverse(u);
  Matrix ux = u * x * ui;
  Matrix uv = u * v * ui;
  Matrix c = ux * uv * inverse(ux) * unitriangular_inverse(uv);
  CommutatorDecomposition d{c, ux, uv, {Side::upper, u * v}, {Side::lower, x * y}};
  if (!(d.commutator * d.upper.mat * d.lower.mat == g))
    throw Error(errc::bad_pattern, "commutator identity failed");
  return d;
}

std::vector<OracleCheck> run_oracles() {
  std::vector<OracleCheck> out;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    out.push_back({std::move(name), ok, std::move(detail)});
  };
  for (long m = 2; m <= 9; ++m) {
    Ring r = Ring::zmod(m);
    auto e = enumerate_sets(r, 2);
    add("length 4 covers SL(2, Z/" + std::to_string(m) + ")", e.length4_complete,
        std::to_string(e.ulul) + " of " + std::to_string(e.sl));
    // -1 is a nontrivial unit once m > 2.
    if (m > 2)
      add("U U- U meets the torus trivially over Z/" + std::to_string(m),
          e.sharp && !e.length3_complete);
  }
  for (std::size_t k = 1; k <= 3; ++k) {
    Ring r = Ring::product(std::vector<mpz_class>(k, 2));
    add("length 3 covers SL(2, " + r.name() + ")", enumerate_sets(r, 2).length3_complete);
  }
  Ring z7 = Ring::zmod(7);
  bool all = true;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto s = random_sl(z7, 2, 6, seed);
    try {
      commutator3(s.matrix, factor_sl(s.matrix));
    } catch (const Error &) {
      all = false;
    }
  }
  add("commutator splitting over SL(2, Z/7)", all);
  return out;
}

} // namespace unitri
