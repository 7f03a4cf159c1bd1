#include "unitri/rings.hpp"

#include "unitri/error.hpp"
#include "unitri/numtheory.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <mutex>

namespace unitri {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+')
    text.remove_prefix(1);
  std::string s(text);
  mpz_class r;
  if (s.empty() || r.set_str(s, 10) != 0)
    throw Error(errc::parse_error, "not an integer: '" + s + "'");
  return r;
}

mpz_class mod(const mpz_class &a, const mpz_class &m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool coprime(const mpz_class &a, const mpz_class &m) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return g == 1;
}

mpz_class gcd(const mpz_class &a, const mpz_class &b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// First z in 0..m-1 with c + d z coprime to m.
mpz_class zmod_witness(const mpz_class &c, const mpz_class &d,
                       const mpz_class &m) {
  if (m == 1)
    return 0;
  if (gcd(gcd(c, d), m) != 1)
    throw Error(errc::not_unimodular,
                "(" + c.get_str() + ", " + d.get_str() + ") in Z/" +
                    m.get_str());
  for (mpz_class z = 0; z < m; ++z)
    if (coprime(c + d * z, m))
      return z;
  throw Error(errc::not_unimodular, "no witness found modulo " + m.get_str());
}

std::vector<mpz_class> zmod_witness_vec(const std::vector<mpz_class> &c,
                                        mpz_class d, const mpz_class &m) {
  mpz_class all = gcd(d, m);
  for (const auto &ci : c)
    all = gcd(all, ci);
  if (all != 1)
    throw Error(errc::not_unimodular,
                "tuple is not unimodular in Z/" + m.get_str());
  std::vector<mpz_class> z(c.size(), mpz_class(0));
  for (std::size_t i = c.size(); i-- > 0;) {
    mpz_class head = m;
    for (std::size_t j = 0; j < i; ++j)
      head = gcd(head, c[j]);
    z[i] = zmod_witness(mod(d, head), mod(c[i], head), head);
    d = mod(d + c[i] * z[i], m);
  }
  return z;
}

struct Registry {
  std::mutex mutex;
  std::map<std::string, std::unique_ptr<RingDescriptor>> rings;
};

Registry &registry() {
  static Registry r;
  return r;
}

std::string descriptor_name(const RingDescriptor &d) {
  switch (d.kind) {
  case RingKind::zmod:
    return "zmod:" + d.modulus.get_str();
  case RingKind::prime_field:
    return "gf:" + d.modulus.get_str();
  case RingKind::rationals:
    return "q";
  case RingKind::integers:
    return "z";
  case RingKind::localized:
    return "zp:" + d.modulus.get_str();
  case RingKind::product: {
    std::string s = "product:";
    for (std::size_t i = 0; i < d.factors.size(); ++i) {
      if (i)
        s += ",";
      s += "zmod:" + d.factors[i].get_str();
    }
    return s;
  }
  }
  return {};
}

void require_same(const Element &a, const Element &b) {
  if (!(a.ring() == b.ring()))
    throw Error(errc::descriptor_mismatch,
                a.ring().name() + " vs " + b.ring().name());
}

} // namespace

// ---------------------------------------------------------------- Ring

Ring Ring::intern(RingDescriptor d) {
  auto key = descriptor_name(d);
  auto &reg = registry();
  std::lock_guard lock(reg.mutex);
  auto it = reg.rings.find(key);
  if (it == reg.rings.end())
    it = reg.rings
             .emplace(key, std::make_unique<RingDescriptor>(std::move(d)))
             .first;
  return Ring(it->second.get());
}

Ring Ring::zmod(const mpz_class &m) {
  if (m < 2)
    throw Error(errc::out_of_range, "Z/m requires m >= 2, got " + m.get_str());
  return intern({RingKind::zmod, m, {}});
}

Ring Ring::gf(const mpz_class &p) {
  if (p < 2 || !is_prime(p))
    throw Error(errc::out_of_range, "GF(p) requires p prime, got " + p.get_str());
  return intern({RingKind::prime_field, p, {}});
}

Ring Ring::rationals() { return intern({RingKind::rationals, 0, {}}); }

Ring Ring::integers() { return intern({RingKind::integers, 0, {}}); }

Ring Ring::localized(unsigned long p) {
  if (p < 2 || !is_prime(mpz_class(p)))
    throw Error(errc::out_of_range,
                "Z[1/p] requires p prime, got " + std::to_string(p));
  return intern({RingKind::localized, mpz_class(p), {}});
}

Ring Ring::product(const std::vector<mpz_class> &moduli) {
  if (moduli.empty())
    throw Error(errc::out_of_range, "empty direct product");
  for (const auto &m : moduli)
    if (m < 2)
      throw Error(errc::out_of_range,
                  "Z/m factor requires m >= 2, got " + m.get_str());
  return intern({RingKind::product, 0, moduli});
}

Ring Ring::parse(std::string_view text) {
  text = trim(text);
  auto after = [&](std::string_view prefix) { return text.substr(prefix.size()); };
  if (text == "q")
    return rationals();
  if (text == "z")
    return integers();
  if (text.starts_with("zmod:"))
    return zmod(parse_integer(after("zmod:")));
  if (text.starts_with("gf:"))
    return gf(parse_integer(after("gf:")));
  if (text.starts_with("zp:")) {
    auto p = parse_integer(after("zp:"));
    if (!p.fits_ulong_p())
      throw Error(errc::out_of_range, "prime too large: " + p.get_str());
    return localized(p.get_ui());
  }
  if (text.starts_with("product:")) {
    std::vector<mpz_class> moduli;
    auto rest = after("product:");
    while (!rest.empty()) {
      auto comma = rest.find(',');
      auto item = trim(rest.substr(0, comma));
      if (item.starts_with("zmod:"))
        moduli.push_back(parse_integer(item.substr(5)));
      else if (item.starts_with("gf:"))
        moduli.push_back(parse_integer(item.substr(3)));
      else
        throw Error(errc::parse_error,
                    "product factors must be zmod:m, got '" + std::string(item) + "'");
      if (comma == std::string_view::npos)
        break;
      rest.remove_prefix(comma + 1);
    }
    return product(moduli);
  }
  throw Error(errc::parse_error, "unknown ring '" + std::string(text) + "'");
}

unsigned long Ring::prime() const {
  if (kind() != RingKind::prime_field && kind() != RingKind::localized)
    throw Error(errc::out_of_range, name() + " has no distinguished prime");
  return modulus().get_ui();
}

bool Ring::has_sr1() const noexcept {
  switch (kind()) {
  case RingKind::zmod:
  case RingKind::prime_field:
  case RingKind::rationals:
  case RingKind::product:
    return true;
  case RingKind::integers:
  case RingKind::localized:
    return false;
  }
  return false;
}

bool Ring::is_field() const noexcept {
  return kind() == RingKind::prime_field || kind() == RingKind::rationals;
}

bool Ring::is_finite() const noexcept {
  return kind() == RingKind::zmod || kind() == RingKind::prime_field ||
         kind() == RingKind::product;
}

mpz_class Ring::size() const {
  switch (kind()) {
  case RingKind::zmod:
  case RingKind::prime_field:
    return modulus();
  case RingKind::product: {
    mpz_class s = 1;
    for (const auto &m : factors())
      s *= m;
    return s;
  }
  default:
    throw Error(errc::out_of_range, name() + " is infinite");
  }
}

std::string Ring::name() const { return descriptor_name(*d_); }

Element Ring::zero() const { return from_int(0L); }

Element Ring::one() const { return from_int(1L); }

Element Ring::from_int(long value) const { return from_int(mpz_class(value)); }

Element Ring::from_int(const mpz_class &value) const {
  switch (kind()) {
  case RingKind::zmod:
  case RingKind::prime_field:
  case RingKind::integers:
    return Element(*this, value);
  case RingKind::rationals:
    return Element(*this, mpq_class(value));
  case RingKind::localized:
    return Element(*this, LocalizedInteger(value, 0, prime()));
  case RingKind::product:
    return Element(*this, std::vector<mpz_class>(factors().size(), value));
  }
  throw Error(errc::out_of_range, "unreachable ring kind");
}

Element Ring::element_at(std::uint64_t index) const {
  if (!is_finite())
    throw Error(errc::out_of_range, name() + " is infinite");
  mpz_class idx(static_cast<unsigned long>(index));
  if (kind() != RingKind::product)
    return Element(*this, idx);
  std::vector<mpz_class> residues;
  for (const auto &m : factors()) {
    mpz_class r;
    mpz_fdiv_qr(idx.get_mpz_t(), r.get_mpz_t(), idx.get_mpz_t(), m.get_mpz_t());
    residues.push_back(r);
  }
  return Element(*this, std::move(residues));
}

Element Ring::parse_element(std::string_view text) const {
  text = trim(text);
  auto parse_fraction = [](std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
      return mpq_class(parse_integer(s));
    mpz_class num = parse_integer(s.substr(0, slash));
    mpz_class den = parse_integer(s.substr(slash + 1));
    if (den == 0)
      throw Error(errc::parse_error, "zero denominator in '" + std::string(s) + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  };
  switch (kind()) {
  case RingKind::integers: {
    mpq_class q = parse_fraction(text);
    if (q.get_den() != 1)
      throw Error(errc::parse_error, "not an integer: '" + std::string(text) + "'");
    return Element(*this, q.get_num());
  }
  case RingKind::rationals:
    return Element(*this, parse_fraction(text));
  case RingKind::zmod:
  case RingKind::prime_field: {
    mpq_class q = parse_fraction(text);
    Element num(*this, q.get_num());
    if (q.get_den() == 1)
      return num;
    return num * Element(*this, q.get_den()).inverse();
  }
  case RingKind::localized: {
    const unsigned long p = prime();
    auto star = text.find('*');
    auto caret = text.find('^');
    if (caret != std::string_view::npos) {
      mpz_class a = 1;
      std::string_view power = text;
      if (star != std::string_view::npos) {
        a = parse_integer(text.substr(0, star));
        power = text.substr(star + 1);
      }
      caret = power.find('^');
      mpz_class base = parse_integer(power.substr(0, caret));
      mpz_class exp = parse_integer(power.substr(caret + 1));
      if (base != p)
        throw Error(errc::parse_error, "power base must be " + std::to_string(p) +
                                           " in '" + std::string(text) + "'");
      if (!exp.fits_slong_p())
        throw Error(errc::out_of_range, "exponent too large");
      return Element(*this, LocalizedInteger(a, exp.get_si(), p));
    }
    try {
      return Element(*this, LocalizedInteger::from_rational(parse_fraction(text), p));
    } catch (const Error &e) {
      throw Error(errc::parse_error, e.what());
    }
  }
  case RingKind::product: {
    if (!text.empty() && text.front() == '(' && text.back() == ')') {
      auto inner = text.substr(1, text.size() - 2);
      std::vector<mpz_class> residues;
      while (true) {
        auto comma = inner.find(',');
        residues.push_back(parse_integer(inner.substr(0, comma)));
        if (comma == std::string_view::npos)
          break;
        inner.remove_prefix(comma + 1);
      }
      if (residues.size() != factors().size())
        throw Error(errc::parse_error, "expected " + std::to_string(factors().size()) +
                                           " components in '" + std::string(text) + "'");
      return Element(*this, std::move(residues));
    }
    return from_int(parse_integer(text));
  }
  }
  throw Error(errc::parse_error, "unreachable ring kind");
}

// ------------------------------------------------------------- Element

Element::Element(Ring ring, Payload payload)
    : ring_(ring), payload_(std::move(payload)) {
  switch (ring_.kind()) {
  case RingKind::zmod:
  case RingKind::prime_field: {
    auto &r = std::get<mpz_class>(payload_);
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), ring_.modulus().get_mpz_t());
    break;
  }
  case RingKind::integers:
    (void)std::get<mpz_class>(payload_);
    break;
  case RingKind::rationals:
    std::get<mpq_class>(payload_).canonicalize();
    break;
  case RingKind::localized:
    if (std::get<LocalizedInteger>(payload_).prime() != ring_.prime())
      throw Error(errc::descriptor_mismatch, "Z[1/p] element with wrong prime");
    break;
  case RingKind::product: {
    auto &v = std::get<std::vector<mpz_class>>(payload_);
    const auto &f = ring_.factors();
    if (v.size() != f.size())
      throw Error(errc::descriptor_mismatch, "wrong number of product components");
    for (std::size_t i = 0; i < v.size(); ++i)
      mpz_fdiv_r(v[i].get_mpz_t(), v[i].get_mpz_t(), f[i].get_mpz_t());
    break;
  }
  }
}

bool Element::is_zero() const {
  switch (ring_.kind()) {
  case RingKind::rationals:
    return rational() == 0;
  case RingKind::localized:
    return localized().is_zero();
  case RingKind::product:
    for (const auto &r : residues())
      if (r != 0)
        return false;
    return true;
  default:
    return integer() == 0;
  }
}

bool Element::is_one() const { return *this == ring_.one(); }

bool Element::is_unit() const {
  switch (ring_.kind()) {
  case RingKind::zmod:
  case RingKind::prime_field:
    return coprime(integer(), ring_.modulus());
  case RingKind::integers:
    return abs(integer()) == 1;
  case RingKind::rationals:
    return rational() != 0;
  case RingKind::localized:
    return localized().is_unit();
  case RingKind::product: {
    const auto &f = ring_.factors();
    for (std::size_t i = 0; i < f.size(); ++i)
      if (!coprime(residues()[i], f[i]))
        return false;
    return true;
  }
  }
  return false;
}

Element Element::inverse() const {
  if (!is_unit())
    throw Error(errc::not_a_unit, to_string() + " in " + ring_.name());
  switch (ring_.kind()) {
  case RingKind::zmod:
  case RingKind::prime_field: {
    mpz_class r;
    mpz_invert(r.get_mpz_t(), integer().get_mpz_t(), ring_.modulus().get_mpz_t());
    return Element(ring_, r);
  }
  case RingKind::integers:
    return *this;
  case RingKind::rationals:
    return Element(ring_, mpq_class(1 / rational()));
  case RingKind::localized:
    return Element(ring_, localized().inverse());
  case RingKind::product: {
    std::vector<mpz_class> inv(residues().size());
    for (std::size_t i = 0; i < inv.size(); ++i)
      mpz_invert(inv[i].get_mpz_t(), residues()[i].get_mpz_t(),
                 ring_.factors()[i].get_mpz_t());
    return Element(ring_, std::move(inv));
  }
  }
  throw Error(errc::not_a_unit, "unreachable ring kind");
}

std::uint64_t Element::index() const {
  if (!ring_.is_finite())
    throw Error(errc::out_of_range, ring_.name() + " is infinite");
  if (ring_.kind() != RingKind::product)
    return integer().get_ui();
  mpz_class idx = 0, scale = 1;
  for (std::size_t i = 0; i < residues().size(); ++i) {
    idx += residues()[i] * scale;
    scale *= ring_.factors()[i];
  }
  return idx.get_ui();
}

std::string Element::to_string() const {
  switch (ring_.kind()) {
  case RingKind::rationals:
    return rational().get_str();
  case RingKind::localized:
    return localized().to_string();
  case RingKind::product: {
    std::string s = "(";
    for (std::size_t i = 0; i < residues().size(); ++i) {
      if (i)
        s += ",";
      s += residues()[i].get_str();
    }
    return s + ")";
  }
  default:
    return integer().get_str();
  }
}

namespace {

template <class ScalarOp, class LocalOp>
Element combine(const Element &a, const Element &b, ScalarOp op, LocalOp lop) {
  require_same(a, b);
  const Ring &ring = a.ring();
  switch (ring.kind()) {
  case RingKind::zmod:
  case RingKind::prime_field:
  case RingKind::integers:
    return Element(ring, mpz_class(op(a.integer(), b.integer())));
  case RingKind::rationals:
    return Element(ring, mpq_class(op(a.rational(), b.rational())));
  case RingKind::localized:
    return Element(ring, lop(a.localized(), b.localized()));
  case RingKind::product: {
    std::vector<mpz_class> r(a.residues().size());
    for (std::size_t i = 0; i < r.size(); ++i)
      r[i] = op(a.residues()[i], b.residues()[i]);
    return Element(ring, std::move(r));
  }
  }
  throw Error(errc::descriptor_mismatch, "unreachable ring kind");
}

} // namespace

Element operator+(const Element &a, const Element &b) {
  return combine(
      a, b, [](const auto &x, const auto &y) { return x + y; },
      [](const LocalizedInteger &x, const LocalizedInteger &y) { return x + y; });
}

Element operator-(const Element &a, const Element &b) {
  return combine(
      a, b, [](const auto &x, const auto &y) { return x - y; },
      [](const LocalizedInteger &x, const LocalizedInteger &y) { return x - y; });
}

Element operator*(const Element &a, const Element &b) {
  return combine(
      a, b, [](const auto &x, const auto &y) { return x * y; },
      [](const LocalizedInteger &x, const LocalizedInteger &y) { return x * y; });
}

Element operator-(const Element &a) { return a.ring().zero() - a; }

bool operator==(const Element &a, const Element &b) {
  return a.ring() == b.ring() && a.payload() == b.payload();
}

// --------------------------------------------------------- sr1 witness

Element sr1_witness(const Element &c, const Element &d) {
  require_same(c, d);
  const Ring &ring = c.ring();
  if (!ring.has_sr1())
    throw Error(errc::capability_missing,
                ring.name() + " is not declared to have stable rank 1");
  switch (ring.kind()) {
  case RingKind::zmod:
    return Element(ring, zmod_witness(c.integer(), d.integer(), ring.modulus()));
  case RingKind::prime_field:
  case RingKind::rationals:
    if (c.is_unit())
      return ring.zero();
    if (d.is_zero())
      throw Error(errc::not_unimodular, "(0, 0) in " + ring.name());
    return ring.one();
  case RingKind::product: {
    std::vector<mpz_class> z;
    for (std::size_t i = 0; i < ring.factors().size(); ++i)
      z.push_back(zmod_witness(c.residues()[i], d.residues()[i], ring.factors()[i]));
    return Element(ring, std::move(z));
  }
  default:
    break;
  }
  throw Error(errc::capability_missing, ring.name());
}

std::vector<Element> sr1_witness_vec(std::span<const Element> c,
                                     const Element &d) {
  const Ring &ring = d.ring();
  for (const auto &ci : c)
    require_same(ci, d);
  if (!ring.has_sr1())
    throw Error(errc::capability_missing,
                ring.name() + " is not declared to have stable rank 1");
  std::vector<Element> z;
  z.reserve(c.size());
  switch (ring.kind()) {
  case RingKind::zmod: {
    std::vector<mpz_class> cs;
    for (const auto &ci : c)
      cs.push_back(ci.integer());
    for (auto &zi : zmod_witness_vec(cs, d.integer(), ring.modulus()))
      z.emplace_back(ring, std::move(zi));
    return z;
  }
  case RingKind::product: {
    const auto &f = ring.factors();
    std::vector<std::vector<mpz_class>> comps(c.size(), std::vector<mpz_class>(f.size()));
    for (std::size_t k = 0; k < f.size(); ++k) {
      std::vector<mpz_class> cs;
      for (const auto &ci : c)
        cs.push_back(ci.residues()[k]);
      auto zk = zmod_witness_vec(cs, d.residues()[k], f[k]);
      for (std::size_t i = 0; i < c.size(); ++i)
        comps[i][k] = zk[i];
    }
    for (auto &comp : comps)
      z.emplace_back(ring, std::move(comp));
    return z;
  }
  case RingKind::prime_field:
  case RingKind::rationals: {
    z.assign(c.size(), ring.zero());
    Element running = d;
    for (std::size_t i = c.size(); i-- > 0;) {
      bool head_nonzero = false;
      for (std::size_t j = 0; j < i; ++j)
        head_nonzero = head_nonzero || !c[j].is_zero();
      if (head_nonzero)
        continue;
      z[i] = sr1_witness(running, c[i]);
      running = running + c[i] * z[i];
    }
    if (!running.is_unit())
      throw Error(errc::not_unimodular, "tuple is zero in " + ring.name());
    return z;
  }
  default:
    break;
  }
  throw Error(errc::capability_missing, ring.name());
}

} // namespace unitri
