#include "unitri/json_io.hpp"

#include "unitri/error.hpp"

#include <string>

namespace unitri {

namespace {

std::string case_name(Lemma6Case c) {
  switch (c) {
  case Lemma6Case::case1:
    return "case1";
  case Lemma6Case::case2:
    return "case2";
  case Lemma6Case::degenerate:
    break;
  }
  return "degenerate";
}

std::string at(std::size_t row, std::optional<std::size_t> col = std::nullopt) {
  std::string s = "row " + std::to_string(row + 1);
  if (col)
    s += ", column " + std::to_string(*col + 1);
  return s;
}

Element element_from_json(const Json &j, const Ring &ring, std::size_t row, std::size_t col) {
  std::string text;
  if (j.is_number_integer())
    text = j.dump();
  else if (j.is_string())
    text = j.get<std::string>();
  else
    throw Error(errc::parse_error, at(row, col) + ": expected an integer or a string");
  try {
    return ring.parse_element(text);
  } catch (const Error &e) {
    throw Error(errc::parse_error, at(row, col) + ": " + e.what());
  }
}

Side side_from(const Json &j) {
  const auto s = j.get<std::string>();
  if (s == "U")
    return Side::upper;
  if (s == "L")
    return Side::lower;
  throw Error(errc::parse_error, "block side must be U or L, got '" + s + "'");
}

} // namespace

Json to_json(const Element &x) { return x.to_string(); }

Json to_json(const Matrix &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j)
      row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Transvection &t) {
  return {{"i", t.i + 1}, {"j", t.j + 1}, {"xi", to_json(t.xi)}};
}

Json to_json(const Block &b) {
  return {{"side", std::string(1, side_letter(b.side))}, {"matrix", to_json(b.mat)}};
}

Json to_json(const VerifyReport &r) {
  Json j{{"ok", r.ok}, {"length", r.length}, {"pattern", r.pattern}};
  if (!r.ok)
    j["first_violation"] = r.first_violation;
  return j;
}

Json to_json(const Factorisation &f) {
  Json blocks = Json::array();
  for (const auto &b : f.blocks)
    blocks.push_back(to_json(b));
  Json j{{"ring", f.target.ring().name()},
         {"n", f.target.size()},
         {"target", to_json(f.target)},
         {"length", f.length()},
         {"pattern", f.pattern()},
         {"blocks", std::move(blocks)}};
  if (!f.word.empty()) {
    Json word = Json::array();
    for (const auto &t : f.word)
      word.push_back(to_json(t));
    j["word"] = std::move(word);
  }
  j["verification"] = to_json(verify_factorisation(f));
  return j;
}

Json to_json(const GaussDecomposition &g) {
  return {{"ring", g.t.ring().name()},
          {"n", g.t.size()},
          {"u", to_json(g.u.mat)},
          {"t", to_json(g.t)},
          {"v", to_json(g.v.mat)},
          {"u2", to_json(g.u2.mat)}};
}

Json to_json(const Sl2Trace &t) {
  return {{"z", to_json(t.z)}, {"l", to_json(t.l)}, {"theta", to_json(t.theta)},
          {"b", to_json(t.b)}};
}

Json to_json(const Lemma6Trace &t) {
  Json j{{"case", case_name(t.kind)}, {"transposed", t.transposed}};
  if (t.kind == Lemma6Case::degenerate)
    return j;
  j["alpha"] = t.alpha;
  j["beta"] = t.beta;
  j["k"] = t.k.get_str();
  j["q"] = t.q.get_str();
  j["u"] = t.u.get_str();
  j["l"] = t.l.get_str();
  if (t.theta)
    j["theta"] = to_json(*t.theta);
  Json m = Json::array();
  for (const auto &x : t.multipliers)
    m.push_back(to_json(x));
  j["multipliers"] = std::move(m);
  return j;
}

Json to_json(const EnumerationReport &r) {
  return {{"ring", r.ring.name()},
          {"n", r.n},
          {"sl", r.sl},
          {"ulu", r.ulu},
          {"ulul", r.ulul},
          {"ulul_torus", r.ulul_torus},
          {"ulu_torus", r.ulu_torus},
          {"length4_complete", r.length4_complete},
          {"length3_complete", r.length3_complete},
          {"sharp", r.sharp}};
}

Json to_json(const CommutatorDecomposition &c) {
  return {{"commutator", to_json(c.commutator)}, {"ux", to_json(c.ux)},
          {"uv", to_json(c.uv)},                 {"upper", to_json(c.upper)},
          {"lower", to_json(c.lower)}};
}

Json to_json(const RealMatrix &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.n; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.n; ++j)
      row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const ShearDecomposition &d) {
  Json factors = Json::array();
  std::string pattern;
  for (const auto &f : d.factors) {
    factors.push_back({{"side", std::string(1, side_letter(f.side))}, {"matrix", to_json(f.mat)}});
    pattern += pattern.empty() ? "" : " ";
    pattern += side_letter(f.side);
  }
  return {{"pattern", pattern},
          {"factors", std::move(factors)},
          {"target", to_json(d.target)},
          {"max_abs_error", d.max_abs_error}};
}

Matrix matrix_from_json(const Json &j, const Ring &ring) {
  if (!j.is_array() || j.empty())
    throw Error(errc::parse_error, "matrix must be a non-empty array of rows");
  const std::size_t n = j.size();
  Matrix m(ring, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json &row = j[i];
    if (!row.is_array())
      throw Error(errc::parse_error, at(i) + ": expected an array");
    if (row.size() != n)
      throw Error(errc::parse_error, at(i) + ": expected " + std::to_string(n) +
                                         " entries, got " + std::to_string(row.size()));
    for (std::size_t k = 0; k < n; ++k)
      m.set(i, k, element_from_json(row[k], ring, i, k));
  }
  return m;
}

Matrix parse_matrix(std::string_view text, const Ring &ring) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw Error(errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
  return matrix_from_json(j, ring);
}

Factorisation factorisation_from_json(const Json &j) {
  try {
    Ring ring = Ring::parse(j.at("ring").get<std::string>());
    Matrix target = matrix_from_json(j.at("target"), ring);
    std::vector<Block> blocks;
    for (const auto &b : j.at("blocks"))
      blocks.push_back({side_from(b.at("side")), matrix_from_json(b.at("matrix"), ring)});
    Factorisation f{std::move(blocks), std::move(target), {}};
    if (j.contains("word"))
      for (const auto &t : j.at("word")) {
        auto i = t.at("i").get<std::size_t>(), k = t.at("j").get<std::size_t>();
        if (i == 0 || k == 0)
          throw Error(errc::parse_error, "word indices are 1-based");
        f.word.push_back({i - 1, k - 1, element_from_json(t.at("xi"), ring, i - 1, k - 1)});
      }
    return f;
  } catch (const Json::exception &e) {
    throw Error(errc::parse_error, std::string("malformed factorisation: ") + e.what());
  }
}

} // namespace unitri
