#include "cli.hpp"

#include "unitri/error.hpp"
#include "unitri/json_io.hpp"
#include "unitri/monomial.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace unitri::cli {

namespace {

struct Options {
  std::string ring = "zmod:5";
  std::string matrix;
  std::string file;
  std::string batch;
  std::optional<std::size_t> random_len;
  std::size_t n = 2;
  std::uint64_t seed = 0;
  bool trace = false;
  std::uint64_t k_max = kDefaultKMax;
  double phi = 0, alpha = 0, beta = 0, gamma = 0;
};

/// Raised when a self-produced result fails verification.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(errc code) {
  switch (code) {
  case errc::capability_missing:
    return capability_missing;
  case errc::search_exhausted:
    return search_exhausted;
  default:
    return bad_input;
  }
}

std::string read_all(std::istream &s) {
  std::ostringstream o;
  o << s.rdbuf();
  return o.str();
}

std::string read_file(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw Error(errc::parse_error, "cannot open " + path);
  return read_all(f);
}

Json checked(const Factorisation &f) {
  Json j = to_json(f);
  if (!j["verification"]["ok"].get<bool>())
    throw VerificationFailure("self-check failed: " +
                              j["verification"]["first_violation"].get<std::string>());
  return j;
}

Json gauss_json(const Matrix &g) {
  GaussDecomposition d = gauss(g);
  bool ok = is_upper_unitriangular(d.u.mat) && is_lower_unitriangular(d.v.mat) &&
            is_upper_unitriangular(d.u2.mat) && classify(d.t).diagonal &&
            det(d.t).is_one() && d.u.mat * d.t * d.v.mat * d.u2.mat == g;
  if (!ok)
    throw VerificationFailure("self-check failed: gauss product");
  Json j = to_json(d);
  j["target"] = to_json(g);
  j["verification"] = {{"ok", true}};
  return j;
}

using Handler = std::function<Json(const Matrix &, const Options &)>;

Json factor_cmd(const Matrix &g, const Options &o) {
  Json j = checked(factor_sl(g));
  if (o.trace && g.size() == 2 && g.ring().has_sr1() && !classify(g).upper_unitriangular &&
      !classify(g).lower_unitriangular)
    j["trace"] = to_json(sl2_trace(g));
  return j;
}

Json zp_cmd(const Matrix &g, const Options &o) {
  if (g.ring().kind() != RingKind::localized)
    throw Error(errc::parse_error, "zp needs a zp:p ring");
  if (g.size() != 2)
    return checked(factor_sl_n_zp(g, o.k_max));
  Lemma6Result r = factor_sl2_zp(g, o.k_max);
  Json j = checked(r.factorisation);
  if (o.trace)
    j["trace"] = to_json(r.trace);
  return j;
}

Matrix input_matrix(const Options &o, std::istream &in) {
  Ring ring = Ring::parse(o.ring);
  if (o.random_len)
    return random_sl(ring, o.n, *o.random_len, o.seed).matrix;
  if (!o.matrix.empty())
    return parse_matrix(o.matrix, ring);
  if (!o.file.empty())
    return parse_matrix(read_file(o.file), ring);
  return parse_matrix(read_all(in), ring);
}

std::string input_text(const Options &o, std::istream &in) {
  if (!o.matrix.empty())
    return o.matrix;
  if (!o.file.empty())
    return read_file(o.file);
  return read_all(in);
}

/// One batch line per matrix; results keep the input order.
Json run_batch(const Handler &h, const Options &o, int &code) {
  Ring ring = Ring::parse(o.ring);
  std::istringstream lines(read_file(o.batch));
  Json out = Json::array();
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    try {
      out.push_back(h(parse_matrix(line, ring), o));
    } catch (const Error &e) {
      out.push_back({{"error", std::string(to_string(e.code()))}, {"message", e.what()}});
      if (code == ok)
        code = exit_code(e.code());
    }
  }
  return out;
}

void add_input(CLI::App *cmd, Options &o) {
  cmd->add_option("--ring", o.ring, "zmod:m, gf:p, q, z, zp:p or product:zmod:a,zmod:b")
      ->capture_default_str();
  auto *m = cmd->add_option("--matrix", o.matrix, "matrix as a JSON array of rows");
  auto *f = cmd->add_option("--file", o.file, "read the matrix from a file");
  auto *b = cmd->add_option("--batch", o.batch, "one JSON matrix per line");
  auto *r = cmd->add_option("--random", o.random_len, "use a random product of this many letters");
  cmd->add_option("--n", o.n, "dimension for --random")->capture_default_str();
  cmd->add_option("--seed", o.seed, "seed for --random")->capture_default_str();
  m->excludes(f, b, r);
  f->excludes(b, r);
  b->excludes(r);
}

} // namespace

int run(int argc, const char *const *argv, std::istream &in, std::ostream &out,
        std::ostream &err) {
  CLI::App app{"Unitriangular factorisations of SL(n, R) over exact rings"};
  app.require_subcommand(1);
  Options o;
  Handler handler;
  std::function<Json()> action;

  auto matrix_command = [&](const char *name, const char *help, Handler h) {
    auto *cmd = app.add_subcommand(name, help);
    add_input(cmd, o);
    cmd->callback([&, h] { handler = h; });
    return cmd;
  };

  auto *factor = matrix_command("factor", "length <= 4 over a stable rank 1 ring", factor_cmd);
  factor->add_flag("--trace", o.trace, "attach the SL(2) elimination trace");
  matrix_command("factor5", "length <= 5 via the Gauss decomposition",
                 [](const Matrix &g, const Options &) { return checked(factor5(g)); });
  matrix_command("gauss", "g = U T U- U",
                 [](const Matrix &g, const Options &) { return gauss_json(g); });
  matrix_command("monomial", "determinant 1 monomial matrices, length <= 4",
                 [](const Matrix &g, const Options &) { return checked(factor_monomial(g)); });
  auto *zp = matrix_command("zp", "SL(n, Z[1/p]): length <= 5 for n = 2, <= 6 otherwise", zp_cmd);
  zp->add_flag("--trace", o.trace, "attach the prime search trace (n = 2)");
  zp->add_option("--k-max", o.k_max, "prime search bound")->capture_default_str();

  auto *verify = app.add_subcommand("verify", "re-verify a factorisation JSON document");
  verify->add_option("--file", o.file, "factorisation file (default stdin)");
  verify->callback([&] {
    action = [&]() -> Json {
      Json doc;
      try {
        doc = Json::parse(input_text(o, in));
      } catch (const Json::parse_error &e) {
        throw Error(errc::parse_error, std::string("invalid JSON: ") + e.what());
      }
      Factorisation f = factorisation_from_json(doc);
      auto report = verify_factorisation(f);
      if (!report.ok)
        throw VerificationFailure("verification failed: " + report.first_violation);
      return to_json(report);
    };
  });

  auto *shear = app.add_subcommand("shear", "floating-point shear decompositions");
  shear->require_subcommand(1);
  auto *paeth = shear->add_subcommand("paeth", "2D rotation as U L U");
  paeth->add_option("--phi", o.phi, "angle in radians")->required();
  paeth->callback([&] { action = [&] { return to_json(paeth2(o.phi)); }; });
  auto *tq = shear->add_subcommand("tq", "3D rotation from Euler angles as U L U");
  tq->add_option("--alpha", o.alpha)->required();
  tq->add_option("--beta", o.beta)->required();
  tq->add_option("--gamma", o.gamma)->required();
  tq->callback([&] {
    action = [&] { return to_json(toffoli_quick3({o.alpha, o.beta, o.gamma})); };
  });

  auto *selftest = app.add_subcommand("selftest", "run the brute-force oracle suite");
  bool failed = false;
  selftest->callback([&] {
    action = [&] {
      Json checks = Json::array();
      for (const auto &c : run_oracles()) {
        checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        failed |= !c.ok;
      }
      return Json{{"ok", !failed}, {"checks", checks}};
    };
  });

  auto *enumerate = app.add_subcommand("enumerate", "exhaustive set sizes over a finite ring");
  enumerate->add_option("--ring", o.ring)->capture_default_str();
  enumerate->add_option("--n", o.n)->capture_default_str();
  enumerate->callback(
      [&] { action = [&] { return to_json(enumerate_sets(Ring::parse(o.ring), o.n)); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : bad_input;
  }

  int code = ok;
  try {
    Json result;
    if (handler && !o.batch.empty())
      result = run_batch(handler, o, code);
    else if (handler)
      result = handler(input_matrix(o, in), o);
    else
      result = action();
    out << result.dump(2) << '\n';
    if (failed)
      return verification_failed;
    return code;
  } catch (const VerificationFailure &e) {
    err << e.what() << '\n';
    return verification_failed;
  } catch (const Error &e) {
    err << e.what() << '\n';
    return exit_code(e.code());
  }
}

} // namespace unitri::cli
