#include "doctest.h"

#include "cli.hpp"
#include "unitri/error.hpp"
#include "unitri/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace unitri;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;

  Json json() const { return Json::parse(out); }
};

Outcome run_cli(std::vector<std::string> args, const std::string &input = "") {
  args.insert(args.begin(), "unitri-cli");
  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string &name, const std::string &body) {
  std::string path = "unitri_cli_test_" + name;
  std::ofstream(path) << body;
  return path;
}

} // namespace

TEST_CASE("parse_matrix") {
  for (Ring r : {Ring::zmod(7), Ring::rationals(), Ring::integers(), Ring::localized(2)})
    CHECK(parse_matrix("[[1,0],[0,1]]", r).is_identity());

  Ring q = Ring::rationals();
  Matrix m = parse_matrix(R"([["1/2","3"],["0","2"]])", q);
  CHECK(m(0, 0) == Element(q, mpq_class(1, 2)));
  CHECK(m(1, 1) == q.from_int(2));

  Ring z2 = Ring::localized(2);
  Matrix l = parse_matrix(R"([["3*2^-1","1"],["0","2"]])", z2);
  CHECK(l(0, 0).localized().unit_part() == 3);
  CHECK(l(0, 0).localized().valuation() == -1);

  for (const char *bad : {"[[1,2],[3]]", "[[1,\"x\"],[0,1]]", "[[1,2.5],[0,1]]", "{}", "[[1,2],"}) {
    CAPTURE(bad);
    try {
      parse_matrix(bad, Ring::zmod(5));
      FAIL("expected parse_error");
    } catch (const Error &e) {
      CHECK(e.code() == errc::parse_error);
    }
  }
  try {
    parse_matrix(R"([[1,0],[0,"1/0"]])", q);
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("row 2, column 2") != std::string::npos);
  }
}

TEST_CASE("cli factor examples") {
  auto a = run_cli({"factor", "--ring", "zmod:5", "--matrix", "[[0,1],[4,0]]"});
  CHECK(a.code == 0);
  CHECK(a.json()["pattern"] == "U L U");

  auto b = run_cli({"factor", "--ring", "z", "--matrix", "[[1,1],[0,1]]"});
  CHECK(b.code == 0);
  CHECK(b.json()["length"] == 1);

  auto c = run_cli({"factor", "--ring", "z", "--matrix", "[[2,1],[1,1]]"});
  CHECK(c.code == 3);
  CHECK(c.out.empty());
  CHECK_FALSE(c.err.empty());
}

TEST_CASE("cli input errors exit 2") {
  CHECK(run_cli({"factor", "--ring", "zmod:5", "--matrix", "[[1,2],[3]]"}).code == 2);
  CHECK(run_cli({"factor", "--ring", "zmod:5", "--matrix", "[[1,1],[1,1]]"}).code == 2);
  CHECK(run_cli({"factor", "--ring", "nonsense", "--matrix", "[[1]]"}).code == 2);
  CHECK(run_cli({"factor", "--matrix", "[[1]]", "--file", "x"}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"zp", "--ring", "zmod:5", "--matrix", "[[1,0],[0,1]]"}).code == 2);
  CHECK(run_cli({"shear", "paeth", "--phi", "3.141592653589793"}).code == 2);
}

TEST_CASE("cli reads stdin and files") {
  auto s = run_cli({"factor", "--ring", "zmod:7"}, "[[2,0],[0,4]]");
  CHECK(s.code == 0);
  auto path = temp_file("m.json", "[[0,1],[4,0]]");
  auto f = run_cli({"factor5", "--ring", "zmod:5", "--file", path});
  CHECK(f.code == 0);
  CHECK(f.json()["verification"]["ok"] == true);
  std::remove(path.c_str());
}

TEST_CASE("cli output round trips through verify") {
  std::vector<std::vector<std::string>> cases = {
      {"factor", "--ring", "zmod:9", "--random", "12", "--n", "3", "--seed", "4"},
      {"factor", "--ring", "product:zmod:2,zmod:3", "--random", "9", "--n", "3"},
      {"factor5", "--ring", "q", "--random", "6", "--n", "3", "--seed", "2"},
      {"monomial", "--ring", "z", "--matrix", "[[0,0,1],[1,0,0],[0,1,0]]"},
      {"zp", "--ring", "zp:3", "--random", "6", "--n", "2", "--seed", "8"},
      {"zp", "--ring", "zp:2", "--random", "8", "--n", "3", "--seed", "1"},
  };
  for (const auto &args : cases) {
    CAPTURE(args[2]);
    auto r = run_cli(args);
    REQUIRE(r.code == 0);
    Json doc = r.json();
    Factorisation f = factorisation_from_json(doc);
    CHECK(verify_factorisation(f).ok);
    CHECK(to_json(f).dump() == [&] {
      Json d = doc;
      d.erase("trace");
      return d.dump();
    }());
    auto v = run_cli({"verify"}, r.out);
    CHECK(v.code == 0);
    CHECK(v.json()["ok"] == true);
  }
}

TEST_CASE("cli verify rejects a tampered factorisation") {
  auto r = run_cli({"factor", "--ring", "zmod:5", "--matrix", "[[0,1],[4,0]]"});
  Json doc = r.json();
  doc["blocks"][0]["matrix"][0][1] = "2";
  auto v = run_cli({"verify"}, doc.dump());
  CHECK(v.code == 1);
  CHECK(run_cli({"verify"}, "not json").code == 2);
}

TEST_CASE("cli traces") {
  auto zp = run_cli({"zp", "--ring", "zp:2", "--matrix", R"([["1","3"],["1*2^-1","5*2^-1"]])",
                     "--trace"});
  REQUIRE(zp.code == 0);
  Json t = zp.json()["trace"];
  CHECK(t["k"] == "4");
  CHECK(t["q"] == "13");
  CHECK(t["u"] == "4");
  CHECK(t["l"] == "1");
  CHECK(t["theta"] == "-3*2^-2");
  CHECK(zp.json()["pattern"] == "L U L U L");

  auto exhausted = run_cli({"zp", "--ring", "zp:2", "--matrix",
                            R"([["1","3"],["1*2^-1","5*2^-1"]])", "--k-max", "1"});
  CHECK(exhausted.code == 4);

  auto f = run_cli({"factor", "--ring", "zmod:5", "--matrix", "[[0,1],[4,0]]", "--trace"});
  CHECK(f.json()["trace"]["l"] == "4");
}

TEST_CASE("cli batch keeps input order") {
  auto path = temp_file("batch.jsonl", "[[0,1],[4,0]]\n\n[[1,2],[0,1]]\n[[1,1],[1,1]]\n");
  auto r = run_cli({"factor", "--ring", "zmod:5", "--batch", path});
  CHECK(r.code == 2);
  Json j = r.json();
  REQUIRE(j.size() == 3);
  CHECK(j[0]["pattern"] == "U L U");
  CHECK(j[1]["pattern"] == "U");
  CHECK(j[2]["error"] == "NotSL");
  std::remove(path.c_str());
}

TEST_CASE("cli gauss, shear, enumerate and selftest") {
  auto g = run_cli({"gauss", "--ring", "zmod:7", "--random", "10", "--n", "3", "--seed", "5"});
  CHECK(g.code == 0);
  CHECK(g.json()["verification"]["ok"] == true);

  auto p = run_cli({"shear", "paeth", "--phi", "1.5707963267948966"});
  CHECK(p.code == 0);
  CHECK(p.json()["pattern"] == "U L U");
  CHECK(p.json()["max_abs_error"].get<double>() < 1e-12);

  auto tq = run_cli({"shear", "tq", "--alpha", "0.3", "--beta", "1.1", "--gamma", "-0.4"});
  CHECK(tq.code == 0);
  CHECK(tq.json()["max_abs_error"].get<double>() < 1e-10);

  auto e = run_cli({"enumerate", "--ring", "zmod:5", "--n", "2"});
  CHECK(e.code == 0);
  CHECK(e.json()["sharp"] == true);
  CHECK(run_cli({"enumerate", "--ring", "zmod:5", "--n", "3"}).code == 2);

  auto s = run_cli({"selftest"});
  CHECK(s.code == 0);
  CHECK(s.json()["ok"] == true);
}
