#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "toricinv/cli.hpp"
#include "toricinv/rng.hpp"

using namespace toricinv;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string last_line(const std::string& s) {
  std::istringstream is(s);
  std::string line, last;
  while (std::getline(is, line))
    if (!line.empty()) last = line;
  return last;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const std::string kCuspProblem = std::string(TORICINV_DOCS_DIR) + "/cusp.json";

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("polynomial parsing on the quadric cone") {
  SurfaceData s = semigroup_generators(2, 1);
  LatticePolynomial f = to_lattice_polynomial(
      parse_polynomial("z2^2 - z1^3", 3), s.generators);
  REQUIRE(f.terms.size() == 2);
  CHECK(f.terms.at(iv({2, 2})) == 1);
  CHECK(f.terms.at(iv({3, 0})) == -1);

  LatticePolynomial g = to_lattice_polynomial(
      parse_polynomial("z1 - z3^2", 3), s.generators);
  CHECK(g.terms.at(iv({1, 0})) == 1);
  CHECK(g.terms.at(iv({2, 4})) == -1);

  // like terms combine through the embedding: z1*z3 and z2^2 both land on
  // (2,2) and cancel
  LatticePolynomial zero = to_lattice_polynomial(
      parse_polynomial("z1*z3 - z2^2", 3), s.generators);
  CHECK(zero.zero());

  AmbientPoly rat = parse_polynomial("3/4*z1^2*z2 - z1 + 2", 3);
  CHECK(rat.terms.at(ExpVec{2, 1, 0}) == Rat(3, 4));
  CHECK(rat.terms.at(ExpVec{0, 0, 0}) == 2);

  CHECK_THROWS_AS(parse_polynomial("z4", 3), Error);      // UnknownVariable
  CHECK_THROWS_AS(parse_polynomial("z1^-2", 3), Error);   // NegativeExponent
  CHECK_THROWS_AS(parse_polynomial("z1 + + ", 3), Error); // ParseError
  CHECK_THROWS_AS(parse_polynomial("t*z1", 3), Error);    // params only in families

  // aliases for low dimension
  AmbientPoly al = parse_polynomial("x^2 + y^2", 2);
  CHECK(al.terms.count(ExpVec{2, 0}) == 1);
  CHECK(al.terms.count(ExpVec{0, 2}) == 1);
}

TEST_CASE("canonical printing round-trips") {
  for (const std::string& text :
       {std::string("z2^2 - z1^3"), std::string("z1 - z3^2"),
        std::string("3/4*z1*z2 - 2*z3^5 + 7"),
        std::string("-z1^2*z3^2 + z2")}) {
    AmbientPoly p = parse_polynomial(text, 3);
    std::string canon = format_polynomial(p);
    AmbientPoly q = parse_polynomial(canon, 3);
    CHECK(p.terms == q.terms);
    CHECK(format_polynomial(q) == canon);
  }
}

TEST_CASE("round-trip on random polynomials") {
  SplitMix64 rng(4242);
  for (int it = 0; it < 100; ++it) {
    AmbientPoly p;
    p.nvars = 1 + static_cast<int>(rng.next() % 4);
    int terms = 1 + static_cast<int>(rng.next() % 5);
    for (int t = 0; t < terms; ++t) {
      ExpVec e(p.nvars, 0);
      for (long& x : e) x = rng.range(0, 6);
      Rat c(rng.nonzero(20), rng.range(1, 9));
      c.canonicalize();
      p.add_term(e, c);
    }
    if (p.zero()) continue;
    std::string canon = format_polynomial(p);
    AmbientPoly q = parse_polynomial(canon, p.nvars);
    CHECK(p.terms == q.terms);
  }
}

TEST_CASE("parameters are accepted inside family text") {
  ParamAmbientPoly p = parse_polynomial_params("z2^2 - z1^3 - t*z1^2*z3^2", 3);
  CHECK(p.has_parameters());
  AmbientPoly at0 = p.substitute(Rat(0), Rat(0));
  CHECK(at0.terms.size() == 2);
  AmbientPoly at1 = p.substitute(Rat(0), Rat(1));
  CHECK(at1.terms.size() == 3);
}

TEST_CASE("cli: worked-example values") {
  CliRun b = cli({"brasselet", "--p", "2", "--q", "1", "--f", "z2^2 - z1^3"});
  CHECK(b.code == 0);
  CHECK(last_line(b.out) == "B = -3");

  CliRun m = cli({"morse", "--p", "2", "--q", "1", "--f", "z2^2 - z1^3",
                  "--g", "z1 - z3^2"});
  CHECK(m.code == 0);
  CHECK(last_line(m.out) == "n = 15");

  CliRun e = cli({"eu-origin", "--p", "4", "--q", "1"});
  CHECK(e.code == 0);
  CHECK(last_line(e.out) == "Eu(0) = -2");

  CliRun g = cli({"gsv", "--p", "2", "--q", "1", "--f", "z2^2 - z1^3", "--g",
                  "z1 - z3^2"});
  CHECK(g.code == 0);
  CHECK(last_line(g.out) == "GSV = -15");

  CliRun mu = cli({"milnor", "--f", "x^3 + y^2"});
  CHECK(mu.code == 0);
  CHECK(last_line(mu.out) == "mu = 2");

  CliRun br = cli({"bruce-roberts", "--n", "3", "--f", "z1 + z2 + z3", "--g",
                   "z1*z3 - z2^2"});
  CHECK(br.code == 0);
  CHECK(last_line(br.out) == "mu_BR = 1");
}

TEST_CASE("cli: mode flag switches the convention") {
  CliRun paper = cli({"brasselet-ci", "--p", "2", "--q", "1", "--f",
                      "z2^2 - z1^3", "--g", "z1 - z3^2"});
  CHECK(last_line(paper.out) == "B^g = 12");
  CliRun strict = cli({"--mode", "strict", "brasselet-ci", "--p", "2", "--q",
                       "1", "--f", "z2^2 - z1^3", "--g", "z1 - z3^2"});
  CHECK(last_line(strict.out) == "B^g = 6");
  CHECK(paper.out.find("paper-example") != std::string::npos);
  CHECK(strict.out.find("strict") != std::string::npos);
}

TEST_CASE("cli: exit codes") {
  // input errors
  CliRun bad = cli({"brasselet", "--p", "2", "--q", "1", "--f", "z9"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("UnknownVariable") != std::string::npos);

  CliRun zero = cli({"brasselet", "--p", "2", "--q", "1", "--f", "0"});
  CHECK(zero.code == 1);
  CHECK(zero.err.find("ZeroPolynomial") != std::string::npos);

  // hypothesis failures exit 2
  CliRun degen = cli({"check", "--n", "2", "--f", "x^2 + 2*x*y + y^2"});
  CHECK(degen.code == 2);
  CHECK(degen.out.find("DegenerateWitness") != std::string::npos);

  CliRun notprep = cli({"morse", "--p", "2", "--q", "1", "--f", "z2^2 - z1^3",
                        "--g", "z2"});
  CHECK(notprep.code == 2);
  CHECK(notprep.err.find("NotPrepolar") != std::string::npos);

  CliRun notconst =
      cli({"family", "--p", "2", "--q", "1", "--f", "z2^2 - z1^3", "--h",
           "z2^2 - z1^3"});
  CHECK(notconst.code == 2);
  CHECK(notconst.err.find("ConditionViolated") != std::string::npos);

  CliRun ok = cli({"check", "--p", "2", "--q", "1", "--f", "z2^2 - z1^3",
                   "--g", "z1 - z3^2"});
  CHECK(ok.code == 0);
  CHECK(last_line(ok.out) == "verdict = ok");
}

TEST_CASE("cli: family constancy of the worked example") {
  CliRun fam = cli({"family", "--p", "2", "--q", "1", "--f", "z2^2 - z1^3",
                    "--g", "z1 - z3^2", "--h", "-z1^2*z3^2", "--l", "z3^3",
                    "--samples", "0,1,-1,2"});
  CHECK(fam.code == 0);
  CHECK(last_line(fam.out) ==
        "constant: B = -3, B^g = 12, n = 15, GSV = -15, Eu_f = 3");

  // embedded parameters in the polynomial text work the same way
  CliRun emb = cli({"family", "--p", "2", "--q", "1", "--f",
                    "z2^2 - z1^3 - t*z1^2*z3^2", "--g", "z1 - z3^2 + s*z3^3"});
  CHECK(emb.code == 0);
  CHECK(last_line(emb.out) ==
        "constant: B = -3, B^g = 12, n = 15, GSV = -15, Eu_f = 3");
}

TEST_CASE("problem file drives the full task list") {
  CliRun run = cli({"--problem", kCuspProblem});
  CHECK(run.code == 0);
  CHECK(run.out.find("B = -3") != std::string::npos);
  CHECK(run.out.find("B^g = 12") != std::string::npos);
  CHECK(run.out.find("B^g = 6") != std::string::npos);
  CHECK(run.out.find("n = 15") != std::string::npos);
  CHECK(run.out.find("GSV = -15") != std::string::npos);
  CHECK(run.out.find("Eu(0) = 0") != std::string::npos);
  CHECK(run.out.find("verdict = ok") != std::string::npos);

  // a subcommand can reference polynomials declared in the file
  CliRun byname = cli({"--problem", kCuspProblem, "brasselet", "--f", "f"});
  CHECK(byname.code == 0);
  CHECK(last_line(byname.out) == "B = -3");
}

TEST_CASE("reports are byte-identical across runs with a fixed seed") {
  std::vector<std::string> args = {"--problem", kCuspProblem, "--seed", "9",
                                   "--json"};
  CliRun a = cli(args);
  CliRun b = cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  REQUIRE(!a.out.empty());

  // text and JSON agree on the headline numbers
  Json j = Json::parse(a.out);
  CliRun t = cli({"--problem", kCuspProblem, "--seed", "9"});
  bool found_brasselet = false;
  for (const Json& task : j["tasks"]) {
    if (task["kind"] == "brasselet") {
      found_brasselet = true;
      CHECK(task["B"].get<long>() == -3);
      CHECK(t.out.find("B = -3") != std::string::npos);
    }
    if (task["kind"] == "morse") {
      CHECK(task["morse"].get<long>() == 15);
      CHECK(t.out.find("n = 15") != std::string::npos);
    }
    if (task["kind"] == "gsv") CHECK(task["gsv"].get<long>() == -15);
  }
  CHECK(found_brasselet);
}

TEST_CASE("golden outputs of the cusp problem") {
  const std::string golden_dir = TORICINV_GOLDEN_DIR;
  std::vector<std::string> targs = {"--problem", kCuspProblem};
  std::vector<std::string> jargs = {"--problem", kCuspProblem, "--json"};
  CliRun text = cli(targs);
  CliRun json = cli(jargs);
  REQUIRE(text.code == 0);
  REQUIRE(json.code == 0);
  if (std::getenv("TORICINV_REGEN") != nullptr) {
    std::ofstream(golden_dir + "/cusp.txt") << text.out;
    std::ofstream(golden_dir + "/cusp.json") << json.out;
  }
  CHECK(text.out == read_file(golden_dir + "/cusp.txt"));
  CHECK(json.out == read_file(golden_dir + "/cusp.json"));
}

TEST_CASE("general varieties come out the same as the surface presentation") {
  std::string path = (std::filesystem::temp_directory_path() /
                      "toricinv_general_quadric.json")
                         .string();
  {
    std::ofstream f(path);
    f << R"({
      "variety": {"general": {"sigma_rays": [[0,1],[2,-1]],
                              "semigroup_generators": [[1,0],[1,1],[1,2]]}},
      "polynomials": {"f": "z2^2 - z1^3"},
      "tasks": [{"kind": "brasselet", "f": "f",
                 "eu": {"faces": {"1": 1, "2": 1, "3": 1}}}]
    })";
  }
  CliRun run = cli({"--problem", path});
  CHECK(run.code == 0);
  CHECK(last_line(run.out) == "B = -3");
  std::remove(path.c_str());
}

TEST_CASE("sketch flag draws the polygon") {
  CliRun sk = cli({"--sketch", "brasselet", "--p", "2", "--q", "1", "--f",
                   "z2^2 - z1^3"});
  CHECK(sk.code == 0);
  CHECK(sk.out.find('V') != std::string::npos);
}

TEST_SUITE_END();
