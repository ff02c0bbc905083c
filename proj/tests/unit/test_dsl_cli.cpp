#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "valshare/battery.hpp"
#include "valshare/cli.hpp"
#include "valshare/dsl.hpp"
#include "valshare/error.hpp"
#include "valshare/families.hpp"

using namespace valshare;
using dsl::json;

namespace {

const std::string kFixtures = VALSHARE_FIXTURE_DIR;

struct Run {
  int code;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "valshare");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return kFixtures + "/" + name + ".json"; }

}  // namespace

TEST_CASE("scalar and function JSON round trip") {
  Scalar s = Scalar::rational(-4, 27) + Scalar::rational(1, 2) * Scalar::imaginary_unit();
  CHECK(dsl::scalar_from_json(dsl::scalar_to_json(s)) == s);
  CHECK(dsl::scalar_from_json(json(3)) == Scalar(3));
  CHECK(dsl::scalar_from_json(json("2/3")) == Scalar::rational(2, 3));
  CHECK_FALSE(dsl::scalar_from_json(json(0.25)).is_exact());
  ExpSum f = thm2prime_family(2, Scalar::rational(1, 2));
  CHECK(approx_equal(dsl::expsum_from_json(dsl::expsum_to_json(f)), f, 0.0));
  CHECK_THROWS_AS(dsl::expsum_from_json(json{{"kind", "poly"}}), Error);
  CHECK_THROWS_AS(dsl::scalar_from_json(json::array()), Error);
}

TEST_CASE("regions from arrays and objects") {
  Region a = dsl::region_from_json(json::parse("[-1, 2, -3, 4]"));
  Region b = dsl::region_from_json(dsl::region_to_json(a));
  CHECK(b.re_min == -1);
  CHECK(b.im_max == 4);
  CHECK_THROWS_AS(dsl::region_from_json(json::parse("[1, 2, 3]")), Error);
  CHECK_THROWS_AS(dsl::region_from_json(json::parse("[2, 1, 0, 1]")), Error);
}

TEST_CASE("checked-in fixtures match the exporter") {
  for (const auto& [name, text] : fixture_files()) {
    std::ifstream in(kFixtures + "/" + name);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    CAPTURE(name);
    CHECK(ss.str() == text);
  }
}

TEST_CASE("verify exit codes") {
  auto ok = cli({"verify", "--expr", "D(f)^3 - f*D(f)^2 + (4/27)*(f^3-1)", "--fn", "f=" + fx("thm2prime_d1_b1"),
                 "--expect", "zero"});
  CHECK(ok.code == 0);
  CHECK(ok.report()["mode"] == "exact");
  CHECK(ok.report()["verdict"] == "IdenticallyZero");
  CHECK(cli({"verify", "--expr", "D(f) - f", "--fn", "f=" + fx("exp"), "--expect", "zero"}).code == 0);
  auto bad = cli({"verify", "--expr", "D(f) - f", "--fn", "f=" + fx("example1_C1_a1_b2"), "--expect", "zero"});
  CHECK(bad.code == 3);
  CHECK(bad.report()["verdict"] == "NonConstant");
  CHECK(bad.report().contains("witness"));
  auto h3 = cli({"verify", "--expr", "D(f)^2*(f - D(f))/(f^3 - 1)", "--fn", "f=" + fx("thm2prime_d1_b1")});
  CHECK(h3.report()["value"] == "4/27");
}

TEST_CASE("float mode never reports exact values") {
  auto r = cli({"verify", "--mode", "float", "--expr", "D(f)^2*(f - D(f))/(f^3 - 1)", "--fn", "f=" + fx("thm2prime_d1_b1")});
  CHECK(r.code == 0);
  json j = r.report();
  CHECK(j["mode"] == "float");
  CHECK(j["value"].is_object());
  auto c = cli({"classify-curve", "--mode", "float", "--gamma", "4/27", "--c0", "-1"});
  CHECK(c.report()["mode"] == "float");
  CHECK(c.report()["exact"] == false);
  auto input = R"({"kind":"expsum","terms":[{"coeff":"0.5","freq":"1"}]})";
  CHECK(cli({"verify", "--mode", "exact", "--expr", "f", "--fn", std::string("f=") + input}).code == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"verify", "--expr", "D(f", "--fn", "f=" + fx("exp")}).code == 2);
  CHECK(cli({"verify", "--expr", "g", "--fn", "f=" + fx("exp")}).code == 2);
  CHECK(cli({"verify", "--expr", "f", "--fn", "f=/no/such/file.json"}).code == 2);
  CHECK(cli({"locate", "--fn", fx("exp"), "--region", "[1,0,0,1]"}).code == 2);
  CHECK(cli({"share", "--fn", fx("exp"), "--values", "[1]", "--region", "[-1,1,-1,1]", "--condition", "x"}).code == 2);
  CHECK(cli({"probe", "--a", "1", "--b", "-1"}).code == 2);
  CHECK(cli({"derive", "--delta", "0"}).code == 2);
  CHECK(cli({"classify-curve", "--gamma", "0", "--c0", "-1"}).code == 2);
  CHECK(cli({"--tol", "-1", "derive", "--delta", "1"}).code == 2);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("numeric failures exit 4") {
  // isolation boxes below double resolution cannot be subdivided
  auto r = cli({"locate", "--fn", fx("sin2z"), "--region", "[-3,3,-1,1]", "--isolation-size", "1e-14"});
  CHECK(r.code == 4);
  CHECK(r.err.find("NumericAmbiguity") != std::string::npos);
}

TEST_CASE("share reproduces the vacuous verdicts") {
  auto r = cli({"share", "--fn", fx("example3_a1"), "--values", "[1,-1]", "--region", "[-7,7,-7,7]"});
  REQUIRE(r.code == 0);
  for (const auto& rep : r.report()["reports"]) CHECK(rep["verdicts"]["ShareSimple"] == "holds-vacuously");
}

TEST_CASE("derive, profile and classify outputs") {
  auto d = cli({"derive", "--delta", "1/1"}).report();
  CHECK(d["alpha"] == "1/3");
  CHECK(d["gamma"] == "4/27");
  CHECK(d["b2"] == "4/27");
  CHECK(d["residuals"].empty());
  auto p = cli({"profile", "--fn", fx("exp"), "--radii", "5"}).report();
  CHECK(p["m"][0].get<double>() == doctest::Approx(5 / 3.14159265358979).epsilon(1e-9));
  auto csv = cli({"profile", "--fn", fx("exp"), "--radii", "5,10", "--values", "[1]", "--format", "csv"});
  CHECK(csv.out.rfind("r,a_re,a_im,m,N,N_bar,T,n\n", 0) == 0);
  auto c = cli({"classify-curve", "--gamma", "4/27", "--c2", "0", "--c1", "0", "--c0", "-1"}).report();
  CHECK(c["kind"] == "SingularGenus0");
  CHECK(c["singular_points"][0] == json::array({"1", "2/3", "0"}));
  CHECK(c.contains("config"));
}

TEST_CASE("reports are byte-for-byte deterministic") {
  std::vector<std::string> args = {"share", "--fn", fx("thm2prime_d1_b1"), "--values", "[1]", "--region", "[-6,6,-6,6]"};
  auto a = cli(args), b = cli(args);
  CHECK(a.out == b.out);
  auto c = cli({"--threads", "3", "locate", "--fn", fx("sin2z"), "--region", "[-20,20,-2,2]"});
  auto d = cli({"--threads", "1", "locate", "--fn", fx("sin2z"), "--region", "[-20,20,-2,2]"});
  CHECK(c.report()["points"] == d.report()["points"]);
}

TEST_CASE("probe output is tagged experimental") {
  auto r = cli({"probe", "--a", "1", "--b", "2", "--grid", fx("default_grid"), "--region", "[-4,4,-4,4]"});
  REQUIRE(r.code == 0);
  CHECK(r.report()["tag"] == "EXPERIMENTAL");
  CHECK(r.report()["tested"] == 54);
}

TEST_CASE("reproduce-paper passes and catches a corrupted fixture") {
  auto ok = cli({"reproduce-paper", "--fixtures", kFixtures});
  CHECK(ok.code == 0);
  CHECK(cli({"--tol", "1e-2", "reproduce-paper"}).code == 0);

  auto dir = std::filesystem::temp_directory_path() / "valshare_corrupt_fixtures";
  std::filesystem::remove_all(dir);
  REQUIRE(cli({"export-fixtures", dir.string()}).code == 0);
  auto path = dir / "thm2prime_d1_b1.json";
  json f = dsl::load_file(path.string());
  for (auto& t : f["terms"])
    if (t["coeff"]["re"] == "4/27") t["coeff"]["re"] = "5/27";
  dsl::write_file(path.string(), f.dump(2));
  auto bad = cli({"reproduce-paper", "--fixtures", dir.string()});
  CHECK(bad.code == 5);
  CHECK(bad.err.find("C1") != std::string::npos);
  std::filesystem::remove_all(dir);
}
