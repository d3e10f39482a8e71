#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cantor/json_io.hpp"
#include "test_util.hpp"

using namespace cantor;
using testutil::Rng;

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / "cantor-cli-tests";
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& body) {
  std::ofstream out(p);
  out << body;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const fs::path& stdout_to) {
  std::string cmd = std::string(CANTOR_CLI_PATH) + " " + args + " > " + stdout_to.string() +
                    " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("spec json roundtrips") {
  Rng rng(31);
  for (int i = 0; i < 30; ++i) {
    auto spec = testutil::random_rational_spec(rng);
    auto j = product_spec_to_json(spec);
    auto back = product_spec_from_json(j);
    CHECK(product_spec_to_json(back) == j);
    for (Int m = 0; m < 64; ++m) CHECK(coefficient(back, 0, m) == coefficient(spec, 0, m));
  }
  for (int i = 0; i < 30; ++i) {
    auto spec = testutil::random_tm_spec(rng);
    auto j = tm_spec_to_json(spec);
    auto back = tm_spec_from_json(j);
    CHECK(tm_spec_to_json(back) == j);
    for (Int m = 0; m < 64; ++m) CHECK(tm_letter(back, m) == tm_letter(spec, m));
  }
  // factorial support and bigpow values survive the trip
  auto cor = corollary22_spec(2);
  CHECK(product_spec_to_json(product_spec_from_json(product_spec_to_json(cor))) ==
        product_spec_to_json(cor));
}

TEST_CASE("spec json rejects malformed input") {
  CHECK_THROWS_AS(radix_from_json(Json::parse(R"({"kind":"constant"})")), Error);
  CHECK_THROWS_AS(radix_from_json(Json::parse(R"({"kind":"constant","q":2,"x":1})")), Error);
  CHECK_THROWS_AS(radix_from_json(Json::parse(R"({"kind":"weird","q":2})")), Error);
  CHECK_THROWS_AS(product_spec_from_json(Json::parse(
                      R"({"radix":{"kind":"constant","q":2},"domain":"rational","L":3,
                          "coeffs":{"kind":"constant","entry":{"all_s":"1"}}})")),
                  Error);
  CHECK_THROWS_AS(intseq_from_json(Json::parse(R"({"kind":"geom_pow","base":"1","coeff":"1",
                                                   "ratio":"2"})")),
                  Error);
}

TEST_CASE("intseq json roundtrip") {
  for (const auto& s :
       {IntSeq::constant(5), IntSeq::periodic({Int(1), Int(-2)}), IntSeq::table({Int(7)}, 3),
        IntSeq::geom_pow(2, 3, 2)}) {
    auto j = intseq_to_json(s);
    CHECK(intseq_to_json(intseq_from_json(j)) == j);
  }
}

TEST_CASE("cli digit and sparse commands") {
  auto dir = scratch_dir();
  write_file(dir / "radix.json", R"({"kind":"table","qs":[2,3],"default":4})");
  auto out = dir / "digits.json";
  int rc = run_cli("digits --spec " + (dir / "radix.json").string() + " --n 5", out);
  CHECK(rc == 0);
  auto j = Json::parse(read_file(out));
  CHECK(j["n"] == "5");
  CHECK(j["digits"] == Json::parse("[[0,1],[1,2]]"));

  rc = run_cli("sparse-multiple --spec " + (dir / "radix.json").string() + " --l 2 --t 1", out);
  CHECK(rc == 0);
  j = Json::parse(read_file(out));
  CHECK(j["x"] == "1");

  // exhaustion surfaces as exit 2 with a machine-readable code
  write_file(dir / "bin.json", R"({"kind":"constant","q":2})");
  rc = run_cli("sparse-multiple --spec " + (dir / "bin.json").string() + " --l 3 --t 12 --cap 5",
               out);
  CHECK(rc == 2);
  j = Json::parse(read_file(out));
  CHECK(j["error"]["code"] == "SEARCH_EXHAUSTED");
}

TEST_CASE("cli expand, evaluate and witness pipeline") {
  auto dir = scratch_dir();
  const std::string ones = R"({"radix":{"kind":"constant","q":2},"domain":"rational",
    "coeffs":{"kind":"constant","entry":{"all_s":"1"}}})";
  write_file(dir / "ones.json", ones);
  auto out = dir / "r.json";

  int rc = run_cli("expand --spec " + (dir / "ones.json").string() + " --N 16 --format csv", out);
  CHECK(rc == 0);
  std::string csv = read_file(out);
  CHECK(csv.substr(0, 10) == "m,num,den\n");
  CHECK(csv.find("15,1,1") != std::string::npos);

  rc = run_cli("evaluate --spec " + (dir / "ones.json").string() + " --b 2", out);
  CHECK(rc == 0);
  auto j = Json::parse(read_file(out));
  Rat lo = parse_rat(j["lo"].get<std::string>());
  Rat hi = parse_rat(j["hi"].get<std::string>());
  CHECK(lo <= 2);
  CHECK(2 <= hi);

  rc = run_cli("witness --spec " + (dir / "ones.json").string() + " --n 0 --window 1", out);
  CHECK(rc == 0);
  j = Json::parse(read_file(out));
  CHECK(j["alpha"] == "1");
  CHECK(j["beta"] == "1");

  rc = run_cli("approximant --spec " + (dir / "ones.json").string() + " --n 0 --window 1", out);
  CHECK(rc == 0);
  j = Json::parse(read_file(out));
  CHECK(j["clearing_constant"] == "1");
  CHECK(j["p"] == Json::parse(R"(["1"])"));
}

TEST_CASE("cli inequality reports and determinism") {
  auto dir = scratch_dir();
  auto out1 = dir / "cor22.json";
  int rc = run_cli("cor22 --base 2", out1);
  CHECK(rc == 0);
  // feed the emitted spec back into the checker
  auto specfile = dir / "cor22spec.json";
  fs::copy_file(out1, specfile, fs::copy_options::overwrite_existing);
  auto out = dir / "check.json";
  std::string check_cmd = "check-thm21 --spec " + specfile.string() +
                          " --b 4 --epsilon 1/100 --variant second --n-from 1 --n-to 8";
  rc = run_cli(check_cmd + " --out " + out.string(), dir / "null.txt");
  CHECK(rc == 0);
  auto j = Json::parse(read_file(out));
  CHECK(j["summary"] == "ALL_HOLD");
  CHECK(j["rows"].size() == 8);
  CHECK(j["variant"] == "THM21_SECOND");
  for (const auto& row : j["rows"]) CHECK(row["holds"] == true);

  // byte-identical reruns
  auto out2 = dir / "check2.json";
  rc = run_cli(check_cmd + " --out " + out2.string(), dir / "null.txt");
  CHECK(rc == 0);
  CHECK(read_file(out) == read_file(out2));
  // the sidecar carries the run metadata, not the report
  CHECK(fs::exists(out.string() + ".meta.json"));
  CHECK(read_file(out).find("written_at") == std::string::npos);

  // prop23 spec file holds the two sequences
  write_file(dir / "p23.json",
             R"({"f":{"kind":"constant","v":"1"},"F":{"kind":"geom_pow","base":"2","coeff":"2","ratio":"4"}})");
  rc = run_cli("check-prop23 --spec " + (dir / "p23.json").string() +
                   " --b 2 --c 2 --epsilon 1/4 --variant main --y-from 0 --y-to 6",
               out);
  CHECK(rc == 0);
  j = Json::parse(read_file(out));
  CHECK(j["summary"] == "ALL_HOLD");

  // hypothesis violation: exit 2
  write_file(dir / "bad23.json",
             R"({"f":{"kind":"constant","v":"3"},"F":{"kind":"constant","v":"2"}})");
  rc = run_cli("check-prop23 --spec " + (dir / "bad23.json").string() +
                   " --b 2 --c 2 --epsilon 1/4 --variant main --y-from 0 --y-to 3",
               out);
  CHECK(rc == 2);
  j = Json::parse(read_file(out));
  CHECK(j["error"]["code"] == "HYPOTHESIS_VIOLATED");
}

TEST_CASE("cli word commands") {
  auto dir = scratch_dir();
  write_file(dir / "tm.json",
             R"({"L":2,"radix":{"kind":"constant","q":2},"mu":{"kind":"constant","entry":{"const":1}}})");
  auto out = dir / "w.json";
  int rc = run_cli("tm-build --spec " + (dir / "tm.json").string() + " --n 3", out);
  CHECK(rc == 0);
  auto j = Json::parse(read_file(out));
  CHECK(j["letters"] == Json::parse("[0,1,1,0,1,0,0,1]"));

  rc = run_cli("tm-letter --spec " + (dir / "tm.json").string() + " --m 3", out);
  CHECK(rc == 0);
  CHECK(Json::parse(read_file(out))["letter"] == 0);

  rc = run_cli("tm-period --spec " + (dir / "tm.json").string() + " --depth 12", out);
  CHECK(rc == 0);
  CHECK(Json::parse(read_file(out))["kind"] == "DECIDED_NONE");

  rc = run_cli("tm-subseq-scan --spec " + (dir / "tm.json").string() +
                   " --N 0 --l 1 --max-period 64 --horizon 8192",
               out);
  CHECK(rc == 0);
  CHECK(Json::parse(read_file(out))["periodic"] == false);

  rc = run_cli("tm-subseq-value --spec " + (dir / "tm.json").string() +
                   " --N 0 --l 1 --b 2 --target 1/1000000",
               out);
  CHECK(rc == 0);
  j = Json::parse(read_file(out));
  Rat lo = parse_rat(j["u"][0].get<std::string>());
  Rat hi = parse_rat(j["u"][1].get<std::string>());
  CHECK(lo < hi);

  rc = run_cli("tm-to-product --spec " + (dir / "tm.json").string(), out);
  CHECK(rc == 0);
  j = Json::parse(read_file(out));
  CHECK(j["domain"] == "unit_root");
  CHECK(j["L"] == 2);
}

TEST_CASE("cli structural and report commands") {
  auto dir = scratch_dir();
  const std::string tmspec = R"({"radix":{"kind":"constant","q":2},"domain":"rational",
    "coeffs":{"kind":"constant","entry":{"all_s":"-1"}}})";
  write_file(dir / "tmprod.json", tmspec);
  auto out = dir / "s.json";

  int rc = run_cli("tail-expand --spec " + (dir / "tmprod.json").string() + " --n 2 --N 8", out);
  CHECK(rc == 0);
  auto j = Json::parse(read_file(out));
  CHECK(j["coeffs"][1] == "-1");

  rc = run_cli("copy-structure --spec " + (dir / "tmprod.json").string() + " --n 1 --blocks 8",
               out);
  CHECK(rc == 0);
  j = Json::parse(read_file(out));
  CHECK(j["violation_at"].is_null());
  CHECK(j["scalars"].size() == 8);
  CHECK(j["block_len"] == "2");

  rc = run_cli("bounded-report --spec " + (dir / "tmprod.json").string() +
                   " --n-max 3 --m-max 64",
               out);
  CHECK(rc == 0);
  j = Json::parse(read_file(out));
  CHECK(j["sup_ratio"] == "1");

  rc = run_cli("schmidt-report --spec " + (dir / "tmprod.json").string() +
                   " --b 2 --n-from 1 --n-to 4 --window 1",
               out);
  CHECK(rc == 0);
  j = Json::parse(read_file(out));
  CHECK(j["rows"].size() == 4);
  rc = run_cli("schmidt-report --spec " + (dir / "tmprod.json").string() +
                   " --b 2 --n-from 1 --n-to 4 --window 1 --format csv",
               out);
  CHECK(rc == 0);
  CHECK(read_file(out).substr(0, 36) == "n,log_linear_form,log_height,ratio\n1");

  // unit-root coefficient dumps use the residue column
  write_file(dir / "tmword.json",
             R"({"L":2,"radix":{"kind":"constant","q":2},"mu":{"kind":"constant","entry":{"const":1}}})");
  auto prodfile = dir / "unitprod.json";
  rc = run_cli("tm-to-product --spec " + (dir / "tmword.json").string(), prodfile);
  CHECK(rc == 0);
  rc = run_cli("expand --spec " + prodfile.string() + " --N 8 --format csv", out);
  CHECK(rc == 0);
  std::string csv = read_file(out);
  CHECK(csv.substr(0, 10) == "m,residue\n");
  CHECK(csv.find("3,0") != std::string::npos);

  // word dump wrapped in blocks of Q_1 = 2 letters
  rc = run_cli("tm-build --spec " + (dir / "tmword.json").string() + " --n 3 --wrap 1", out);
  CHECK(rc == 0);
  CHECK(read_file(out) == "0 1\n1 0\n1 0\n0 1\n");
}

TEST_CASE("cli hypothesis-style failures exit with code 2") {
  auto dir = scratch_dir();
  write_file(dir / "zeros.json", R"({"radix":{"kind":"constant","q":2},"domain":"rational",
    "coeffs":{"kind":"constant","entry":{"all_s":"0"}}})");
  auto out = dir / "w.json";
  int rc = run_cli("witness --spec " + (dir / "zeros.json").string() + " --n 0 --window 4", out);
  CHECK(rc == 2);
  CHECK(Json::parse(read_file(out))["error"]["code"] == "NO_WITNESS");

  // the inequality checker propagates the missing witness
  rc = run_cli("check-thm21 --spec " + (dir / "zeros.json").string() +
                   " --b 2 --epsilon 1/10 --variant first --n-from 0 --n-to 2",
               out);
  CHECK(rc == 2);
  CHECK(Json::parse(read_file(out))["error"]["code"] == "NO_WITNESS");
}

TEST_CASE("cli respects the environment bit cap") {
  auto dir = scratch_dir();
  auto specfile = dir / "c22.json";
  int rc = run_cli("cor22 --base 2", specfile);
  CHECK(rc == 0);
  auto out = dir / "e.json";
  // the coefficient at m = 64 is 1/2^64: representable as JSON, too big for
  // exact CSV materialization under a 32-bit cap
  std::string env = "CANTOR_MAX_BITS=32 ";
  std::string cmd = env + std::string(CANTOR_CLI_PATH) + " expand --spec " + specfile.string() +
                    " --N 128 --format csv > " + out.string() + " 2>/dev/null";
  rc = WEXITSTATUS(std::system(cmd.c_str()));
  CHECK(rc == 1);
  CHECK(Json::parse(read_file(out))["error"]["code"] == "CAP_EXCEEDED");
  cmd = env + std::string(CANTOR_CLI_PATH) + " expand --spec " + specfile.string() +
        " --N 128 --format json > " + out.string() + " 2>/dev/null";
  rc = WEXITSTATUS(std::system(cmd.c_str()));
  CHECK(rc == 0);
  auto j = Json::parse(read_file(out));
  CHECK(j["coeffs"][64]["den_exp"] == "64");
}

TEST_CASE("cli input errors exit with code 1") {
  auto dir = scratch_dir();
  write_file(dir / "broken.json", "{ not json");
  auto out = dir / "err.json";
  int rc = run_cli("expand --spec " + (dir / "broken.json").string() + " --N 4", out);
  CHECK(rc == 1);
  auto j = Json::parse(read_file(out));
  CHECK(j["error"]["code"] == "SPEC_PARSE");

  rc = run_cli("expand --spec " + (dir / "missing-file.json").string() + " --N 4", out);
  CHECK(rc == 1);

  write_file(dir / "unknown.json", R"({"kind":"constant","q":2,"bogus":1})");
  rc = run_cli("digits --spec " + (dir / "unknown.json").string() + " --n 5", out);
  CHECK(rc == 1);
  j = Json::parse(read_file(out));
  CHECK(j["error"]["code"] == "SPEC_PARSE");
}
