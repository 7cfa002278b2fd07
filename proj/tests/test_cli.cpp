#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "knit/cli.hpp"

using namespace knit;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("group JSON round trips", "[cli]") {
  const FiniteGroup c6 = cyclic_group(6);
  const FiniteGroup back = group_from_json(group_to_json(c6));
  REQUIRE(back.table == c6.table);
  REQUIRE(back.labels == c6.labels);
  REQUIRE(back.generators == c6.generators);

  const FiniteGroup from_kind = group_from_json(json{{"kind", "cyclic"}, {"n", 6}});
  REQUIRE(from_kind.table == c6.table);

  // identity not at index 0 gets normalized
  json j{{"kind", "table"}, {"table", Table{{1, 0}, {0, 1}}}};
  const FiniteGroup g = group_from_json(j);
  REQUIRE(g.table == Table{{0, 1}, {1, 0}});
}

TEST_CASE("matched pair JSON round trips over the corpus", "[cli]") {
  for (const MatchedPair& mp :
       enumerate_matched_pairs(cyclic_group(3, "a"), cyclic_group(6, "b"))) {
    const MatchedPair back = matched_pair_from_json(matched_pair_to_json(mp));
    REQUIRE(back.alpha == mp.alpha);
    REQUIRE(back.beta == mp.beta);
    REQUIRE(back.H.table == mp.H.table);
    REQUIRE(back.G.table == mp.G.table);
    REQUIRE(back.verified);
  }
}

TEST_CASE("bad JSON is rejected", "[cli]") {
  REQUIRE_THROWS_AS(parse_group_spec("cyclic:"), malformed_error);
  REQUIRE_THROWS_AS(parse_group_spec("cyclic:x"), malformed_error);
  REQUIRE_THROWS_AS(parse_group_spec("cyclic:0"), precondition_error);
  REQUIRE_THROWS_AS(parse_group_spec("{not json"), malformed_error);
  REQUIRE_THROWS_AS(group_from_json(json{{"kind", "weird"}}), malformed_error);
  // a latin square that is not associative
  json j{{"kind", "table"},
         {"table", Table{{0, 1, 2, 3, 4},
                         {1, 0, 3, 4, 2},
                         {2, 4, 0, 1, 3},
                         {3, 2, 4, 0, 1},
                         {4, 3, 1, 2, 0}}}};
  REQUIRE_THROWS_AS(group_from_json(j), precondition_error);
}

TEST_CASE("enumerate command", "[cli]") {
  const CliResult r =
      run_cli({"enumerate", "--h", "cyclic:3", "--g", "cyclic:6"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("4 matched pairs") == 0);

  // byte-identical across runs
  const CliResult again =
      run_cli({"enumerate", "--h", "cyclic:3", "--g", "cyclic:6"});
  REQUIRE(again.out == r.out);

  const CliResult js = run_cli(
      {"enumerate", "--h", "cyclic:3", "--g", "cyclic:6", "--format", "json"});
  REQUIRE(js.code == 0);
  const json parsed = json::parse(js.out);
  REQUIRE(parsed.at("count") == 4);
  REQUIRE(parsed.at("pairs").size() == 4);
}

TEST_CASE("cap handling and exit codes", "[cli]") {
  const CliResult capped = run_cli(
      {"enumerate", "--h", "cyclic:3", "--g", "cyclic:6", "--cap", "1"});
  REQUIRE(capped.code == 2);
  REQUIRE(capped.err.find("cap") != std::string::npos);

  const CliResult bad = run_cli({"enumerate", "--h", "nope", "--g", "cyclic:6"});
  REQUIRE(bad.code == 1);

  const CliResult usage = run_cli({"enumerate", "--h", "cyclic:3"});
  REQUIRE(usage.code == 1);  // missing --g

  const CliResult unknown = run_cli({"frobnicate"});
  REQUIRE(unknown.code == 1);
}

TEST_CASE("KNIT_MAX_SEARCH provides the default cap", "[cli]") {
  setenv("KNIT_MAX_SEARCH", "1", 1);
  const CliResult r =
      run_cli({"enumerate", "--h", "cyclic:3", "--g", "cyclic:6"});
  unsetenv("KNIT_MAX_SEARCH");
  REQUIRE(r.code == 2);

  setenv("KNIT_MAX_SEARCH", "64", 1);
  const CliResult ok =
      run_cli({"enumerate", "--h", "cyclic:3", "--g", "cyclic:6"});
  unsetenv("KNIT_MAX_SEARCH");
  REQUIRE(ok.code == 0);
}

TEST_CASE("classify command emits a JSON report", "[cli]") {
  const CliResult r = run_cli(
      {"classify", "--relation", "k2", "--h", "cyclic:3", "--g", "cyclic:6"});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  REQUIRE(report.at("class_count") == 3);
  REQUIRE(report.at("classes").size() == 3);
  REQUIRE(report.at("basepoint_class") == 0);
  REQUIRE(report.at("identifications")[0] == "C3 x C6");

  const CliResult b2 = run_cli({"classify", "--relation", "b2", "--h",
                                "cyclic:3", "--g", "cyclic:6", "--beta",
                                "trivial"});
  REQUIRE(b2.code == 0);
  REQUIRE(json::parse(b2.out).at("class_count") == 2);
}

TEST_CASE("export then re-import is the identity", "[cli]") {
  const std::string path = "/tmp/knit_export_test.json";
  const CliResult r = run_cli({"export", "--h", "cyclic:3", "--g", "cyclic:6",
                               "--output", path});
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  json arr;
  in >> arr;
  REQUIRE(arr.size() == 4);
  const auto pairs =
      enumerate_matched_pairs(cyclic_group(3, "a"), cyclic_group(6, "b"));
  for (std::size_t i = 0; i < 4; ++i) {
    const MatchedPair back = matched_pair_from_json(arr[i]);
    REQUIRE(back.alpha == pairs[i].alpha);
    REQUIRE(back.beta == pairs[i].beta);
  }
  std::remove(path.c_str());
}

TEST_CASE("show command renders relations", "[cli]") {
  const auto pairs =
      enumerate_matched_pairs(cyclic_group(3, "a"), cyclic_group(6, "b"));
  const std::string pair_json = matched_pair_to_json(pairs[2]).dump();
  const CliResult r = run_cli({"show", "--pair", pair_json});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("relation: ba = a^2b^3") != std::string::npos);
  REQUIRE(r.out.find("abelian: no") != std::string::npos);
  REQUIRE(r.out.find("center size: 3") != std::string::npos);

  // the JSON form reuses the group encoding
  const CliResult js =
      run_cli({"show", "--pair", pair_json, "--format", "json"});
  REQUIRE(js.code == 0);
  const json parsed = json::parse(js.out);
  const FiniteGroup back = group_from_json(parsed.at("group"));
  REQUIRE(back.table == bicrossed(pairs[2]).base.table);
  REQUIRE(parsed.at("relations")[0] == "ba = a^2b^3");
}

TEST_CASE("deform command applies a datum", "[cli]") {
  const auto pairs =
      enumerate_matched_pairs(cyclic_group(3, "a"), cyclic_group(6, "b"));
  const std::string pair_json = matched_pair_to_json(pairs[2]).dump();
  const CliResult r = run_cli({"deform", "--pair", pair_json, "--sigma", "0",
                               "--v", "0,5,4,3,2,1", "--r", "0,0,0,0,0,0"});
  REQUIRE(r.code == 0);
  const json out = json::parse(r.out);
  const MatchedPair deformed = matched_pair_from_json(out.at("deformed"));
  REQUIRE(deformed.alpha == pairs[3].alpha);
  REQUIRE(deformed.beta == pairs[3].beta);

  // an invalid datum is an input error
  const CliResult bad = run_cli({"deform", "--pair", pair_json, "--sigma", "0",
                                 "--v", "0,1,2,3,4,5", "--r", "1,0,0,0,0,0"});
  REQUIRE(bad.code == 1);
}

TEST_CASE("cyclic command reports counts and the known discrepancy", "[cli]") {
  const CliResult r = run_cli({"cyclic", "--n", "3", "--m", "6"});
  REQUIRE(r.code == 0);
  REQUIRE(r.out.find("varsigma(3, 6) = {1}  count 1") != std::string::npos);
  REQUIRE(r.out.find("constructed pairs: 4") != std::string::npos);
  REQUIRE(r.out.find("stated count: 3") != std::string::npos);
  REQUIRE(r.out.find("MISMATCH") != std::string::npos);
  REQUIRE(r.out.find("matches the closed forms") != std::string::npos);

  const CliResult c2 = run_cli({"cyclic", "--n", "2", "--m", "8"});
  REQUIRE(c2.code == 0);
  REQUIRE(c2.out.find("case formula (n = 2): 4") != std::string::npos);

  const CliResult skip =
      run_cli({"cyclic", "--n", "3", "--m", "30", "--cap", "64"});
  REQUIRE(skip.code == 0);
  REQUIRE(skip.out.find("skipped") != std::string::npos);
}

TEST_CASE("help exits cleanly", "[cli]") {
  REQUIRE(run_cli({"--help"}).code == 0);
}
