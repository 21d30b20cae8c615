#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "fconj/io.hpp"
#include "support.hpp"

using namespace fconj;

namespace {

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("fconj_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("divisor JSON round trip") {
  std::mt19937_64 rng(41);
  for (int n : {5, 12, 16}) {
    const DivisorClass d = testing::random_divisor(n, rng, 30);
    CHECK(divisor_from_json(divisor_to_json(d)) == d);
    CHECK(divisor_from_json(Json::parse(divisor_to_json(d).dump())) == d);
  }
  const Json j = divisor_to_json(DivisorClass::delta(SubsetMask::of({12}), 12, -5));
  CHECK(j.dump() == R"({"n":12,"terms":[{"coeff":-5,"subset":"1,2,3,4,5,6,7,8,9,10,11"}]})");
}

TEST_CASE("divisor JSON accepts either side and sums repeats") {
  const auto j = Json::parse(R"({"n": 6, "terms": [{"coeff": 2, "subset": "1,2"}, {"coeff": 1, "subset": "3,4,5,6"}]})");
  const DivisorClass d = divisor_from_json(j);
  CHECK(d.support_size() == 1);
  CHECK(d.coeff_of(SubsetMask::of({1, 2})) == 3);
}

TEST_CASE("malformed divisor JSON") {
  CHECK_THROWS_AS(divisor_from_json(Json::parse(R"({"terms": []})")), ParseError);
  CHECK_THROWS_AS(divisor_from_json(Json::parse(R"({"n": 6})")), ParseError);
  CHECK_THROWS_AS(divisor_from_json(Json::parse(R"({"n": 6, "terms": [{"coeff": "x", "subset": "1"}]})")), ParseError);
  CHECK_THROWS_AS(divisor_from_json(Json::parse(R"({"n": 6, "terms": [{"coeff": 1, "subset": "1,7"}]})")), InvalidInput);
  CHECK_THROWS_AS(divisor_from_json(Json::parse(R"({"n": 3, "terms": []})")), InvalidInput);
}

TEST_CASE("curve functional JSON") {
  const CurveFunctional cp = build_CP(build_biplane_qr());
  const Json j = functional_to_json(cp);
  CHECK(j["boundary"].size() == 11);
  CHECK(j["psi"][11] == -2);
  CHECK(functional_from_json(j) == cp);
  CHECK_THROWS_AS(functional_from_json(Json::parse(R"({"n": 5, "psi": [0, 0]})")), ParseError);
  CHECK_THROWS_AS(
      functional_from_json(Json::parse(R"({"n": 5, "psi": [0,0,0,0,0], "boundary": [{"subset": "1", "value": 1}]})")),
      ParseError);
}

TEST_CASE("divisor files in both formats") {
  const DivisorClass dp = build_DP(build_biplane_qr());
  std::ostringstream text;
  write_divisor(text, dp);
  CHECK(load_divisor(temp_file("dp.txt", text.str())) == dp);
  CHECK(load_divisor(temp_file("dp.json", "\n  " + divisor_to_json(dp).dump(2))) == dp);
  CHECK(load_divisor(temp_file("small.txt", "1 1,2\n"), 6) == DivisorClass::delta(SubsetMask::of({1, 2}), 6));
  CHECK_THROWS_AS(load_divisor(temp_file("bad.json", "{ not json")), ParseError);
  CHECK_THROWS_AS(load_divisor("/nonexistent/d.txt"), ParseError);
  CHECK(load_functional(temp_file("cp.json", functional_to_json(build_CP(build_biplane_qr())).dump())) ==
        build_CP(build_biplane_qr()));
}

TEST_CASE("report JSON") {
  const Json design = to_json(verify_biplane(build_biplane_qr()));
  CHECK(design["pair_replication"] == 2);
  CHECK(design["point_replication"] == 5);
  CHECK(design["ok"] == true);

  const Json fnef = to_json(fnef_check(DivisorClass::delta(SubsetMask::of({1, 2}), 6)));
  CHECK(fnef["min_value"] == -1);
  CHECK(fnef["argmin"].is_string());

  const Json cert = to_json(certify_not_boundary(build_D0(), build_CP(build_biplane_qr())));
  CHECK(cert["not_boundary"] == "inconclusive");
  CHECK(cert["pairing"] == 10);

  ExtremalityReport r;
  r.n = 12;
  r.ambient_dim = 1981;
  r.ranks = {{7, 3, 9}};
  const Json ext = to_json(r);
  CHECK(ext["rank_mod_p"][0]["rank"] == 3);
  CHECK(ext["certified_extremal"] == false);
}

TEST_CASE("run manifest") {
  const std::string path = temp_file("abc.txt", "abc");
  CHECK(sha256_file(path) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK_THROWS_AS(sha256_file("/nonexistent/x"), ParseError);

  RunManifest m({"fconj", "verify"});
  m.add_input(path);
  m.set_primes({2147483647U});
  m.set_threads(3);
  m.phase("load");
  m.phase("scan");
  m.finish();
  const Json j = m.to_json();
  CHECK(j["command_line"][1] == "verify");
  CHECK(j["library_version"] == kLibraryVersion);
  CHECK(j["inputs"][0]["sha256"] == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(j["primes"][0] == 2147483647U);
  CHECK(j["threads"] == 3);
  CHECK(j["wall_seconds"].contains("scan"));
}
