#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>

#include "dsc/json_io.hpp"
#include "dsc/random_dsc.hpp"
#include "oracles.hpp"

using namespace dsc;
using namespace dsc::testing;

namespace {

Json manifest(std::initializer_list<Json> packages) {
  return Json{{"packages", Json::array_t(packages)}};
}

Json pkg(const char* name, const char* version, std::initializer_list<Json> deps = {}) {
  Json p{{"name", name}, {"version", version}};
  if (deps.size() > 0) p["dependencies"] = Json::array_t(deps);
  return p;
}

Json req(const char* name, const char* spec) {
  return Json{{"name", name}, {"spec", spec}};
}

std::vector<EventSet> dep_of(const PreDsc& p, const std::string& label) {
  auto fam = p.dep[p.ground.index(label)];
  std::sort(fam.begin(), fam.end());
  return fam;
}

}  // namespace

TEST_CASE("structure JSON round trips") {
  std::mt19937 rng(79);
  std::vector<Dsc> pool{e1(), e2(), e3(), e4(), vfix(), uv(), discrete2()};
  for (int trial = 0; trial < 60; ++trial) pool.push_back(random_dsc(rng, 1 + rng() % 7));
  for (const Dsc& d : pool) {
    Json j = dsc_to_json(d);
    CHECK(dsc_from_json(j) == d);
    // loading the canonical form and re-emitting is the identity
    Json reparsed = Json::parse(canonical_json(j));
    CHECK(canonical_json(dsc_to_json(dsc_from_json(reparsed))) == canonical_json(j));
  }
}

TEST_CASE("fixture file parses to the choice structure") {
  std::ifstream in(FIXTURE_DIR "/e1.json");
  REQUIRE(in.good());
  Json j = Json::parse(in);
  CHECK(dsc_from_json(j) == e1());
}

TEST_CASE("structure JSON rejects malformed input") {
  CHECK_THROWS_AS(dsc_from_json(Json::array()), ParseError);
  CHECK_THROWS_AS(dsc_from_json(Json{{"events", {"a"}}}), ParseError);
  CHECK_THROWS_AS(
      dsc_from_json(Json{{"events", {"a", "b"}}, {"dep", {{"a", Json::array()}}}}),
      ParseError);  // missing entry for b
  CHECK_THROWS_AS(predsc_from_json(Json{{"events", {"a"}}, {"dep", {{"a", 3}}}}), ParseError);
}

TEST_CASE("antimatroid and morphism JSON") {
  Antimatroid m = phi(e1());
  CHECK(antimatroid_from_json(antimatroid_to_json(m)) == m);
  CHECK_THROWS_AS(antimatroid_from_json(Json{{"events", {"a"}}}), ParseError);

  DscMorphism f = DscMorphism::identity(e1());
  Json j = morphism_to_json(f);
  CHECK(morphism_from_json(j, e1(), e1()) == f);
  CHECK_THROWS_AS(morphism_from_json(Json{{"map", {{"a", "b"}}}}, e1(), e1()), ParseError);
}

TEST_CASE("merkle store JSON is deterministic") {
  Dsc m = merkle_dsnc(e1());
  std::string s1 = canonical_json(merkle_store_to_json(merkle_hashes(m)));
  std::string s2 = canonical_json(merkle_store_to_json(merkle_hashes(merkle_dsnc(e1()))));
  CHECK(s1 == s2);
  CHECK(s1.find("0263829989b6fd954f72baaf2fc64bc2e2f01d692d4de72986ea808f6e99813f") !=
        std::string::npos);
}

TEST_CASE("manifest with caret ranges") {
  Json m = manifest({pkg("a", "1.0", {req("b", "^1.0.0")}),
                     pkg("b", "1.0"), pkg("b", "1.1"), pkg("b", "0.9")});
  PreDsc p = manifest_to_predsc(m);
  CHECK(p.ground.labels() ==
        std::vector<std::string>{"a-1.0", "b-0.9", "b-1.0", "b-1.1"});
  std::vector<EventSet> want{EventSet::of({p.ground.index("b-1.0")}),
                             EventSet::of({p.ground.index("b-1.1")})};
  std::sort(want.begin(), want.end());
  CHECK(dep_of(p, "a-1.0") == want);
  CHECK(dep_of(p, "b-0.9") == std::vector<EventSet>{EventSet{}});
  CHECK(validate_dsc(p).ok());
}

TEST_CASE("manifest with exact pins and conjunction") {
  Json m = manifest({pkg("app", "1.0", {req("lib", "1.0"), req("util", "2.0")}),
                     pkg("lib", "1.0"), pkg("lib", "2.0"), pkg("util", "2.0")});
  PreDsc p = manifest_to_predsc(m);
  CHECK(dep_of(p, "app-1.0") ==
        std::vector<EventSet>{EventSet::of(
            {p.ground.index("lib-1.0"), p.ground.index("util-2.0")})});
}

TEST_CASE("manifest closes dependencies transitively") {
  Json m = manifest({pkg("a", "1.0", {req("b", "1.0")}),
                     pkg("b", "1.0", {req("c", "1.0")}),
                     pkg("c", "1.0")});
  PreDsc p = manifest_to_predsc(m);
  CHECK(dep_of(p, "a-1.0") ==
        std::vector<EventSet>{EventSet::of(
            {p.ground.index("b-1.0"), p.ground.index("c-1.0")})});
  CHECK(validate_dsc(p).ok());

  // choice below a conjunction expands to the cross product
  Json m2 = manifest({pkg("a", "1.0", {req("b", "^1.0.0")}),
                      pkg("b", "1.0", {req("c", "^1.0.0")}),
                      pkg("b", "1.1", {req("c", "1.1")}),
                      pkg("c", "1.0"), pkg("c", "1.1")});
  PreDsc p2 = manifest_to_predsc(m2);
  auto fam = dep_of(p2, "a-1.0");
  std::vector<EventSet> want{
      EventSet::of({p2.ground.index("b-1.0"), p2.ground.index("c-1.0")}),
      EventSet::of({p2.ground.index("b-1.0"), p2.ground.index("c-1.1")}),
      EventSet::of({p2.ground.index("b-1.1"), p2.ground.index("c-1.1")})};
  std::sort(want.begin(), want.end());
  CHECK(fam == want);
  CHECK(validate_dsc(p2).ok());
}

TEST_CASE("manifest failure modes") {
  CHECK_THROWS_AS(manifest_to_predsc(Json{{"name", "x"}}), ParseError);
  CHECK_THROWS_AS(
      manifest_to_predsc(manifest({pkg("a", "1.0", {req("b", "1.0")})})),
      ParseError);  // unresolvable
  CHECK_THROWS_AS(manifest_to_predsc(manifest({pkg("a", "x.y")})), ParseError);

  // dependency cycles survive ingestion and surface as axiom violations
  Json cyc = manifest({pkg("a", "1.0", {req("b", "1.0")}),
                       pkg("b", "1.0", {req("a", "1.0")})});
  PreDsc p = manifest_to_predsc(cyc);
  auto r = validate_dsc(p);
  CHECK(!r.ok());
}

TEST_CASE("manifest detection") {
  CHECK(looks_like_manifest(manifest({pkg("a", "1.0")})));
  CHECK(!looks_like_manifest(dsc_to_json(e1())));
}
