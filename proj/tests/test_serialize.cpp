#include "doctest.h"

#include "dgroup/serialize.hpp"
#include "fixtures.hpp"

using namespace dgroup;

TEST_CASE("diagrams survive a JSON round trip") {
  auto p = fixtures::load(fixtures::commuting);
  auto w = p.parse_word("aabc");
  auto ball = build_ball(p, w, 3);
  for (auto const& d : ball.vertices) {
    auto j = Json::parse(diagram_to_json(d).dump());
    CHECK(diagram_from_json(p, j) == d);
  }
  auto d = ball.vertices.back();
  CHECK(diagram_to_json(d) == diagram_to_json(diagram_from_json(p, diagram_to_json(d))));
}

TEST_CASE("non-canonical layers are rejected") {
  auto p = fixtures::load(fixtures::commuting);
  // Two disjoint cells belong in the same layer.
  Json j = {{"top", "abab"}, {"layers", {{{0, 0, "fwd"}}, {{2, 0, "fwd"}}}}};
  CHECK_THROWS_AS(diagram_from_json(p, j), std::invalid_argument);
  Json ok = {{"top", "abab"}, {"layers", {{{0, 0, "fwd"}, {2, 0, "fwd"}}}}};
  CHECK(to_string(diagram_from_json(p, ok)).size() > 0);
  Json wrong = {{"top", "abab"}, {"layers", {{{1, 0, "fwd"}}}}};
  CHECK_THROWS(diagram_from_json(p, wrong));
}

TEST_CASE("derivations round trip and replay") {
  auto p = fixtures::load(fixtures::commuting);
  auto from = p.parse_word("abc");
  auto to = p.parse_word("cba");
  auto v = words_equal_mod_p(p, from, to, Budget{});
  REQUIRE(v.status == Status::proved);
  auto j = Json::parse(derivation_to_json(p, *v.proof()).dump());
  CHECK(derivation_from_json(p, j) == *v.proof());
  auto doc = Json::parse(derivation_witness(p, from, to, *v.proof()).dump());
  CHECK(verify_witness(doc) == "derivation");
  doc["to"] = "bca";
  CHECK_THROWS(verify_witness(doc));
}

TEST_CASE("saved Z^2 witnesses replay and tampering is caught") {
  auto p = fixtures::load(fixtures::commuting);
  auto r = freeness_verdict(p, p.parse_word("aabbcc"), Budget{});
  REQUIRE(r.z2);
  auto doc = Json::parse(z2_witness(p, *r.z2).dump());
  CHECK(verify_witness(doc) == "z2");

  auto same = doc;
  same["b"] = same["a"];
  CHECK_THROWS(verify_witness(same));

  auto other = doc;
  other["presentation"] = "letters: a b c\nrel: ab = ba\n";
  CHECK_THROWS(verify_witness(other));

  auto unknown = doc;
  unknown["witness_kind"] = "cycle";
  CHECK_THROWS(verify_witness(unknown));
}

TEST_CASE("split witnesses round trip") {
  auto p = fixtures::load(fixtures::commuting);
  auto r = freeness_verdict(p, p.parse_word("aabbcc"), Budget{});
  REQUIRE(r.z2);
  auto j = Json::parse(split_witness_to_json(p, r.z2->split).dump());
  auto back = split_witness_from_json(p, j);
  CHECK(back.factors == r.z2->split.factors);
  CHECK(verify_witness(Json::parse(split_witness(p, back).dump())) == "split");
}
