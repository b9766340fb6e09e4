#include "doctest.h"
#include "tmt/io.hpp"

using namespace tmt;

TEST_CASE("json round trips") {
  Bubble n = build_necklace(3, 2);
  CHECK(bubble_from_json(to_json(n)) == n);
  CHECK_THROWS(bubble_from_json(json::parse(R"({"num_white":1,"num_black":1,"edges":[[0,0,1]]})")));

  auto closures = enumerate_closures({quartic_melon(1), build_necklace(2, 2)}, 0, true);
  REQUIRE(!closures.empty());
  auto g = feynman_from_json(to_json(closures.front()));
  CHECK(g.zero_edges == closures.front().zero_edges);
  CHECK(g.total_faces() == closures.front().total_faces());

  StrandedMap m = StrandedMap::vertex(true);
  m.add_edge(12, 0, 0, 0, 1);
  m.rotations.push_back({});
  m.add_edge(3, 0, 1, 1, 0);
  CHECK(map_from_json(to_json(m)) == m);
  json mj = to_json(m);
  CHECK(mj["vertices"][0]["cilium"].is_number());
  CHECK(mj["edges"][1]["ends"] == json::array({0, 1}));
  mj["edges"][1]["ends"] = {1, 1};
  CHECK_THROWS(map_from_json(mj));

  auto series = expectation_series(ModelSpec::restricted_quartic(), Bubble::dipole(), 3, 1);
  json sj = to_json(series);
  CHECK(sj["1"]["0"] == "1");

  ModelSpec restricted = ModelSpec::restricted_quartic();
  ModelSpec back = model_from_json(to_json(restricted));
  REQUIRE(back.entries.size() == restricted.entries.size());
  for (std::size_t k = 0; k < back.entries.size(); ++k) {
    CHECK(back.entries[k].omega == restricted.entries[k].omega);
    CHECK(canonical_form(back.entries[k].bubble) == canonical_form(restricted.entries[k].bubble));
  }
  auto t = model_from_json(json::parse(R"({"entries":[{"coupling":"a","tree":[2,2]}]})"));
  CHECK(t.entries[0].omega == 5);
  CHECK(model_from_json(json::parse(R"({"preset":"full"})")).entries.size() == 7);
}

TEST_CASE("dot output") {
  auto closures = enumerate_closures({build_necklace(2, 2)}, 1, true);
  REQUIRE(!closures.empty());
  std::string dot = to_dot(closures.front());
  CHECK(dot.find("dashed") != std::string::npos);
  CHECK(to_dot(quartic_melon(2)).find("label=\"2\"") != std::string::npos);
  StrandedMap m = StrandedMap::vertex();
  m.add_edge(13, 0, 0, 0, 1);
  CHECK(to_dot(m).find(":invis:") != std::string::npos);
}
