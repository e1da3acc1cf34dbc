#include <catch2/catch_amalgamated.hpp>

#include "gridknot/knot_table.hpp"
#include "gridknot/unknot_search.hpp"

using namespace gridknot;

static const ClassRegistry& registry() {
  static ClassRegistry reg = ClassRegistry::load_default();
  return reg;
}

TEST_CASE("registry loads and passes its self test") {
  const auto& reg = registry();
  CHECK(reg.size() == 36);
  CHECK(reg.entries().front().label.name == "0_1");
  CHECK(reg.entries().back().label.name == "8_21");
}

TEST_CASE("class order fixes the label indices") {
  const auto& reg = registry();
  auto names = ClassRegistry::expected_names();
  REQUIRE(names.size() == 36);
  for (size_t i = 0; i < names.size(); ++i) {
    CHECK(reg.at(static_cast<int>(i)).label.name == names[i]);
    CHECK(reg.label(names[i]).index == static_cast<int>(i));
  }
}

TEST_CASE("unknot seed is the trivial diagram") {
  CHECK(registry().seed("0_1") == GridDiagram::validate({1, 2}, {2, 1}));
  CHECK(crossing_count(registry().seed("0_1")) == 0);
}

TEST_CASE("trefoil seed is a 5x5 grid with three crossings") {
  GridDiagram seed = registry().seed("3_1");
  CHECK(seed.n() == 5);
  CHECK(crossing_count(seed) == 3);
}

TEST_CASE("every seed draws its crossing number") {
  for (const auto& e : registry().entries()) {
    CHECK(component_count(e.seed) == 1);
    CHECK(crossing_count(e.seed) == ClassRegistry::crossing_number(e.label.name));
    CHECK_FALSE(e.source.empty());
  }
}

TEST_CASE("unknown labels are rejected") {
  CHECK_THROWS_AS(registry().seed("9_42"), TableError);
}

TEST_CASE("unknot search agrees with the first two seeds") {
  CHECK(decide(registry().seed("0_1")).kind == VerdictKind::Unknot);
  CHECK(decide(registry().seed("3_1")).kind == VerdictKind::Knotted);
}
