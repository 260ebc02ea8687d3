#include "doctest.h"

#include "opm/json_io.hpp"
#include "opm/verify.hpp"

using namespace opm;

TEST_CASE("matrix JSON round-trips") {
  const Mat g = grover();
  const Json j = matrix_to_json(g);
  CHECK(j[0][0] == "-1/2");
  CHECK(matrix_from_json(j) == g);

  // Numbers snap to exact rationals by default.
  const Json numbers = Json::parse("[[0.5,0.5],[0.5,-0.5]]");
  const Mat snapped = matrix_from_json(numbers);
  CHECK(snapped.is_exact());
  CHECK(snapped.at(0, 0).rat() == Rat(1, 2));

  // With snapping off they stay on the approx backend.
  const Mat approx = matrix_from_json(numbers, /*snap=*/false);
  CHECK_FALSE(approx.is_exact());
  CHECK(matrix_to_json(approx)[0][0].is_number());

  // Mixed entries are rejected, as are malformed rationals.
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[\"1/2\",0.5],[0,1]]")),
                  std::invalid_argument);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[\"1/0\"]]")), std::invalid_argument);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1,2],[3]]")), std::invalid_argument);

  // Small orders round-trip too (witness blocks are 3x3).
  const Mat block = opm3_element(Opm3Family::X1Bar, Scalar::exact(-1, 3),
                                 Scalar::exact(2, 3));
  CHECK(matrix_from_json(matrix_to_json(block)) == block);
}

TEST_CASE("permutation and pattern JSON") {
  const Perm p = parse_cycles("(1324)");
  CHECK(perm_to_json(p) == Json::array({3, 4, 2, 1}));
  CHECK(perm_from_json(perm_to_json(p)) == p);
  CHECK_THROWS_AS(perm_from_json(Json::array({1, 1, 3, 4})), std::invalid_argument);

  const Pattern pat = Pattern::parse_text("1100,1011,0011,1110");
  CHECK(pattern_to_json(pat) == Json::array({"1100", "1011", "0011", "1110"}));
  CHECK(pattern_from_json(pattern_to_json(pat)) == pat);
}

TEST_CASE("combination JSON round-trips") {
  const auto comb = in_perm_span(closing_example());
  REQUIRE(comb.has_value());
  const Json j = comb_to_json(*comb);
  CHECK(j.size() == 7);
  const PermLinComb back = comb_from_json(j);
  CHECK(back.evaluate() == closing_example());
}

TEST_CASE("scan report JSON shapes") {
  const Json two = two_perm_report_to_json(two_perm_orthogonality_scan());
  CHECK(two.at("pair_count") == 276);
  CHECK(two.at("any_nontrivial") == false);
  CHECK(two.at("pairs").size() == 276);
  CHECK(two.at("pairs")[0].at("solutions").size() == 4);

  const Json three = three_perm_report_to_json(three_perm_scan(3));
  CHECK(three.at("triples_total") == 2024);
  CHECK(three.at("unresolved_count") == 0);
}

TEST_CASE("classification JSON carries witnesses") {
  const Json j = classification_to_json(classify_orthogonal(grover()));
  CHECK(j.at("tag") == "permutative");
  CHECK(j.at("witness").at("family") == "X1");
  CHECK(j.at("witness").at("x") == "-1/2");

  const Json irr = classification_to_json(classify_orthogonal(closing_example()));
  CHECK(irr.at("tag") == "irreducible");
  CHECK_FALSE(irr.contains("witness"));
}
