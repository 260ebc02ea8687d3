#include "doctest.h"

#include "opm/mat.hpp"
#include "opm/pattern.hpp"
#include "opm/perm.hpp"

#include <stdexcept>

using namespace opm;

TEST_CASE("pattern text round-trip") {
  const Pattern p = Pattern::parse_text("1100,1011,0011,1110");
  CHECK(p.to_text() == "1100,1011,0011,1110");
  CHECK(p.bit(1, 0));
  CHECK_FALSE(p.bit(0, 2));
  CHECK(Pattern::parse_text("10,01").order() == 2);
  CHECK_THROWS_AS(Pattern::parse_text("110,01"), std::invalid_argument);
  CHECK_THROWS_AS(Pattern::parse_text("12,01"), std::invalid_argument);
}

TEST_CASE("quadrangularity fixtures") {
  // Inner product 1 between columns 1 and 4 breaks it.
  CHECK_FALSE(is_quadrangular(Pattern::parse_text("1100,1011,0011,1110")));
  CHECK(is_quadrangular(Pattern::parse_text("1000,0100,0010,0001")));
  CHECK(is_quadrangular(Pattern::parse_text("1111,1111,1111,1111")));
}

TEST_CASE("strong quadrangularity fixtures") {
  CHECK(is_strongly_quadrangular(Pattern::parse_text("1111,1111,1111,1111")));
  // Columns 1,3 and 2,3 have inner product 1: not even quadrangular.
  const Pattern bad = Pattern::parse_text("1100,0011,1111,1101");
  CHECK_FALSE(is_quadrangular(bad));
  CHECK_FALSE(is_strongly_quadrangular(bad));
  CHECK(is_strongly_quadrangular(Pattern::parse_text("1000,0100,0010,0001")));
}

TEST_CASE("unitary support criterion at order <= 4") {
  CHECK(supports_unitary_small(Pattern::parse_text("1111,1111,1111,1111")));
  CHECK(supports_unitary_small(Pattern::parse_text("1000,0100,0010,0001")));
  CHECK_FALSE(supports_unitary_small(Pattern::parse_text("1100,1011,0011,1110")));
}

TEST_CASE("invariance under row/column permutation and transposition") {
  const Pattern fixtures[] = {
      Pattern::parse_text("1100,1011,0011,1110"),
      Pattern::parse_text("1100,0011,1111,1101"),
      Pattern::parse_text("1111,1111,1111,1111"),
      Pattern::parse_text("1100,1100,0011,0011"),
  };
  for (const Pattern& p : fixtures) {
    const bool q = is_quadrangular(p);
    const bool sq = is_strongly_quadrangular(p);
    CHECK(is_quadrangular(p.transposed()) == q);
    CHECK(is_strongly_quadrangular(p.transposed()) == sq);
    for (const char* t : {"(12)", "(1234)", "(13)(24)"}) {
      const Perm g = parse_cycles(t);
      Pattern rows(4), cols(4);
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          rows.set(i, j, p.bit(g(i), j));
          cols.set(i, j, p.bit(i, g(j)));
        }
      }
      CHECK(is_quadrangular(rows) == q);
      CHECK(is_quadrangular(cols) == q);
      CHECK(is_strongly_quadrangular(rows) == sq);
      CHECK(is_strongly_quadrangular(cols) == sq);
    }
  }
}

TEST_CASE("full order-4 sweep: strongly quadrangular implies quadrangular") {
  int sq_count = 0;
  for (unsigned bits = 0; bits < (1u << 16); ++bits) {
    const Pattern p = Pattern::from_bits(4, static_cast<std::uint16_t>(bits));
    if (is_strongly_quadrangular(p)) {
      ++sq_count;
      CHECK(is_quadrangular(p));
    }
  }
  CHECK(sq_count > 0);
}

TEST_CASE("pattern of a generic four-permutation combination") {
  using namespace opm;
  // Generic coefficients on (24), (12)(34), (124), (234): the support tiles
  // exactly the fixture pattern that fails quadrangularity.
  Mat m = Mat::zero(4);
  const std::pair<const char*, Scalar> terms[] = {
      {"(24)", Scalar::exact(1, 2)},
      {"(12)(34)", Scalar::exact(1, 3)},
      {"(124)", Scalar::exact(1, 5)},
      {"(234)", Scalar::exact(1, 7)},
  };
  for (const auto& [cycles, coeff] : terms) {
    m = m + to_matrix(parse_cycles(cycles)).scaled(coeff);
  }
  CHECK(m.pattern_of().to_text() == "1100,1011,0011,1110");
  CHECK_FALSE(is_quadrangular(m.pattern_of()));
}
