#include "doctest.h"

#include "opm/decompose.hpp"
#include "opm/rational.hpp"

#include <cstdint>

using namespace opm;

namespace {

Mat exact4(std::initializer_list<const char*> entries) {
  std::vector<Scalar> v;
  for (const char* t : entries) v.push_back(Scalar::exact(*parse_rational(t)));
  return Mat::from_entries(4, v);
}

const Mat kClosingExample = exact4({"10/11", "-2/11", "-1/11", "4/11",  //
                                    "-2/11", "7/11", "-2/11", "8/11",   //
                                    "-1/11", "-2/11", "10/11", "4/11",  //
                                    "4/11", "8/11", "4/11", "-5/11"});

// Independent rank computation by plain Gaussian elimination over rationals.
int rank_of(std::vector<std::vector<Rat>> m) {
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const Rat f = m[r][col] / m[rank][col];
      for (int c = 0; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

std::uint64_t splitmix(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

TEST_CASE("basis has ten independent elements in five blocks") {
  const auto& basis = basis_B();
  REQUIRE(basis.size() == 10);

  std::vector<std::vector<Rat>> vecs;
  for (const Perm& p : basis) {
    std::vector<Rat> row(16);
    const Mat m = to_matrix(p);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) row[i * 4 + j] = m.at(i, j).rat();
    }
    vecs.push_back(std::move(row));
  }
  CHECK(rank_of(vecs) == 10);

  int sizes[6] = {0, 0, 0, 0, 0, 0};
  for (int k = 0; k < 10; ++k) ++sizes[basis_block_of(k)];
  CHECK(sizes[1] == 4);
  CHECK(sizes[2] == 2);
  CHECK(sizes[3] == 2);
  CHECK(sizes[4] == 1);
  CHECK(sizes[5] == 1);

  // Each block is pairwise H-orthogonal.
  for (int k = 0; k < 10; ++k) {
    for (int l = k + 1; l < 10; ++l) {
      if (basis_block_of(k) == basis_block_of(l)) {
        CHECK(basis[k].h_orthogonal_to(basis[l]));
      }
    }
  }
}

TEST_CASE("span coordinates of the closing example") {
  const auto comb = in_perm_span(kClosingExample);
  REQUIRE(comb.has_value());
  CHECK(comb->size() == 7);
  auto coeff = [&](const char* t) { return comb->coeff(parse_cycles(t))->rat(); };
  CHECK(coeff("(12)") == Rat(1, 11));
  CHECK(coeff("(34)") == Rat(7, 11));
  CHECK(coeff("(13)(24)") == Rat(-1, 11));
  CHECK(coeff("(14)(23)") == Rat(4, 11));
  CHECK(coeff("(24)") == Rat(9, 11));
  CHECK(coeff("(12)(34)") == Rat(-3, 11));
  CHECK(coeff("(23)") == Rat(-6, 11));
  CHECK(comb->evaluate() == kClosingExample);
  CHECK(kClosingExample.is_orthogonal());
  CHECK_FALSE(kClosingExample.is_permutative());

  CHECK(subspace_membership(kClosingExample) == std::set<int>{1, 2, 5});
}

TEST_CASE("span membership edge cases") {
  const auto id_comb = in_perm_span(Mat::identity(4));
  REQUIRE(id_comb.has_value());
  CHECK(id_comb->evaluate() == Mat::identity(4));

  // Row sums 1 but column sums unequal: not in the span.
  Mat e11 = Mat::zero(4);
  e11.set(0, 0, Scalar::exact(1));
  e11.set(1, 0, Scalar::exact(1));
  e11.set(2, 0, Scalar::exact(1));
  e11.set(3, 0, Scalar::exact(1));
  CHECK_FALSE(in_perm_span(e11).has_value());

  CHECK(subspace_membership(to_matrix(parse_cycles("(123)"))) == std::set<int>{4});
  CHECK(subspace_membership(grover()) == std::set<int>{1, 2});
}

TEST_CASE("span round-trip on random exact combinations") {
  std::uint64_t state = 12345;
  const auto& perms = all_perms(4);
  for (int iter = 0; iter < 50; ++iter) {
    PermLinComb comb;
    for (const Perm& p : perms) {
      const long long num = static_cast<long long>(splitmix(state) % 19) - 9;
      const long long den = 1 + static_cast<long long>(splitmix(state) % 7);
      if (num != 0) comb.add(p, Scalar::exact(num, den));
    }
    const Mat m = comb.evaluate();
    const auto back = in_perm_span(m);
    REQUIRE(back.has_value());
    CHECK(back->evaluate() == m);

    // Row and column sums all equal the coefficient sum.
    Rat total = 0;
    for (const auto& [p, c] : comb.terms()) total += c.rat();
    auto [rows, cols] = m.row_col_sums();
    for (int i = 0; i < 4; ++i) {
      CHECK(rows[i].rat() == total);
      CHECK(cols[i].rat() == total);
    }
  }
}

TEST_CASE("span solve snaps approx inputs") {
  const Mat g_approx = grover().to_approx();
  const auto comb = in_perm_span(g_approx);
  REQUIRE(comb.has_value());
  CHECK(comb->coeff(parse_cycles("(12)(34)"))->rat() == Rat(1));
  CHECK(comb->coeff(parse_cycles("(12)"))->rat() == Rat(-1, 2));
}

TEST_CASE("four-permutation expression") {
  const PermLinComb g4 = opm_as_four_perms(grover());
  REQUIRE(g4.size() == 4);
  CHECK(g4.coeff(parse_cycles("(34)"))->rat() == Rat(-1, 2));
  CHECK(g4.coeff(parse_cycles("(12)"))->rat() == Rat(1, 2));
  CHECK(g4.coeff(parse_cycles("(13)(24)"))->rat() == Rat(1, 2));
  CHECK(g4.coeff(parse_cycles("(14)(23)"))->rat() == Rat(1, 2));

  // Degenerate member: a single permutation term.
  const PermLinComb single = opm_as_four_perms(to_matrix(parse_cycles("(13)(24)")));
  CHECK(single.size() == 1);

  const Mat a = family_element({FamilyLetter::X, 1},
                               {Scalar::exact(2, 5), Scalar::exact(4, 5)});
  const PermLinComb a4 = opm_as_four_perms(a);
  CHECK(a4.coeff(parse_cycles("(34)"))->rat() == Rat(2, 5));
  CHECK(a4.coeff(parse_cycles("(12)"))->rat() == Rat(-2, 5));
  CHECK(a4.coeff(parse_cycles("(13)(24)"))->rat() == Rat(4, 5));
  CHECK(a4.coeff(parse_cycles("(14)(23)"))->rat() == Rat(1, 5));

  CHECK_THROWS_AS(opm_as_four_perms(kClosingExample), std::invalid_argument);
}

TEST_CASE("six-way permutative split") {
  const auto comb = in_perm_span(kClosingExample);
  REQUIRE(comb.has_value());
  const auto parts = split_six_permutative(*comb);
  CHECK(parts.size() == 4);
  Mat sum = Mat::zero(4);
  for (const auto& [cls, part] : parts) {
    (void)cls;
    CHECK(part.is_permutative());
    sum = sum + part;
  }
  CHECK(sum == kClosingExample);

  PermLinComb single;
  single.add(parse_cycles("(1234)"), Scalar::exact(1));
  CHECK(split_six_permutative(single).size() == 1);

  PermLinComb all;
  for (const Perm& p : all_perms(4)) all.add(p, Scalar::exact(1));
  const auto six = split_six_permutative(all);
  CHECK(six.size() == 6);
  for (const auto& [cls, part] : six) {
    (void)cls;
    CHECK(part == Mat::all_ones(4));
  }

  // Random combinations: parts always permutative and they sum back.
  std::uint64_t state = 777;
  for (int iter = 0; iter < 40; ++iter) {
    PermLinComb c;
    for (const Perm& p : all_perms(4)) {
      const long long num = static_cast<long long>(splitmix(state) % 15) - 7;
      if (num != 0) c.add(p, Scalar::exact(num, 4));
    }
    Mat total = Mat::zero(4);
    for (const auto& [cls, part] : split_six_permutative(c)) {
      (void)cls;
      CHECK(part.is_permutative());
      total = total + part;
    }
    CHECK(total == c.evaluate());
  }
}

TEST_CASE("no orthogonal combination of two distinct permutations") {
  const auto report = two_perm_orthogonality_scan();
  CHECK(report.pair_count == 276);
  CHECK_FALSE(report.any_nontrivial);
  for (const auto& pair : report.pairs) {
    CHECK(pair.solutions.size() == 4);
    CHECK_FALSE(pair.nontrivial_solution);
    CHECK(pair.overlap <= 2);
    for (const auto& [alpha, beta] : pair.solutions) {
      CHECK(alpha * beta == 0);
      CHECK(alpha + beta != 0);
    }
  }

  // The identity/(12) pair used as a worked example.
  const auto& first = report.pairs.front();
  CHECK(first.p == Perm::identity(4));
  CHECK(first.overlap == 2);
}

TEST_CASE("three-permutation classification") {
  const auto ds = three_perm_classify(Perm::identity(4), parse_cycles("(234)"),
                                      parse_cycles("(243)"), Scalar::exact(-1, 3),
                                      Scalar::exact(2, 3), Scalar::exact(2, 3));
  CHECK(ds.kind == ThreePermClassification::Kind::DirectSum);
  REQUIRE(ds.form.has_value());
  CHECK(ds.form->sizes == std::vector<int>{1, 3});
  REQUIRE(ds.block3.has_value());
  CHECK(ds.block3->family == Opm3Family::X1Bar);
  CHECK(ds.block3->x.rat() == Rat(-1, 3));
  CHECK(ds.block3->y.rat() == Rat(2, 3));

  const auto deg = three_perm_classify(Perm::identity(4), parse_cycles("(12)"),
                                       parse_cycles("(34)"), Scalar::exact(1),
                                       Scalar::exact(0), Scalar::exact(0));
  CHECK(deg.kind == ThreePermClassification::Kind::SignedPermutation);
  CHECK(deg.sign == 1);
  CHECK(deg.tau == Perm::identity(4));

  // Cancellation with all three coefficients nonzero.
  const auto canc = three_perm_classify(parse_cycles("(12)"), parse_cycles("(34)"),
                                        parse_cycles("(12)(34)"), Scalar::exact(1),
                                        Scalar::exact(1), Scalar::exact(-1));
  CHECK(canc.kind == ThreePermClassification::Kind::SignedPermutation);
  CHECK(canc.sign == 1);
  CHECK(canc.tau == Perm::identity(4));

  CHECK_THROWS_AS(three_perm_classify(Perm::identity(4), parse_cycles("(12)"),
                                      parse_cycles("(34)"), Scalar::exact(1),
                                      Scalar::exact(1), Scalar::exact(0)),
                  std::invalid_argument);
}

TEST_CASE("three-permutation scan stays resolved") {
  const auto report = three_perm_scan(3);
  CHECK(report.triples_total == 2024);
  CHECK(report.classes_scanned > 0);
  CHECK(report.unresolved_count == 0);
  CHECK(report.direct_sum_count > 0);
  CHECK(report.signed_perm_count > 0);
  CHECK(report.exact_solutions > 0);
}

TEST_CASE("adding a scaled permutation to an H-orthogonal span") {
  const std::vector<Perm> empty_set;
  const auto r1 = add_perm_preserves_opm(empty_set, {}, Scalar::exact(1),
                                         parse_cycles("(12)"));
  CHECK(r1.orthogonal);
  CHECK(r1.permutative);
  CHECK(r1.matrix == to_matrix(parse_cycles("(12)")));

  // c = 0 returns the span element unchanged.
  const std::vector<Perm> quad = {parse_cycles("(34)"), parse_cycles("(12)"),
                                  parse_cycles("(13)(24)")};
  const std::vector<Scalar> coeffs = {Scalar::exact(2, 5), Scalar::exact(-2, 5),
                                      Scalar::exact(4, 5)};
  const auto r2 = add_perm_preserves_opm(quad, coeffs, Scalar::exact(0),
                                         parse_cycles("(14)(23)"));
  CHECK_FALSE(r2.orthogonal);  // three terms of the conic member alone
  Mat three_terms = Mat::zero(4);
  for (std::size_t i = 0; i < quad.size(); ++i) {
    three_terms = three_terms + to_matrix(quad[i]).scaled(coeffs[i]);
  }
  CHECK(r2.matrix == three_terms);  // c = 0 leaves the span element unchanged

  // Completing the fourth coefficient lands on the conic member.
  const auto r3 = add_perm_preserves_opm(quad, coeffs, Scalar::exact(1, 5),
                                         parse_cycles("(14)(23)"));
  CHECK(r3.orthogonal);
  CHECK(r3.permutative);

  CHECK_THROWS_AS(add_perm_preserves_opm({Perm::identity(4), parse_cycles("(12)")},
                                         {Scalar::exact(1), Scalar::exact(1)},
                                         Scalar::exact(1), parse_cycles("(34)")),
                  std::invalid_argument);
}

TEST_CASE("ray solutions for a shared-cell triple") {
  const auto sols = three_perm_solutions(Perm::identity(4), parse_cycles("(234)"),
                                         parse_cycles("(243)"), 3);
  CHECK_FALSE(sols.empty());
  bool found = false;
  for (const auto& s : sols) {
    REQUIRE(s[0].is_exact());
    if (s[0].rat() == Rat(-1, 3) && s[1].rat() == Rat(2, 3) && s[2].rat() == Rat(2, 3)) {
      found = true;
    }
    // Every returned triple really is orthogonal.
    const Mat m = to_matrix(Perm::identity(4)).scaled(s[0]) +
                  to_matrix(parse_cycles("(234)")).scaled(s[1]) +
                  to_matrix(parse_cycles("(243)")).scaled(s[2]);
    CHECK(m.is_orthogonal());
  }
  CHECK(found);

  // H-orthogonal triples admit no all-nonzero solutions.
  CHECK(three_perm_solutions(parse_cycles("(34)"), parse_cycles("(12)"),
                             parse_cycles("(13)(24)"), 4)
            .empty());
}
