#include "opm/classify.hpp"

#include <algorithm>
#include <stdexcept>

namespace opm {

const char* tag_name(Classification::Tag tag) {
  switch (tag) {
    case Classification::Tag::NotOrthogonal: return "not-orthogonal";
    case Classification::Tag::NotInSpan: return "not-in-span";
    case Classification::Tag::Permutative: return "permutative";
    case Classification::Tag::PermEquivalentDirectSum: return "perm-equivalent-direct-sum";
    case Classification::Tag::HadamardBlock: return "hadamard-block";
    case Classification::Tag::Irreducible: return "irreducible";
  }
  return "unknown";
}

namespace {

std::optional<BlockWitness> validate_block(const Mat& block) {
  BlockWitness w;
  w.size = block.order();
  w.block = block;
  if (block.order() == 1) {
    const Scalar& v = block.at(0, 0);
    if (v.close_to(scalar_for(block, 1), block.tol())) {
      w.sign = 1;
    } else if (v.close_to(scalar_for(block, -1), block.tol())) {
      w.sign = -1;
    } else {
      return std::nullopt;
    }
    return w;
  }
  if (block.order() == 2) {
    // Orthogonal permutative 2x2 blocks are +-I or +-swap.
    for (int sign : {1, -1}) {
      for (const Perm& p : all_perms(2)) {
        Mat cand = to_matrix(p, block.is_exact(), block.tol());
        if (sign < 0) cand = -cand;
        if (block.equals(cand)) {
          w.sign = sign;
          w.perm2 = p;
          return w;
        }
      }
    }
    return std::nullopt;
  }
  if (block.order() == 3) {
    const auto w3 = opm3_witness(block);
    if (!w3) return std::nullopt;
    w.opm3 = w3;
    return w;
  }
  return std::nullopt;
}

}  // namespace

std::optional<DirectSumCatalog> direct_sum_catalog(const Mat& a) {
  const auto form = find_direct_sum_form(a);
  if (!form) return std::nullopt;
  DirectSumCatalog catalog;
  catalog.left = form->left;
  catalog.right = form->right;
  catalog.sizes = form->sizes;
  int offset = 0;
  for (int size : form->sizes) {
    const auto w = validate_block(form->permuted.subblock(offset, offset, size));
    if (!w) return std::nullopt;
    catalog.blocks.push_back(*w);
    offset += size;
  }
  return catalog;
}

std::optional<HadamardBlockWitness> hadamard_block_search(const Mat& a) {
  if (a.order() != 4) throw std::invalid_argument("search defined for order 4");

  // H P H = 1 (+) Pbar for every permutation matrix P; precompute the 3x3
  // tails once, so H (X A Y) H = corner (+) (Xbar Abar Ybar).
  static const std::vector<Mat> tails = [] {
    std::vector<Mat> t;
    for (const Perm& p : all_perms(4)) {
      t.push_back(to_matrix(p).conjugate_hadamard().subblock(1, 1, 3));
    }
    return t;
  }();

  const Mat hah = a.conjugate_hadamard();
  for (int k = 1; k < 4; ++k) {
    if (!hah.at(0, k).is_zero(a.tol()) || !hah.at(k, 0).is_zero(a.tol())) {
      throw std::invalid_argument("matrix is not in the permutation span");
    }
  }
  int corner = 0;
  if (hah.at(0, 0).close_to(scalar_for(a, 1), a.tol())) {
    corner = 1;
  } else if (hah.at(0, 0).close_to(scalar_for(a, -1), a.tol())) {
    corner = -1;
  } else {
    throw std::invalid_argument("row sums are not +-1");
  }
  const Mat abar = hah.subblock(1, 1, 3);

  // Binary64 prefilter over the 576 pairs. Exact candidates have sorted-row
  // gaps exactly zero, so a 1e-6 screen never rejects a true witness; every
  // screen hit is confirmed exactly below.
  static const std::vector<std::array<double, 9>> dtails = [] {
    std::vector<std::array<double, 9>> t;
    for (const Mat& m : tails) {
      std::array<double, 9> d{};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) d[i * 3 + j] = m.at(i, j).as_double();
      }
      t.push_back(d);
    }
    return t;
  }();
  std::array<double, 9> abar_d{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) abar_d[i * 3 + j] = abar.at(i, j).as_double();
  }
  auto mul3 = [](const std::array<double, 9>& l, const std::array<double, 9>& r) {
    std::array<double, 9> out{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        out[i * 3 + j] = l[i * 3] * r[j] + l[i * 3 + 1] * r[3 + j] + l[i * 3 + 2] * r[6 + j];
      }
    }
    return out;
  };
  const double screen = a.is_exact() ? 1e-6 : std::max(a.tol(), 1e-6);
  auto roughly_permutative = [&](const std::array<double, 9>& b) {
    std::array<double, 3> first = {b[0], b[1], b[2]};
    std::sort(first.begin(), first.end());
    for (int i = 1; i < 3; ++i) {
      std::array<double, 3> row = {b[i * 3], b[i * 3 + 1], b[i * 3 + 2]};
      std::sort(row.begin(), row.end());
      for (int j = 0; j < 3; ++j) {
        if (std::fabs(row[j] - first[j]) > screen) return false;
      }
    }
    return true;
  };

  const auto& perms = all_perms(4);
  for (std::size_t x = 0; x < perms.size(); ++x) {
    const auto xa_d = mul3(dtails[x], abar_d);
    for (std::size_t y = 0; y < perms.size(); ++y) {
      if (!roughly_permutative(mul3(xa_d, dtails[y]))) continue;
      const Mat b = (a.is_exact() ? tails[x] : tails[x].to_approx(a.tol())) * abar *
                    (a.is_exact() ? tails[y] : tails[y].to_approx(a.tol()));
      if (!b.is_permutative()) continue;
      const auto w3 = opm3_witness(b);
      if (!w3) continue;
      HadamardBlockWitness w;
      w.left = perms[x];
      w.right = perms[y];
      w.corner = corner;
      w.block = b;
      w.opm3 = *w3;
      return w;
    }
  }
  return std::nullopt;
}

Classification classify_orthogonal(const Mat& a) {
  Classification out;
  if (a.order() != 4) throw std::invalid_argument("classification defined for order 4");
  if (!a.is_orthogonal()) {
    out.tag = Classification::Tag::NotOrthogonal;
    return out;
  }
  const auto comb = in_perm_span(a);
  if (!comb) {
    out.tag = Classification::Tag::NotInSpan;
    return out;
  }
  // Work on the exact snapped matrix so every witness below is exact.
  const Mat m = a.is_exact() ? a : comb->evaluate();

  if (m.is_permutative()) {
    out.tag = Classification::Tag::Permutative;
    out.family = opm_family_witness(m);
    if (!out.family) {
      throw std::logic_error("orthogonal permutative matrix without family witness");
    }
    return out;
  }
  if (auto catalog = direct_sum_catalog(m)) {
    out.tag = Classification::Tag::PermEquivalentDirectSum;
    out.direct_sum = std::move(catalog);
    return out;
  }
  if (auto hb = hadamard_block_search(m)) {
    out.tag = Classification::Tag::HadamardBlock;
    out.hadamard = std::move(hb);
    return out;
  }
  out.tag = Classification::Tag::Irreducible;
  return out;
}

std::set<Classification::Tag> permitted_tags(const std::set<int>& membership) {
  using Tag = Classification::Tag;
  const std::set<Tag> everything = {Tag::Permutative, Tag::PermEquivalentDirectSum,
                                    Tag::HadamardBlock, Tag::Irreducible};
  const std::set<Tag> perm_only = {Tag::Permutative};
  const std::set<Tag> reduced = {Tag::Permutative, Tag::PermEquivalentDirectSum,
                                 Tag::HadamardBlock};

  std::vector<std::pair<std::set<int>, std::set<Tag>>> covered;
  for (int i = 1; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) covered.push_back({{i, j}, perm_only});
  }
  for (int i = 2; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) {
      if ((i == 2 && j == 5) || (i == 3 && j == 4)) continue;
      covered.push_back({{1, i, j}, perm_only});
    }
  }
  // The {2,3,4} sum carries the one-parameter family
  // x P(12)(34) + y P(124) + z P(123), x + y + z = +-1, whose generic members
  // are orthogonal but reduce to a 1+3 direct sum instead of being
  // permutative; that sum (and the four-block sum containing it) only gets
  // the weaker reduction guarantee.
  for (int i = 2; i <= 5; ++i) {
    for (int j = i + 1; j <= 5; ++j) {
      for (int k = j + 1; k <= 5; ++k) {
        const bool exceptional = (i == 2 && j == 3 && k == 4);
        covered.push_back({{i, j, k}, exceptional ? reduced : perm_only});
      }
    }
  }
  covered.push_back({{2, 3, 4, 5}, reduced});
  covered.push_back({{1, 3, 4}, reduced});

  std::set<Tag> permitted = everything;
  bool any = false;
  for (const auto& [support, tags] : covered) {
    const bool contains = std::includes(support.begin(), support.end(),
                                        membership.begin(), membership.end());
    if (!contains) continue;
    any = true;
    std::set<Tag> inter;
    for (Tag t : permitted) {
      if (tags.count(t)) inter.insert(t);
    }
    permitted = std::move(inter);
  }
  return any ? permitted : everything;
}

}  // namespace opm
