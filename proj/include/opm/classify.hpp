#pragma once

#include "opm/decompose.hpp"
#include "opm/families.hpp"
#include "opm/mat.hpp"

#include <optional>
#include <set>
#include <vector>

namespace opm {

// Validated diagonal block of a permuted direct sum.
struct BlockWitness {
  int size = 0;  // 1, 2, or 3
  Mat block;
  int sign = 0;                      // +-1 for 1x1 blocks and signed 2x2 blocks
  std::optional<Perm> perm2;         // order-2 permutation carried by a 2x2 block
  std::optional<Opm3Witness> opm3;   // order-3 family witness
};

struct DirectSumCatalog {
  Perm left, right;          // X, Y with X A Y block diagonal
  std::vector<int> sizes;
  std::vector<BlockWitness> blocks;
};

struct HadamardBlockWitness {
  Perm left, right;  // X, Y with H (X A Y) H = corner (+) block
  int corner = 0;    // +-1
  Mat block;         // 3x3 orthogonal permutative
  Opm3Witness opm3;
};

struct Classification {
  enum class Tag {
    NotOrthogonal,
    NotInSpan,
    Permutative,
    PermEquivalentDirectSum,
    HadamardBlock,
    Irreducible,
  };

  Tag tag = Tag::Irreducible;
  std::optional<FamilyWitness> family;        // Permutative
  std::optional<DirectSumCatalog> direct_sum; // PermEquivalentDirectSum
  std::optional<HadamardBlockWitness> hadamard;  // HadamardBlock
};

const char* tag_name(Classification::Tag tag);

// Full pipeline: orthogonality, span membership, permutativity with family
// witness, permuted direct-sum search with block validation, Hadamard-
// conjugated block search, otherwise irreducible. Tags are reported in this
// fixed priority order. Approx inputs are snapped to exact rationals through
// the span solve, so every reported witness is exact.
Classification classify_orthogonal(const Mat& a);

// Permuted direct-sum decomposition with validated blocks, or nullopt.
// Requires a orthogonal and in the span.
std::optional<DirectSumCatalog> direct_sum_catalog(const Mat& a);

// Exhaustive search for X, Y such that H (X A Y) H is corner (+) B with B an
// order-3 orthogonal permutative matrix. Requires a orthogonal in the span.
std::optional<HadamardBlockWitness> hadamard_block_search(const Mat& a);

// The set of classification tags the structure results permit for an
// orthogonal span member whose minimal block support is `membership`.
// Configurations no result covers permit every tag.
std::set<Classification::Tag> permitted_tags(const std::set<int>& membership);

}  // namespace opm
