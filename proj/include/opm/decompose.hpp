#pragma once

#include "opm/families.hpp"
#include "opm/mat.hpp"
#include "opm/perm.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace opm {

// A finite linear combination of order-4 permutation matrices. Zero
// coefficients are never stored; all coefficients share one backend.
class PermLinComb {
 public:
  PermLinComb() = default;

  void add(const Perm& p, const Scalar& coeff);
  const std::map<Perm, Scalar>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::optional<Scalar> coeff(const Perm& p) const;

  Mat evaluate(double tol = kDefaultTol) const;

 private:
  std::map<Perm, Scalar> terms_;
};

// The fixed 10-permutation basis of the span of all order-4 permutation
// matrices, in documented order:
//   (12), (23), (24), (34), (123), (124), (234), (12)(34), (13)(24), (14)(23)
const std::vector<Perm>& basis_B();

// Index 1..5 of the pairwise H-orthogonal basis block containing basis
// element k (position in basis_B order).
int basis_block_of(int basis_position);

// Exact coordinates of a in basis_B, or nullopt when a lies outside the
// span. Approx matrices are snapped entrywise to rationals (denominator up to
// 10^6), solved exactly, and the result verified against a within tol.
std::optional<PermLinComb> in_perm_span(const Mat& a);

// The minimal set of block indices k with L = direct sum of the blocks'
// spans such that a lies in the sum. Requires a in the span.
std::set<int> subspace_membership(const Mat& a);

// Four-permutation expression of an orthogonal permutative matrix: the
// combination of prefix^T * a over the witness family's H-orthogonal
// quadruple. Throws std::invalid_argument when a is not recognized.
PermLinComb opm_as_four_perms(const Mat& a);
PermLinComb opm_as_four_perms(const Mat& a, const FamilyWitness& witness);

// Groups the terms of c by the six-class partition; each part is permutative
// and the parts sum back to evaluate(c).
std::vector<std::pair<int, Mat>> split_six_permutative(const PermLinComb& c);

// ---- exhaustive scans ------------------------------------------------------

struct TwoPermPairReport {
  Perm p, q;
  int overlap;  // positions where both matrices carry a 1
  std::vector<std::pair<Rat, Rat>> solutions;
  bool nontrivial_solution = false;  // both coefficients nonzero
};

struct TwoPermScanReport {
  std::vector<TwoPermPairReport> pairs;
  int pair_count = 0;
  bool any_nontrivial = false;
};

// For each of the 276 unordered pairs of distinct permutations, derives the
// orthogonality conditions on (alpha, beta) exactly and lists every real
// solution. All solution sets are subsets of {(+-1,0),(0,+-1)}.
TwoPermScanReport two_perm_orthogonality_scan();

struct ThreePermClassification {
  enum class Kind { SignedPermutation, DirectSum, Unresolved };
  Kind kind = Kind::Unresolved;
  int sign = 0;                        // SignedPermutation: A = sign * P_tau
  Perm tau;                            // SignedPermutation witness
  std::optional<DirectSumForm> form;   // DirectSum witness (sizes {1,3})
  std::optional<Opm3Witness> block3;   // the order-3 block's family witness
};

// Classifies an orthogonal combination alpha P + beta Q + gamma R of three
// distinct permutations. Throws std::invalid_argument when the combination is
// not orthogonal. Kind::Unresolved never occurs for true inputs; it is kept
// so the scan can report a counterexample instead of asserting.
ThreePermClassification three_perm_classify(const Perm& p, const Perm& q, const Perm& r,
                                            const Scalar& alpha, const Scalar& beta,
                                            const Scalar& gamma);

struct ThreePermScanReport {
  int triples_total = 0;        // 2024
  int classes_scanned = 0;      // representatives up to two-sided equivalence
  int exact_solutions = 0;      // exact rational sample solutions classified
  int approx_solutions = 0;     // samples with irrational coefficients
  int signed_perm_count = 0;
  int direct_sum_count = 0;
  int unresolved_count = 0;     // must stay 0
};

// Orthogonal combinations alpha P + beta Q + gamma R with all three
// coefficients nonzero, found by reducing orthogonality to linear conditions
// on the pairwise products (alpha beta, alpha gamma, beta gamma), sampling
// null-space rays on an integer grid of the given range, and solving the
// forced normalization exactly. Rays with irrational normalization come back
// on the approx backend; solutions appear in +- pairs.
std::vector<std::array<Scalar, 3>> three_perm_solutions(const Perm& p, const Perm& q,
                                                        const Perm& r,
                                                        int direction_range);

// Scans all triples of distinct permutations up to simultaneous left/right
// permutation equivalence. For each class the orthogonality system is reduced
// to a linear system in the pairwise coefficient products; solution rays are
// sampled on a small rational grid and every sampled orthogonal combination
// is classified.
ThreePermScanReport three_perm_scan(int direction_range = 4);

struct AddPermResult {
  Mat matrix;
  bool orthogonal = false;
  bool permutative = false;  // only meaningful when orthogonal
};

// Checked constructor for span-of-H-orthogonal-set plus c * P: coeffs on the
// pairwise H-orthogonal set S, plus c times P. When the result is orthogonal
// it is asserted permutative; otherwise it is returned with the flag unset.
AddPermResult add_perm_preserves_opm(const std::vector<Perm>& s,
                                     const std::vector<Scalar>& coeffs,
                                     const Scalar& c, const Perm& p);

}  // namespace opm
