#pragma once

#include "opm/pattern.hpp"
#include "opm/perm.hpp"
#include "opm/scalar.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace opm {

// Default predicate tolerance on the approx backend. Family constructors
// introduce at most one square root, so binary64 error stays far below this.
inline constexpr double kDefaultTol = 1e-10;

using Vec = std::vector<Scalar>;

// Dense square matrix of order 1..4 over one Scalar backend. tol is the
// comparison tolerance for predicates; it is 0 exactly when the backend is
// exact.
class Mat {
 public:
  explicit Mat(int n = 4, bool exact_backend = true, double tol = kDefaultTol);

  static Mat zero(int n, bool exact_backend = true, double tol = kDefaultTol);
  static Mat identity(int n, bool exact_backend = true, double tol = kDefaultTol);
  static Mat all_ones(int n, bool exact_backend = true, double tol = kDefaultTol);

  // Entries row-major; all entries must share one backend.
  static Mat from_entries(int n, const std::vector<Scalar>& entries,
                          double tol = kDefaultTol);

  int order() const { return n_; }
  bool is_exact() const { return exact_; }
  double tol() const { return tol_; }
  Mat with_tol(double tol) const;

  const Scalar& at(int i, int j) const { return e_[i * n_ + j]; }
  void set(int i, int j, Scalar v);

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat scaled(const Scalar& c) const;
  Mat transposed() const;

  Scalar det() const;

  bool equals(const Mat& o) const;  // entrywise within max tol
  friend bool operator==(const Mat& a, const Mat& b) { return a.equals(b); }

  // True when every entry of A^T A matches I within tol (exact: equality).
  bool is_orthogonal() const;
  // Max |(A^T A - I)_{ij}| as a double (0 for exact orthogonal matrices).
  double orthogonality_residual() const;

  // Every row's entry multiset equals row 1's. Exact backend compares sorted
  // rows exactly; approx compares sorted rows componentwise within tol.
  bool is_permutative() const;

  std::pair<Vec, Vec> row_col_sums() const;

  // H A H with H the fixed symmetric orthogonal Hadamard-type matrix of
  // order 4 (an involution, so this conjugation is self-inverse).
  Mat conjugate_hadamard() const;

  Pattern pattern_of() const;  // bit set iff |entry| > tol (exact: != 0)

  Mat subblock(int r0, int c0, int size) const;

  // Converts entries to binary64 (for reporting; never feeds exact logic).
  Mat to_approx(double tol = kDefaultTol) const;

 private:
  int n_;
  bool exact_;
  double tol_;
  std::array<Scalar, 16> e_;

  void check_compatible(const Mat& o) const;
};

Mat to_matrix(const Perm& p, bool exact_backend = true, double tol = kDefaultTol);

// The fixed order-4 Hadamard-type matrix with entries +-1/2.
const Mat& hadamard4();

Scalar scalar_for(const Mat& like, long long num, long long den = 1);

// A decomposition X A Y = diag of blocks, found by exhaustive lexicographic
// search over permutation pairs. Split (1,3) is preferred over (2,2); finer
// structure is recovered by recursing on the blocks.
struct DirectSumForm {
  Perm left;                // X
  Perm right;               // Y
  std::vector<int> sizes;   // block sizes in order, e.g. {1, 3}
  Mat permuted;             // X A Y
};

std::optional<DirectSumForm> find_direct_sum_form(const Mat& a);

}  // namespace opm
