#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace opm {

// A square (0,1) pattern of order <= 4, bit-packed row-major.
class Pattern {
 public:
  explicit Pattern(int n = 4);
  static Pattern from_bits(int n, std::uint16_t bits);

  // Rows of '0'/'1' characters joined by commas, e.g. "1100,1011,0011,1110".
  static Pattern parse_text(const std::string& text);
  std::string to_text() const;

  std::vector<std::string> rows_text() const;

  int order() const { return n_; }
  bool bit(int i, int j) const { return (bits_ >> (i * n_ + j)) & 1u; }
  void set(int i, int j, bool v);
  std::uint16_t bits() const { return bits_; }

  Pattern transposed() const;

  friend bool operator==(const Pattern& a, const Pattern& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  int n_;
  std::uint16_t bits_;
};

// Combinatorial orthogonality: no two distinct rows and no two distinct
// columns have inner product exactly 1.
bool is_quadrangular(const Pattern& m);

// Row condition, quantified over every subset S of rows in which each element
// has nonzero inner product with some other element of S: the submatrix of
// those rows must have at least |S| columns carrying at least two 1s.
bool is_row_strongly_quadrangular(const Pattern& m);
bool is_column_strongly_quadrangular(const Pattern& m);
bool is_strongly_quadrangular(const Pattern& m);

// Order <= 4 support criterion: the pattern carries some unitary matrix
// exactly when it is strongly quadrangular. Throws for order > 4.
bool supports_unitary_small(const Pattern& m);

}  // namespace opm
