#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace opm {

// A permutation of {1,...,n} for n <= 4, stored 0-based. sigma maps position
// i to operator()(i); the associated matrix has a 1 at (i, sigma(i)).
class Perm {
 public:
  static constexpr int kMaxOrder = 4;

  Perm() : Perm(4) {}
  explicit Perm(int n);  // identity
  static Perm identity(int n) { return Perm(n); }

  // image_one_based[i] = sigma(i+1); must be a bijection on {1..n}.
  static Perm from_image(const std::vector<int>& image_one_based);

  int order() const { return n_; }
  int operator()(int i) const { return img_[i]; }  // 0-based
  std::vector<int> image_one_based() const;

  Perm inverse() const;
  bool is_identity() const;
  int sign() const;  // +1 even, -1 odd

  // True when sigma(i) != tau(i) for every i; for the associated matrices this
  // is exactly a vanishing Hadamard product.
  bool h_orthogonal_to(const Perm& other) const;

  // 1-based index of the 1 in row i (0-based i), i.e. sigma(i+1).
  int one_based(int i) const { return img_[i] + 1; }

  bool fixes_first() const { return img_[0] == 0; }

  friend bool operator==(const Perm& a, const Perm& b) {
    return a.n_ == b.n_ && a.img_ == b.img_;
  }
  friend std::strong_ordering operator<=>(const Perm& a, const Perm& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    for (int i = 0; i < a.n_; ++i) {
      if (a.img_[i] != b.img_[i]) return a.img_[i] <=> b.img_[i];
    }
    return std::strong_ordering::equal;
  }

 private:
  int n_;
  std::array<std::uint8_t, kMaxOrder> img_;
};

// Applies p first, then q, so that the matrix identity
// to_matrix(compose(p, q)) = to_matrix(p) * to_matrix(q) holds.
Perm compose(const Perm& p, const Perm& q);

// Parses a product of disjoint cycles over {1..n} written with single digits,
// e.g. "(12)(34)", "(234)"; "id" and "()" denote the identity. Whitespace is
// ignored. Cycles apply left to right. Throws std::invalid_argument on
// malformed tokens or repeated elements.
Perm parse_cycles(const std::string& text, int n = 4);

// Canonical cycle form: "id" for the identity, otherwise disjoint cycles,
// each starting at its smallest element, ordered by smallest element.
std::string format_cycles(const Perm& p);

// All permutations of {1..n} in lexicographic image order.
const std::vector<Perm>& all_perms(int n);

// One of the six pairwise H-orthogonal classes partitioning S4. The four
// member matrices tile every cell once, so their sum is the all-ones matrix.
struct PermClass {
  std::array<Perm, 4> members;  // sorted

  bool contains(const Perm& p) const;
};

// The fixed partition of S4 into six pairwise H-orthogonal classes.
const std::array<PermClass, 6>& s4_partition();

// Index in s4_partition() of the class containing p (order-4 permutations).
int s4_class_index(const Perm& p);

}  // namespace opm
