#include "opm/mat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace opm {

Mat::Mat(int n, bool exact_backend, double tol)
    : n_(n), exact_(exact_backend), tol_(exact_backend ? 0.0 : tol) {
  if (n < 1 || n > 4) throw std::invalid_argument("matrix order must be 1..4");
  if (!exact_backend && tol < 0) throw std::invalid_argument("negative tolerance");
  const Scalar z = exact_ ? Scalar::exact(0) : Scalar::approx(0.0);
  e_.fill(z);
}

Mat Mat::zero(int n, bool exact_backend, double tol) { return Mat(n, exact_backend, tol); }

Mat Mat::identity(int n, bool exact_backend, double tol) {
  Mat m(n, exact_backend, tol);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, exact_backend ? Scalar::exact(1) : Scalar::approx(1.0));
  }
  return m;
}

Mat Mat::all_ones(int n, bool exact_backend, double tol) {
  Mat m(n, exact_backend, tol);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m.set(i, j, exact_backend ? Scalar::exact(1) : Scalar::approx(1.0));
    }
  }
  return m;
}

Mat Mat::from_entries(int n, const std::vector<Scalar>& entries, double tol) {
  if (static_cast<int>(entries.size()) != n * n) {
    throw std::invalid_argument("entry count does not match order");
  }
  const bool exact = entries.front().is_exact();
  Mat m(n, exact, tol);
  for (int k = 0; k < n * n; ++k) {
    if (entries[k].is_exact() != exact) throw backend_mismatch();
    m.e_[k] = entries[k];
  }
  return m;
}

Mat Mat::with_tol(double tol) const {
  Mat m = *this;
  m.tol_ = exact_ ? 0.0 : tol;
  return m;
}

void Mat::set(int i, int j, Scalar v) {
  if (v.is_exact() != exact_) throw backend_mismatch();
  e_[i * n_ + j] = std::move(v);
}

void Mat::check_compatible(const Mat& o) const {
  if (n_ != o.n_) throw std::invalid_argument("order mismatch");
  if (exact_ != o.exact_) throw backend_mismatch();
}

Mat Mat::operator*(const Mat& o) const {
  check_compatible(o);
  Mat r(n_, exact_, std::max(tol_, o.tol_));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      Scalar acc = at(i, 0) * o.at(0, j);
      for (int k = 1; k < n_; ++k) acc = acc + at(i, k) * o.at(k, j);
      r.e_[i * n_ + j] = acc;
    }
  }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  check_compatible(o);
  Mat r(n_, exact_, std::max(tol_, o.tol_));
  for (int k = 0; k < n_ * n_; ++k) r.e_[k] = e_[k] + o.e_[k];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  check_compatible(o);
  Mat r(n_, exact_, std::max(tol_, o.tol_));
  for (int k = 0; k < n_ * n_; ++k) r.e_[k] = e_[k] - o.e_[k];
  return r;
}

Mat Mat::operator-() const {
  Mat r = *this;
  for (int k = 0; k < n_ * n_; ++k) r.e_[k] = -e_[k];
  return r;
}

Mat Mat::scaled(const Scalar& c) const {
  if (c.is_exact() != exact_) throw backend_mismatch();
  Mat r = *this;
  for (int k = 0; k < n_ * n_; ++k) r.e_[k] = e_[k] * c;
  return r;
}

Mat Mat::transposed() const {
  Mat r(n_, exact_, tol_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) r.e_[j * n_ + i] = at(i, j);
  }
  return r;
}

Scalar Mat::det() const {
  if (n_ == 1) return at(0, 0);
  if (n_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
  // Cofactor expansion along the first row.
  Scalar acc = exact_ ? Scalar::exact(0) : Scalar::approx(0.0);
  for (int j = 0; j < n_; ++j) {
    Mat minor(n_ - 1, exact_, tol_);
    for (int r = 1; r < n_; ++r) {
      int cc = 0;
      for (int c = 0; c < n_; ++c) {
        if (c == j) continue;
        minor.set(r - 1, cc++, at(r, c));
      }
    }
    Scalar term = at(0, j) * minor.det();
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

bool Mat::equals(const Mat& o) const {
  if (n_ != o.n_ || exact_ != o.exact_) return false;
  const double tol = std::max(tol_, o.tol_);
  for (int k = 0; k < n_ * n_; ++k) {
    if (!e_[k].close_to(o.e_[k], tol)) return false;
  }
  return true;
}

bool Mat::is_orthogonal() const {
  const Mat g = transposed() * (*this);
  const Mat id = Mat::identity(n_, exact_, tol_);
  return g.equals(id);
}

double Mat::orthogonality_residual() const {
  const Mat g = transposed() * (*this);
  double worst = 0.0;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const double want = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::fabs(g.at(i, j).as_double() - want));
    }
  }
  return worst;
}

bool Mat::is_permutative() const {
  std::vector<Scalar> first;
  for (int j = 0; j < n_; ++j) first.push_back(at(0, j));
  std::sort(first.begin(), first.end());
  for (int i = 1; i < n_; ++i) {
    std::vector<Scalar> row;
    for (int j = 0; j < n_; ++j) row.push_back(at(i, j));
    std::sort(row.begin(), row.end());
    for (int j = 0; j < n_; ++j) {
      if (!row[j].close_to(first[j], tol_)) return false;
    }
  }
  return true;
}

std::pair<Vec, Vec> Mat::row_col_sums() const {
  Vec rows(n_, exact_ ? Scalar::exact(0) : Scalar::approx(0.0));
  Vec cols = rows;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      rows[i] = rows[i] + at(i, j);
      cols[j] = cols[j] + at(i, j);
    }
  }
  return {rows, cols};
}

Mat Mat::conjugate_hadamard() const {
  if (n_ != 4) throw std::invalid_argument("conjugation defined for order 4");
  const Mat h = exact_ ? hadamard4() : hadamard4().to_approx(tol_);
  return (h * (*this) * h).with_tol(tol_);
}

Pattern Mat::pattern_of() const {
  Pattern p(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) p.set(i, j, !at(i, j).is_zero(tol_));
  }
  return p;
}

Mat Mat::subblock(int r0, int c0, int size) const {
  Mat b(size, exact_, tol_);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) b.set(i, j, at(r0 + i, c0 + j));
  }
  return b;
}

Mat Mat::to_approx(double tol) const {
  Mat m(n_, false, tol);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) m.set(i, j, Scalar::approx(at(i, j).as_double()));
  }
  return m;
}

Mat to_matrix(const Perm& p, bool exact_backend, double tol) {
  Mat m(p.order(), exact_backend, tol);
  for (int i = 0; i < p.order(); ++i) {
    m.set(i, p(i), exact_backend ? Scalar::exact(1) : Scalar::approx(1.0));
  }
  return m;
}

const Mat& hadamard4() {
  static const Mat h = [] {
    Mat m(4, true);
    const int signs[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) m.set(i, j, Scalar::exact(signs[i][j], 2));
    }
    return m;
  }();
  return h;
}

Scalar scalar_for(const Mat& like, long long num, long long den) {
  return like.is_exact() ? Scalar::exact(num, den)
                         : Scalar::approx(static_cast<double>(num) / static_cast<double>(den));
}

namespace {

// Support mask of a, bit (i*4+j) set when the entry is nonzero beyond tol.
std::uint16_t support_mask(const Mat& a) {
  std::uint16_t bits = 0;
  const int n = a.order();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!a.at(i, j).is_zero(a.tol())) bits |= static_cast<std::uint16_t>(1u << (i * n + j));
    }
  }
  return bits;
}

// Zero requirement masks for the two coarsest splits of order 4.
std::uint16_t split_mask(int first_block) {
  std::uint16_t bits = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool in_first_i = i < first_block;
      const bool in_first_j = j < first_block;
      if (in_first_i != in_first_j) bits |= static_cast<std::uint16_t>(1u << (i * 4 + j));
    }
  }
  return bits;
}

}  // namespace

std::optional<DirectSumForm> find_direct_sum_form(const Mat& a) {
  if (a.order() != 4) throw std::invalid_argument("direct-sum search defined for order 4");
  const std::uint16_t amask = support_mask(a);
  const auto& perms = all_perms(4);

  for (int first_block : {1, 2}) {
    const std::uint16_t off = split_mask(first_block);
    for (const Perm& x : perms) {
      for (const Perm& y : perms) {
        // (P_x A P_y)(i, j) = A(x(i), y^{-1}(j)); check the off-block cells.
        const Perm yinv = y.inverse();
        std::uint16_t bmask = 0;
        for (int i = 0; i < 4; ++i) {
          for (int j = 0; j < 4; ++j) {
            if ((amask >> (x(i) * 4 + yinv(j))) & 1u) {
              bmask |= static_cast<std::uint16_t>(1u << (i * 4 + j));
            }
          }
        }
        if (bmask & off) continue;
        DirectSumForm form;
        form.left = x;
        form.right = y;
        form.sizes = {first_block, 4 - first_block};
        form.permuted = to_matrix(x, a.is_exact(), a.tol()) * a *
                        to_matrix(y, a.is_exact(), a.tol());
        return form;
      }
    }
  }
  return std::nullopt;
}

}  // namespace opm
