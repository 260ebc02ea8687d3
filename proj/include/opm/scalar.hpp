#pragma once

#include "opm/rational.hpp"

#include <stdexcept>
#include <variant>

namespace opm {

// Raised whenever exact and approx values meet in one arithmetic expression.
// Mixing backends is a contract violation, never a silent coercion.
struct backend_mismatch : std::logic_error {
  backend_mismatch() : std::logic_error("scalar backend mismatch") {}
};

// A field element carried either as an exact rational or as a binary64 value.
class Scalar {
 public:
  Scalar() : v_(Rat(0)) {}

  static Scalar exact(Rat r) { return Scalar(std::move(r)); }
  static Scalar exact(long long num, long long den = 1) {
    return Scalar(Rat(Int(num), Int(den)));
  }
  static Scalar approx(double d) { return Scalar(d); }

  bool is_exact() const { return std::holds_alternative<Rat>(v_); }

  const Rat& rat() const {
    if (!is_exact()) throw backend_mismatch();
    return std::get<Rat>(v_);
  }
  double dbl() const {
    if (is_exact()) throw backend_mismatch();
    return std::get<double>(v_);
  }
  double as_double() const {
    return is_exact() ? to_double(std::get<Rat>(v_)) : std::get<double>(v_);
  }

  bool same_backend(const Scalar& o) const { return is_exact() == o.is_exact(); }

  Scalar operator+(const Scalar& o) const {
    check(o);
    return is_exact() ? Scalar(rat() + o.rat()) : Scalar(dbl() + o.dbl());
  }
  Scalar operator-(const Scalar& o) const {
    check(o);
    return is_exact() ? Scalar(rat() - o.rat()) : Scalar(dbl() - o.dbl());
  }
  Scalar operator*(const Scalar& o) const {
    check(o);
    return is_exact() ? Scalar(rat() * o.rat()) : Scalar(dbl() * o.dbl());
  }
  Scalar operator/(const Scalar& o) const {
    check(o);
    if (is_exact()) {
      if (o.rat() == 0) throw std::domain_error("division by zero");
      return Scalar(rat() / o.rat());
    }
    return Scalar(dbl() / o.dbl());
  }
  Scalar operator-() const {
    return is_exact() ? Scalar(Rat(-rat())) : Scalar(-dbl());
  }

  Scalar abs() const {
    if (is_exact()) return Scalar(rat() < 0 ? Rat(-rat()) : rat());
    return Scalar(std::abs(dbl()));
  }

  // Same-backend value equality (exact: identical rationals; approx: identical
  // doubles). Tolerance-aware comparisons live on Mat.
  bool operator==(const Scalar& o) const {
    check(o);
    return is_exact() ? rat() == o.rat() : dbl() == o.dbl();
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  bool operator<(const Scalar& o) const {
    check(o);
    return is_exact() ? rat() < o.rat() : dbl() < o.dbl();
  }

  bool is_zero(double tol = 0.0) const {
    if (is_exact()) return rat() == 0;
    return std::abs(dbl()) <= tol;
  }

  // |this - o| <= tol, with tol ignored on the exact backend.
  bool close_to(const Scalar& o, double tol) const {
    check(o);
    if (is_exact()) return rat() == o.rat();
    return std::abs(dbl() - o.dbl()) <= tol;
  }

 private:
  explicit Scalar(Rat r) : v_(std::move(r)) {}
  explicit Scalar(double d) : v_(d) {}
  void check(const Scalar& o) const {
    if (!same_backend(o)) throw backend_mismatch();
  }

  std::variant<Rat, double> v_;
};

}  // namespace opm
