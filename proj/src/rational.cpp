#include "opm/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace opm {

std::optional<Rat> parse_rational(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) return std::nullopt;

  auto parse_int = [](const std::string& t) -> std::optional<Int> {
    if (t.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (t[0] == '-' || t[0] == '+') {
      neg = (t[0] == '-');
      i = 1;
    }
    if (i == t.size()) return std::nullopt;
    Int v = 0;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return std::nullopt;
      v = v * 10 + (t[i] - '0');
    }
    return neg ? Int(-v) : v;
  };

  const auto slash = s.find('/');
  if (slash == std::string::npos) {
    auto n = parse_int(s);
    if (!n) return std::nullopt;
    return Rat(*n);
  }
  if (s.find('/', slash + 1) != std::string::npos) return std::nullopt;
  auto num = parse_int(s.substr(0, slash));
  auto den = parse_int(s.substr(slash + 1));
  if (!num || !den || *den == 0) return std::nullopt;
  return Rat(*num, *den);
}

std::string format_rational(const Rat& value) {
  const Int num = numerator(value);
  const Int den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::optional<Rat> exact_sqrt(const Rat& value) {
  if (value < 0) return std::nullopt;
  const Int num = numerator(value);
  const Int den = denominator(value);
  const Int rn = sqrt(num);
  const Int rd = sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rat(rn, rd);
}

Rat snap_to_rational(double value, std::uint64_t max_den) {
  if (!std::isfinite(value)) return Rat(0);
  const bool neg = value < 0;
  double frac = std::fabs(value);

  // Continued-fraction convergents until the denominator bound.
  Int p0 = 0, q0 = 1;  // convergent n-2
  Int p1 = 1, q1 = 0;  // convergent n-1
  Int best_p = 0, best_q = 1;
  for (int step = 0; step < 64; ++step) {
    const double a_d = std::floor(frac);
    if (a_d > 9e18) break;
    const Int a = Int(static_cast<long long>(a_d));
    const Int p2 = a * p1 + p0;
    const Int q2 = a * q1 + q0;
    if (q2 > Int(max_den)) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    best_p = p2;
    best_q = q2;
    const double rem = frac - a_d;
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  Rat r(best_p, best_q);
  return neg ? Rat(-r) : r;
}

double to_double(const Rat& value) { return value.convert_to<double>(); }

}  // namespace opm
