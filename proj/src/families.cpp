#include "opm/families.hpp"

#include <cmath>
#include <stdexcept>

namespace opm {

namespace {

Scalar like(bool exact, long long num, long long den = 1) {
  return exact ? Scalar::exact(num, den)
               : Scalar::approx(static_cast<double>(num) / static_cast<double>(den));
}

bool close_int(const Scalar& s, long long v, double tol) {
  return s.close_to(like(s.is_exact(), v), tol);
}

}  // namespace

std::string family_name(FamilyId fid) {
  const char letter = fid.letter == FamilyLetter::X   ? 'X'
                      : fid.letter == FamilyLetter::Y ? 'Y'
                                                      : 'Z';
  return std::string(1, letter) + std::to_string(fid.j);
}

std::optional<FamilyId> family_from_name(const std::string& name) {
  if (name.size() != 2) return std::nullopt;
  FamilyLetter letter;
  switch (name[0]) {
    case 'X': letter = FamilyLetter::X; break;
    case 'Y': letter = FamilyLetter::Y; break;
    case 'Z': letter = FamilyLetter::Z; break;
    default: return std::nullopt;
  }
  if (name[1] < '1' || name[1] > '4') return std::nullopt;
  return FamilyId{letter, name[1] - '0'};
}

Scalar conic_residual(int j, const ParamPoint& p) {
  const Scalar sq = p.x * p.x + p.z * p.z;
  switch (j) {
    case 1: return sq - p.z;
    case 2: return sq + p.z;
    case 3: return sq - p.x;
    case 4: return sq + p.x;
    default: throw std::invalid_argument("family index must be 1..4");
  }
}

Mat mn_matrix(MnKind kind, const Scalar& x, const Scalar& z) {
  if (!x.same_backend(z)) throw backend_mismatch();
  const bool exact = x.is_exact();
  const Scalar one = like(exact, 1);
  const bool plus = (kind == MnKind::MPlus || kind == MnKind::NPlus);
  const Scalar unit = plus ? one : -one;

  Mat m(4, exact);
  auto put2 = [&m](int r0, int c0, const Scalar& d, const Scalar& o) {
    m.set(r0, c0, d);
    m.set(r0, c0 + 1, o);
    m.set(r0 + 1, c0, o);
    m.set(r0 + 1, c0 + 1, d);
  };

  if (kind == MnKind::MPlus || kind == MnKind::MMinus) {
    put2(0, 0, x, -x);              // A_x
    put2(0, 2, z, unit - z);        // B_z
    put2(2, 0, z, unit - z);        // B_z
    put2(2, 2, -x, x);              // -A_x
  } else {
    put2(0, 0, x, unit - x);        // B_x
    put2(0, 2, z, -z);              // A_z
    put2(2, 0, z, -z);              // A_z
    put2(2, 2, unit - x, x);        // F B_x
  }
  return m;
}

Mat family_element(FamilyId fid, const ParamPoint& p, const Perm& pbar) {
  if (fid.j < 1 || fid.j > 4) throw std::invalid_argument("family index must be 1..4");
  if (pbar.order() != 4 || !pbar.fixes_first()) {
    throw std::invalid_argument("prefix permutation must fix 1");
  }
  const Scalar res = conic_residual(fid.j, p);
  if (!res.is_zero(kDefaultTol)) {
    throw std::invalid_argument("parameter point violates the family conic (residual " +
                                (res.is_exact() ? format_rational(res.rat())
                                                : std::to_string(res.dbl())) +
                                ")");
  }
  static const MnKind kinds[4] = {MnKind::MPlus, MnKind::MMinus, MnKind::NPlus,
                                  MnKind::NMinus};
  Mat m = mn_matrix(kinds[fid.j - 1], p.x, p.z);
  const bool exact = p.x.is_exact();
  if (fid.letter != FamilyLetter::X) {
    const Perm c = parse_cycles(fid.letter == FamilyLetter::Y ? "(23)" : "(24)");
    const Mat cm = to_matrix(c, exact);
    m = cm * m * cm;
  }
  if (!pbar.is_identity()) m = to_matrix(pbar, exact) * m;
  return m;
}

Mat grover() {
  Mat g(4, true);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) g.set(i, j, Scalar::exact(i == j ? -1 : 1, 2));
  }
  return g;
}

ParamPoint trig_point(double theta, int r) {
  if (r != 1 && r != -1) throw std::invalid_argument("r must be +1 or -1");
  const double x = 0.5 * std::sin(theta);
  const double z = -(r / 2.0) * (1.0 - r * std::cos(theta));
  return {Scalar::approx(x), Scalar::approx(z)};
}

std::optional<TrigFamily> trig_family_from_name(const std::string& name) {
  if (name == "X1theta") return TrigFamily::X1Theta;
  if (name == "Y1theta") return TrigFamily::Y1Theta;
  if (name == "Z1theta") return TrigFamily::Z1Theta;
  return std::nullopt;
}

Mat trig_family(double theta, TrigFamily which) {
  const double s = 0.5 * std::sin(theta);
  const double cp = 0.5 * (1.0 + std::cos(theta));
  const double cm = 0.5 * (1.0 - std::cos(theta));
  switch (which) {
    case TrigFamily::X1Theta:
      return mn_matrix(MnKind::MPlus, Scalar::approx(s), Scalar::approx(cp));
    case TrigFamily::Y1Theta: {
      const Mat c = to_matrix(parse_cycles("(23)"), false);
      return c * mn_matrix(MnKind::MPlus, Scalar::approx(s), Scalar::approx(cp)) * c;
    }
    case TrigFamily::Z1Theta: {
      const Mat c = to_matrix(parse_cycles("(24)"), false);
      return c * mn_matrix(MnKind::MPlus, Scalar::approx(s), Scalar::approx(cm)) * c;
    }
  }
  throw std::logic_error("unreachable");
}

ParamPoint rational_point(const Rat& r, int s, int branch) {
  if (r == 0) throw std::invalid_argument("r must be nonzero");
  if ((s != 1 && s != -1) || (branch != 1 && branch != -1)) {
    throw std::invalid_argument("s and branch must be +1 or -1");
  }
  const Rat r2 = r * r;
  const Rat x = (r2 - 1) / (2 * (r2 + 1));
  const Rat z = Rat(s, 2) + Rat(branch) * r / (r2 + 1);
  return {Scalar::exact(x), Scalar::exact(z)};
}

Mat sporadic_opm(const Perm& tau, int sign, SporadicKind kind) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (tau.order() != 4) throw std::invalid_argument("order-4 permutation expected");
  Mat m = to_matrix(tau);
  if (kind == SporadicKind::HalfJ) {
    m = Mat::all_ones(4).scaled(Scalar::exact(1, 2)) - m;
  }
  if (sign < 0) m = -m;
  if (!m.is_orthogonal() || !m.is_permutative()) {
    throw std::logic_error("sporadic construction is always an OPM");
  }
  return m;
}

int det_class(FamilyId fid) {
  if (fid.j < 1 || fid.j > 4) throw std::invalid_argument("family index must be 1..4");
  return fid.j <= 2 ? 1 : -1;
}

Mat c_set_element(CSet which, const Scalar& c2, int branch) {
  if (branch != 1 && branch != -1) throw std::invalid_argument("branch must be +1 or -1");
  const int eps = which == CSet::C1 ? 1 : -1;

  // disc = (1 - eps 3 c2)(1 + eps c2); admissible iff disc >= 0.
  Scalar c = c2, a4 = c2, disc = c2;
  if (c2.is_exact()) {
    const Rat& cr = c2.rat();
    const Rat d = (1 - Rat(eps * 3) * cr) * (1 + Rat(eps) * cr);
    if (d < 0) throw std::invalid_argument("c2 outside the admissible interval");
    if (auto root = exact_sqrt(d)) {
      a4 = Scalar::exact(-cr / 2 + Rat(branch) * *root / 2);
    } else {
      // Irrational square root: fall back to the approx backend.
      const double cd = to_double(cr);
      const double dd = (1.0 - eps * 3.0 * cd) * (1.0 + eps * cd);
      c = Scalar::approx(cd);
      a4 = Scalar::approx(-cd / 2 + branch * std::sqrt(dd) / 2);
    }
  } else {
    const double cd = c2.dbl();
    const double dd = (1.0 - eps * 3.0 * cd) * (1.0 + eps * cd);
    if (dd < -kDefaultTol) throw std::invalid_argument("c2 outside the admissible interval");
    a4 = Scalar::approx(-cd / 2 + branch * std::sqrt(std::max(dd, 0.0)) / 2);
  }

  const bool exact = a4.is_exact();
  const Scalar half = like(exact, eps, 2);  // eps/2
  Mat m(4, exact);
  m.set(0, 0, -half);
  for (int j = 1; j < 4; ++j) m.set(0, j, half);
  for (int i = 1; i < 4; ++i) m.set(i, 0, half);
  // Lower block: circulant with first row (-a4-c2, eps/2+c2, a4).
  const Scalar row[3] = {-a4 - c, half + c, a4};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m.set(1 + i, 1 + j, row[(j - i + 3) % 3]);
  }
  if (!m.is_orthogonal()) throw std::logic_error("set member must be orthogonal");
  return m;
}

Scalar opm3_conic_residual(Opm3Family which, const Scalar& x, const Scalar& y) {
  const bool plus = (which == Opm3Family::X1Bar || which == Opm3Family::Z1Bar);
  const Scalar base = x * x + y * y + x * y;
  return plus ? base - x - y : base + x + y;
}

Mat opm3_element(Opm3Family which, const Scalar& x, const Scalar& y) {
  if (!x.same_backend(y)) throw backend_mismatch();
  const Scalar res = opm3_conic_residual(which, x, y);
  if (!res.is_zero(kDefaultTol)) {
    throw std::invalid_argument("parameter point violates the order-3 conic");
  }
  const bool exact = x.is_exact();
  const bool plus = (which == Opm3Family::X1Bar || which == Opm3Family::Z1Bar);
  const Scalar w = like(exact, plus ? 1 : -1) - x - y;
  Mat m(3, exact);
  const Scalar row[3] = {x, y, w};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m.set(i, j, row[(j - i + 3) % 3]);
  }
  if (which == Opm3Family::Z1Bar || which == Opm3Family::Wm1Bar) {
    m = to_matrix(parse_cycles("(23)", 3), exact) * m;
  }
  return m;
}

std::pair<Rat, Rat> opm3_rational_point(Opm3Family which, const Rat& t) {
  const Rat den = t * t - t + 1;  // always positive
  Rat x = (t * t - t) / den;
  Rat y = t / den;
  if (which == Opm3Family::Ym1Bar || which == Opm3Family::Wm1Bar) {
    x = -x;
    y = -y;
  }
  return {x, y};
}

std::pair<Rat, Rat> c_set_rational_sample(CSet which, const Rat& t) {
  const Rat den = t * t + 3;
  Rat c2 = -2 * (t + 1) / den;
  Rat d = (3 - 2 * t - t * t) / den;
  if (d < 0) d = -d;
  if (which == CSet::C2) c2 = -c2;
  return {c2, d};
}

// ---- membership -----------------------------------------------------------

std::optional<std::array<Scalar, 4>> quadruple_coefficients(
    const Mat& a, const std::array<Perm, 4>& quad) {
  if (a.order() != 4) return std::nullopt;
  std::array<Scalar, 4> coeffs = {a.at(0, quad[0](0)), a.at(0, quad[1](0)),
                                  a.at(0, quad[2](0)), a.at(0, quad[3](0))};
  // The quadruple tiles all 16 cells; verify every cell against its owner.
  for (int k = 0; k < 4; ++k) {
    for (int i = 0; i < 4; ++i) {
      if (!a.at(i, quad[k](i)).close_to(coeffs[k], a.tol())) return std::nullopt;
    }
  }
  return coeffs;
}

const std::array<Perm, 4>& letter_quadruple(FamilyLetter letter, bool prefixed) {
  static const auto tables = [] {
    auto quad = [](const char* a, const char* b, const char* c, const char* d) {
      return std::array<Perm, 4>{parse_cycles(a), parse_cycles(b), parse_cycles(c),
                                 parse_cycles(d)};
    };
    std::array<std::array<std::array<Perm, 4>, 2>, 3> t{};
    t[0][0] = quad("(34)", "(12)", "(13)(24)", "(14)(23)");
    t[1][0] = quad("(24)", "(12)(34)", "(13)", "(14)(23)");
    t[2][0] = quad("(23)", "(12)(34)", "(13)(24)", "(14)");
    for (int l = 0; l < 3; ++l) {
      const Perm pre = parse_cycles(l == 0 ? "(34)" : l == 1 ? "(24)" : "(23)");
      for (int k = 0; k < 4; ++k) t[l][1][k] = compose(pre, t[l][0][k]);
    }
    return t;
  }();
  return tables[static_cast<int>(letter)][prefixed ? 1 : 0];
}

const Perm& letter_prefix(FamilyLetter letter) {
  static const std::array<Perm, 3> prefixes = {
      parse_cycles("(34)"), parse_cycles("(24)"), parse_cycles("(23)")};
  return prefixes[static_cast<int>(letter)];
}

namespace {

// Positions of the two constrained pair sums in quadruple-coefficient order,
// and of the recovered (x, z) parameters.
struct LetterLayout {
  int pair_a0, pair_a1;  // must sum to 0 for j in {1,2}, to +-1 for {3,4}
  int pair_b0, pair_b1;  // the complementary pair
  int param_x, param_z;
};

LetterLayout layout_for(FamilyLetter letter) {
  switch (letter) {
    case FamilyLetter::X: return {0, 1, 2, 3, 0, 2};
    case FamilyLetter::Y: return {0, 2, 1, 3, 0, 1};
    case FamilyLetter::Z: return {0, 3, 1, 2, 0, 2};
  }
  throw std::logic_error("unreachable");
}

struct LetterMembership {
  int j;
  ParamPoint point;
};

std::optional<LetterMembership> classify_letter(const Mat& a, FamilyLetter letter,
                                                bool prefixed) {
  const auto coeffs = quadruple_coefficients(a, letter_quadruple(letter, prefixed));
  if (!coeffs) return std::nullopt;
  const LetterLayout lay = layout_for(letter);
  const Scalar sum_a = (*coeffs)[lay.pair_a0] + (*coeffs)[lay.pair_a1];
  const Scalar sum_b = (*coeffs)[lay.pair_b0] + (*coeffs)[lay.pair_b1];
  const double tol = a.tol();

  int j = 0;
  if (close_int(sum_a, 0, tol) && close_int(sum_b, 1, tol)) {
    j = 1;
  } else if (close_int(sum_a, 0, tol) && close_int(sum_b, -1, tol)) {
    j = 2;
  } else if (close_int(sum_b, 0, tol) && close_int(sum_a, 1, tol)) {
    j = 3;
  } else if (close_int(sum_b, 0, tol) && close_int(sum_a, -1, tol)) {
    j = 4;
  } else {
    return std::nullopt;
  }
  ParamPoint p{(*coeffs)[lay.param_x], (*coeffs)[lay.param_z]};
  if (!conic_residual(j, p).is_zero(8 * tol)) return std::nullopt;
  return LetterMembership{j, p};
}

}  // namespace

std::optional<int> family_index(const Mat& a, FamilyLetter letter, bool prefixed) {
  const auto m = classify_letter(a, letter, prefixed);
  if (!m) return std::nullopt;
  return m->j;
}

const std::array<Perm, 6>& one_plus_p3() {
  static const std::array<Perm, 6> prefixes = [] {
    std::array<Perm, 6> out;
    int k = 0;
    for (const Perm& p : all_perms(4)) {
      if (p.fixes_first()) out[k++] = p;
    }
    return out;
  }();
  return prefixes;
}

std::vector<FamilyWitness> opm_family_witnesses(const Mat& a) {
  std::vector<FamilyWitness> out;
  if (a.order() != 4) return out;
  for (const Perm& pbar : one_plus_p3()) {
    const Mat e = pbar.is_identity()
                      ? a
                      : to_matrix(pbar, a.is_exact(), a.tol()).transposed() * a;
    for (FamilyLetter letter : {FamilyLetter::X, FamilyLetter::Y, FamilyLetter::Z}) {
      if (const auto hit = classify_letter(e, letter, false)) {
        out.push_back(FamilyWitness{FamilyId{letter, hit->j}, hit->point, pbar});
      }
    }
  }
  return out;
}

std::optional<FamilyWitness> opm_family_witness(const Mat& a) {
  auto all = opm_family_witnesses(a);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::optional<Opm3Witness> opm3_witness(const Mat& b) {
  if (b.order() != 3) return std::nullopt;
  const double tol = b.tol();
  auto circulant = [&](const Mat& m) -> bool {
    for (int i = 1; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (!m.at(i, j).close_to(m.at(0, (j - i + 3) % 3), tol)) return false;
      }
    }
    return true;
  };
  auto classify = [&](const Mat& m, bool swapped) -> std::optional<Opm3Witness> {
    if (!circulant(m)) return std::nullopt;
    const Scalar x = m.at(0, 0), y = m.at(0, 1), w = m.at(0, 2);
    const Scalar one = like(m.is_exact(), 1);
    if ((one - x - y).close_to(w, tol)) {
      const auto f = swapped ? Opm3Family::Z1Bar : Opm3Family::X1Bar;
      if (opm3_conic_residual(f, x, y).is_zero(8 * tol)) {
        return Opm3Witness{f, x, y};
      }
    }
    if ((-one - x - y).close_to(w, tol)) {
      const auto f = swapped ? Opm3Family::Wm1Bar : Opm3Family::Ym1Bar;
      if (opm3_conic_residual(f, x, y).is_zero(8 * tol)) {
        return Opm3Witness{f, x, y};
      }
    }
    return std::nullopt;
  };
  if (auto w = classify(b, false)) return w;
  const Mat swapped = to_matrix(parse_cycles("(23)", 3), b.is_exact(), tol) * b;
  return classify(swapped, true);
}

}  // namespace opm
