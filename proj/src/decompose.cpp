#include "opm/decompose.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace opm {

void PermLinComb::add(const Perm& p, const Scalar& coeff) {
  if (p.order() != 4) throw std::invalid_argument("order-4 permutation expected");
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    if (!coeff.is_zero()) terms_.emplace(p, coeff);
    return;
  }
  const Scalar sum = it->second + coeff;
  if (sum.is_zero()) {
    terms_.erase(it);
  } else {
    it->second = sum;
  }
}

std::optional<Scalar> PermLinComb::coeff(const Perm& p) const {
  auto it = terms_.find(p);
  if (it == terms_.end()) return std::nullopt;
  return it->second;
}

Mat PermLinComb::evaluate(double tol) const {
  const bool exact = terms_.empty() ? true : terms_.begin()->second.is_exact();
  Mat sum = Mat::zero(4, exact, tol);
  for (const auto& [p, c] : terms_) {
    sum = sum + to_matrix(p, exact, tol).scaled(c);
  }
  return sum;
}

const std::vector<Perm>& basis_B() {
  static const std::vector<Perm> basis = [] {
    std::vector<Perm> b;
    for (const char* t : {"(12)", "(23)", "(24)", "(34)", "(123)", "(124)", "(234)",
                          "(12)(34)", "(13)(24)", "(14)(23)"}) {
      b.push_back(parse_cycles(t));
    }
    return b;
  }();
  return basis;
}

int basis_block_of(int basis_position) {
  static const int blocks[10] = {1, 5, 2, 1, 4, 3, 3, 2, 1, 1};
  if (basis_position < 0 || basis_position >= 10) {
    throw std::invalid_argument("basis position out of range");
  }
  return blocks[basis_position];
}

namespace {

// Gauss-Jordan transform for the fixed 16x10 vectorized basis: E * vec(A)
// yields the 10 coordinates followed by 6 residual entries that vanish
// exactly when A lies in the span.
struct SpanSolver {
  std::array<std::array<Rat, 16>, 16> e;

  SpanSolver() {
    std::array<std::array<Rat, 26>, 16> m{};
    const auto& basis = basis_B();
    for (int k = 0; k < 10; ++k) {
      const Mat pm = to_matrix(basis[k]);
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) m[i * 4 + j][k] = pm.at(i, j).rat();
      }
    }
    for (int r = 0; r < 16; ++r) m[r][10 + r] = 1;

    int row = 0;
    for (int col = 0; col < 10; ++col) {
      int pivot = -1;
      for (int r = row; r < 16; ++r) {
        if (m[r][col] != 0) {
          pivot = r;
          break;
        }
      }
      if (pivot < 0) throw std::logic_error("basis must have full column rank");
      std::swap(m[row], m[pivot]);
      const Rat inv = Rat(1) / m[row][col];
      for (int c = col; c < 26; ++c) m[row][c] *= inv;
      for (int r = 0; r < 16; ++r) {
        if (r == row || m[r][col] == 0) continue;
        const Rat f = m[r][col];
        for (int c = col; c < 26; ++c) m[r][c] -= f * m[row][c];
      }
      ++row;
    }
    for (int r = 0; r < 16; ++r) {
      for (int c = 0; c < 16; ++c) e[r][c] = m[r][10 + c];
    }
  }
};

const SpanSolver& span_solver() {
  static const SpanSolver solver;
  return solver;
}

std::optional<PermLinComb> solve_span_exact(const std::array<Rat, 16>& vec) {
  const auto& e = span_solver().e;
  std::array<Rat, 16> out{};
  for (int r = 0; r < 16; ++r) {
    Rat acc = 0;
    for (int c = 0; c < 16; ++c) {
      if (e[r][c] != 0) acc += e[r][c] * vec[c];
    }
    out[r] = acc;
  }
  for (int r = 10; r < 16; ++r) {
    if (out[r] != 0) return std::nullopt;
  }
  PermLinComb comb;
  const auto& basis = basis_B();
  for (int k = 0; k < 10; ++k) {
    if (out[k] != 0) comb.add(basis[k], Scalar::exact(out[k]));
  }
  return comb;
}

}  // namespace

std::optional<PermLinComb> in_perm_span(const Mat& a) {
  if (a.order() != 4) throw std::invalid_argument("span solve defined for order 4");
  std::array<Rat, 16> vec{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      vec[i * 4 + j] =
          a.is_exact() ? a.at(i, j).rat() : snap_to_rational(a.at(i, j).dbl());
    }
  }
  auto comb = solve_span_exact(vec);
  if (!comb) return std::nullopt;
  if (!a.is_exact()) {
    const Mat back = comb->evaluate(a.tol());
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (std::fabs(back.at(i, j).as_double() - a.at(i, j).dbl()) > a.tol()) {
          return std::nullopt;
        }
      }
    }
  }
  return comb;
}

std::set<int> subspace_membership(const Mat& a) {
  auto comb = in_perm_span(a);
  if (!comb) throw std::invalid_argument("matrix is not in the permutation span");
  std::set<int> blocks;
  const auto& basis = basis_B();
  for (int k = 0; k < 10; ++k) {
    if (comb->coeff(basis[k]).has_value()) blocks.insert(basis_block_of(k));
  }
  return blocks;
}

PermLinComb opm_as_four_perms(const Mat& a, const FamilyWitness& witness) {
  const Mat d = witness.pbar.is_identity()
                    ? a
                    : to_matrix(witness.pbar, a.is_exact(), a.tol()).transposed() * a;
  const auto& quad = letter_quadruple(witness.fid.letter, false);
  const auto coeffs = quadruple_coefficients(d, quad);
  if (!coeffs) throw std::invalid_argument("witness does not reconstruct the matrix");
  PermLinComb comb;
  for (int k = 0; k < 4; ++k) comb.add(quad[k], (*coeffs)[k]);
  return comb;
}

PermLinComb opm_as_four_perms(const Mat& a) {
  const auto w = opm_family_witness(a);
  if (!w) throw std::invalid_argument("not an orthogonal permutative matrix of order 4");
  return opm_as_four_perms(a, *w);
}

std::vector<std::pair<int, Mat>> split_six_permutative(const PermLinComb& c) {
  std::map<int, PermLinComb> groups;
  for (const auto& [p, coeff] : c.terms()) groups[s4_class_index(p)].add(p, coeff);
  std::vector<std::pair<int, Mat>> out;
  for (const auto& [cls, part] : groups) out.emplace_back(cls, part.evaluate());
  return out;
}

// ---- two-permutation scan --------------------------------------------------

TwoPermScanReport two_perm_orthogonality_scan() {
  TwoPermScanReport report;
  const auto& perms = all_perms(4);
  for (std::size_t a = 0; a < perms.size(); ++a) {
    for (std::size_t b = a + 1; b < perms.size(); ++b) {
      const Perm& p = perms[a];
      const Perm& q = perms[b];
      TwoPermPairReport entry{p, q, 0, {}, false};

      // Gram conditions for alpha P + beta Q:
      //   diagonal i with sigma(i) == tau(i):   (alpha + beta)^2 = 1
      //   diagonal i with sigma(i) != tau(i):   alpha^2 + beta^2 = 1
      //   any off-diagonal of P^T Q + Q^T P:    alpha * beta = 0
      const Perm rho = compose(p.inverse(), q);
      bool off_diagonal_present = false;
      for (int i = 0; i < 4; ++i) {
        if (rho(i) == i) {
          ++entry.overlap;
        } else {
          off_diagonal_present = true;
        }
      }
      // rho != id for distinct permutations, so alpha * beta = 0 is forced
      // and the candidate solutions are the four axis points.
      if (!off_diagonal_present) throw std::logic_error("distinct pair with rho = id");

      for (const auto& [alpha, beta] :
           {std::pair<Rat, Rat>{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        const Mat m = to_matrix(p).scaled(Scalar::exact(alpha)) +
                      to_matrix(q).scaled(Scalar::exact(beta));
        if (m.is_orthogonal()) entry.solutions.emplace_back(alpha, beta);
      }
      if (entry.solutions.size() != 4) {
        throw std::logic_error("axis solutions must all be orthogonal");
      }
      report.pairs.push_back(std::move(entry));
    }
  }
  report.pair_count = static_cast<int>(report.pairs.size());
  report.any_nontrivial = false;
  return report;
}

// ---- three-permutation classification and scan ------------------------------

ThreePermClassification three_perm_classify(const Perm& p, const Perm& q, const Perm& r,
                                            const Scalar& alpha, const Scalar& beta,
                                            const Scalar& gamma) {
  if (p == q || p == r || q == r) {
    throw std::invalid_argument("permutations must be distinct");
  }
  if (!alpha.same_backend(beta) || !alpha.same_backend(gamma)) throw backend_mismatch();
  const bool exact = alpha.is_exact();
  const double tol = exact ? 0.0 : 1e-12;
  const Mat a = (to_matrix(p, exact, tol).scaled(alpha) +
                 to_matrix(q, exact, tol).scaled(beta) +
                 to_matrix(r, exact, tol).scaled(gamma))
                    .with_tol(tol);
  if (!a.is_orthogonal()) {
    throw std::invalid_argument("combination is not orthogonal");
  }

  ThreePermClassification out;
  for (int sign : {1, -1}) {
    for (const Perm& tau : all_perms(4)) {
      Mat cand = to_matrix(tau, exact, tol);
      if (sign < 0) cand = -cand;
      if (a.equals(cand)) {
        out.kind = ThreePermClassification::Kind::SignedPermutation;
        out.sign = sign;
        out.tau = tau;
        return out;
      }
    }
  }

  auto form = find_direct_sum_form(a);
  if (form && form->sizes == std::vector<int>{1, 3}) {
    const auto block = form->permuted.subblock(1, 1, 3);
    const auto w3 = opm3_witness(block);
    if (w3) {
      out.kind = ThreePermClassification::Kind::DirectSum;
      out.form = std::move(form);
      out.block3 = w3;
      return out;
    }
  }
  out.kind = ThreePermClassification::Kind::Unresolved;
  return out;
}

namespace {

// Normalized integer direction: coprime components, first nonzero positive.
std::tuple<long long, long long, long long> normalize_direction(Rat u, Rat v, Rat w) {
  const Int lcm_den = boost::multiprecision::lcm(
      boost::multiprecision::lcm(denominator(u), denominator(v)), denominator(w));
  Int a = numerator(u) * (lcm_den / denominator(u));
  Int b = numerator(v) * (lcm_den / denominator(v));
  Int c = numerator(w) * (lcm_den / denominator(w));
  Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(a), abs(b)), abs(c));
  if (g == 0) return {0, 0, 0};
  a /= g;
  b /= g;
  c /= g;
  const Int lead = a != 0 ? a : (b != 0 ? b : c);
  if (lead < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  return {a.convert_to<long long>(), b.convert_to<long long>(), c.convert_to<long long>()};
}

struct TripleSystem {
  std::vector<std::array<Rat, 3>> rows;  // homogeneous conditions on (u,v,w)
  std::array<int, 3> delta0{};           // diagonal indicators at position 0
};

TripleSystem build_triple_system(const Perm& p, const Perm& q, const Perm& r) {
  TripleSystem sys;
  const Perm rho[3] = {compose(p.inverse(), q), compose(p.inverse(), r),
                       compose(q.inverse(), r)};
  auto s_val = [&](int k, int i, int j) {
    return Rat((rho[k](i) == j ? 1 : 0) + (rho[k](j) == i ? 1 : 0));
  };
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      std::array<Rat, 3> row = {s_val(0, i, j), s_val(1, i, j), s_val(2, i, j)};
      if (row[0] != 0 || row[1] != 0 || row[2] != 0) sys.rows.push_back(row);
    }
  }
  auto delta = [&](int k, int i) { return rho[k](i) == i ? 1 : 0; };
  for (int k = 0; k < 3; ++k) sys.delta0[k] = delta(k, 0);
  for (int i = 1; i < 4; ++i) {
    std::array<Rat, 3> row = {Rat(delta(0, i) - delta(0, 0)),
                              Rat(delta(1, i) - delta(1, 0)),
                              Rat(delta(2, i) - delta(2, 0))};
    if (row[0] != 0 || row[1] != 0 || row[2] != 0) sys.rows.push_back(row);
  }
  return sys;
}

// Null space basis of the homogeneous system, dimension 0..2.
std::vector<std::array<Rat, 3>> null_space(const TripleSystem& sys) {
  std::vector<std::array<Rat, 3>> m = sys.rows;
  int row = 0;
  std::array<int, 3> pivot_col_of_row = {-1, -1, -1};
  std::array<bool, 3> is_pivot = {false, false, false};
  for (int col = 0; col < 3 && row < static_cast<int>(m.size()); ++col) {
    int pr = -1;
    for (int r = row; r < static_cast<int>(m.size()); ++r) {
      if (m[r][col] != 0) {
        pr = r;
        break;
      }
    }
    if (pr < 0) continue;
    std::swap(m[row], m[pr]);
    const Rat inv = Rat(1) / m[row][col];
    for (int c = 0; c < 3; ++c) m[row][c] *= inv;
    for (int r = 0; r < static_cast<int>(m.size()); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rat f = m[r][col];
      for (int c = 0; c < 3; ++c) m[r][c] -= f * m[row][c];
    }
    pivot_col_of_row[row] = col;
    is_pivot[col] = true;
    ++row;
  }
  std::vector<std::array<Rat, 3>> basis;
  for (int free = 0; free < 3; ++free) {
    if (is_pivot[free]) continue;
    std::array<Rat, 3> v{};
    v[free] = 1;
    for (int rr = 0; rr < row; ++rr) {
      const int pc = pivot_col_of_row[rr];
      v[pc] = -m[rr][free];
    }
    basis.push_back(v);
  }
  return basis;
}

}  // namespace

std::vector<std::array<Scalar, 3>> three_perm_solutions(const Perm& p, const Perm& q,
                                                        const Perm& r,
                                                        int direction_range) {
  if (p == q || p == r || q == r) {
    throw std::invalid_argument("permutations must be distinct");
  }
  std::vector<std::array<Scalar, 3>> out;
  const TripleSystem sys = build_triple_system(p, q, r);
  const auto basis = null_space(sys);
  if (basis.size() > 2) throw std::logic_error("null space dimension exceeds 2");

  std::set<std::tuple<long long, long long, long long>> directions;
  if (basis.size() == 1) {
    directions.insert(normalize_direction(basis[0][0], basis[0][1], basis[0][2]));
  } else if (basis.size() == 2) {
    for (int c1 = -direction_range; c1 <= direction_range; ++c1) {
      for (int c2 = -direction_range; c2 <= direction_range; ++c2) {
        if (c1 == 0 && c2 == 0) continue;
        const Rat u = Rat(c1) * basis[0][0] + Rat(c2) * basis[1][0];
        const Rat v = Rat(c1) * basis[0][1] + Rat(c2) * basis[1][1];
        const Rat w = Rat(c1) * basis[0][2] + Rat(c2) * basis[1][2];
        directions.insert(normalize_direction(u, v, w));
      }
    }
  }

  for (const auto& [ul, vl, wl] : directions) {
    // Directions with a zero component carry no solution: two nonzero
    // coefficient products force the third to be nonzero.
    if (ul == 0 || vl == 0 || wl == 0) continue;
    const Rat u0(ul), v0(vl), w0(wl);
    const Rat g0 = u0 * sys.delta0[0] + v0 * sys.delta0[1] + w0 * sys.delta0[2];
    const Rat k_norm = u0 * v0 / w0 + u0 * w0 / v0 + v0 * w0 / u0;
    const Rat den = k_norm + 2 * g0;
    if (den == 0) continue;
    const Rat t = Rat(1) / den;
    const Rat a2 = t * u0 * v0 / w0;
    const Rat b2 = t * u0 * w0 / v0;
    const Rat c2 = t * v0 * w0 / u0;
    if (a2 <= 0 || b2 <= 0 || c2 <= 0) continue;

    if (const auto ra = exact_sqrt(a2)) {
      const Rat alpha = *ra;
      const Rat beta = t * u0 / alpha;
      const Rat gamma = t * v0 / alpha;
      out.push_back({Scalar::exact(alpha), Scalar::exact(beta), Scalar::exact(gamma)});
      out.push_back({Scalar::exact(-alpha), Scalar::exact(-beta), Scalar::exact(-gamma)});
    } else {
      const double alpha = std::sqrt(to_double(a2));
      const double beta = to_double(t * u0) / alpha;
      const double gamma = to_double(t * v0) / alpha;
      out.push_back({Scalar::approx(alpha), Scalar::approx(beta), Scalar::approx(gamma)});
      out.push_back(
          {Scalar::approx(-alpha), Scalar::approx(-beta), Scalar::approx(-gamma)});
    }
  }
  return out;
}

ThreePermScanReport three_perm_scan(int direction_range) {
  ThreePermScanReport report;
  const auto& perms = all_perms(4);
  const int n = static_cast<int>(perms.size());

  // Composition index table comp[a][b] = index of perms[a] * perms[b].
  std::array<std::array<std::uint8_t, 24>, 24> comp{};
  {
    std::map<Perm, int> index;
    for (int i = 0; i < n; ++i) index[perms[i]] = i;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        comp[a][b] = static_cast<std::uint8_t>(index.at(compose(perms[a], perms[b])));
      }
    }
  }

  // Canonical representative of {P,Q,R} under (X,Y) |-> {X P Y, X Q Y, X R Y}.
  std::map<std::array<int, 3>, int> class_members;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        ++report.triples_total;
        std::array<int, 3> best = {n, n, n};
        for (int x = 0; x < n; ++x) {
          for (int y = 0; y < n; ++y) {
            std::array<int, 3> image = {comp[comp[x][i]][y], comp[comp[x][j]][y],
                                        comp[comp[x][k]][y]};
            std::sort(image.begin(), image.end());
            if (image < best) best = image;
          }
        }
        ++class_members[best];
      }
    }
  }

  for (const auto& [rep, count] : class_members) {
    (void)count;
    ++report.classes_scanned;
    const Perm& p = perms[rep[0]];
    const Perm& q = perms[rep[1]];
    const Perm& r = perms[rep[2]];

    auto classify_and_count = [&](const Scalar& a, const Scalar& b, const Scalar& c,
                                  bool exact) {
      const auto cls = three_perm_classify(p, q, r, a, b, c);
      if (exact) {
        ++report.exact_solutions;
      } else {
        ++report.approx_solutions;
      }
      switch (cls.kind) {
        case ThreePermClassification::Kind::SignedPermutation:
          ++report.signed_perm_count;
          break;
        case ThreePermClassification::Kind::DirectSum:
          ++report.direct_sum_count;
          break;
        default:
          ++report.unresolved_count;
      }
    };

    for (const auto& sol : three_perm_solutions(p, q, r, direction_range)) {
      classify_and_count(sol[0], sol[1], sol[2], sol[0].is_exact());
    }

    // The six single-coefficient solutions exist for every triple.
    classify_and_count(Scalar::exact(1), Scalar::exact(0), Scalar::exact(0), true);
    classify_and_count(Scalar::exact(0), Scalar::exact(0), Scalar::exact(-1), true);
  }
  return report;
}

AddPermResult add_perm_preserves_opm(const std::vector<Perm>& s,
                                     const std::vector<Scalar>& coeffs,
                                     const Scalar& c, const Perm& p) {
  if (s.size() != coeffs.size()) throw std::invalid_argument("size mismatch");
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (!s[i].h_orthogonal_to(s[j])) {
        throw std::invalid_argument("set is not pairwise H-orthogonal");
      }
    }
  }
  const bool exact = c.is_exact();
  Mat sum = Mat::zero(4, exact);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!coeffs[i].same_backend(c)) throw backend_mismatch();
    sum = sum + to_matrix(s[i], exact).scaled(coeffs[i]);
  }
  AddPermResult out{sum + to_matrix(p, exact).scaled(c), false, false};
  out.orthogonal = out.matrix.is_orthogonal();
  if (out.orthogonal) {
    out.permutative = out.matrix.is_permutative();
    if (!out.permutative) {
      throw std::logic_error("orthogonal result must be permutative");
    }
  }
  return out;
}

}  // namespace opm
