#pragma once

#include "opm/mat.hpp"
#include "opm/perm.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace opm {

enum class FamilyLetter { X, Y, Z };

// One of the twelve parametric families X1..X4, Y1..Y4, Z1..Z4.
struct FamilyId {
  FamilyLetter letter;
  int j;  // 1..4

  friend bool operator==(const FamilyId&, const FamilyId&) = default;
};

std::string family_name(FamilyId fid);                    // "X1".."Z4"
std::optional<FamilyId> family_from_name(const std::string& name);

// Parameter pair on one of the defining conics. The second coordinate is
// stored as z uniformly across the three letters.
struct ParamPoint {
  Scalar x;
  Scalar z;
};

// x^2 + z^2 - z, + z, - x, + x for j = 1, 2, 3, 4.
Scalar conic_residual(int j, const ParamPoint& p);

enum class MnKind { MPlus, MMinus, NPlus, NMinus };

// Block matrices from 2x2 pieces A_t = [[t,-t],[-t,t]],
// B(s)_t = [[t, s1-t],[s1-t, t]], F = [[0,1],[1,0]]:
//   M(s) = [[A_x, B(s)_z], [B(s)_z, -A_x]]
//   N(s) = [[B(s)_x, A_z], [A_z, F B(s)_x]]
// No conic constraint is enforced here.
Mat mn_matrix(MnKind kind, const Scalar& x, const Scalar& z);

// P_bar * C * M * C with C = I (X), P(23) (Y), P(24) (Z) and M the j-indexed
// M/N form at p. Requires p on the conic for j (exact: equality; approx:
// residual within tol) and pbar fixing 1. Throws std::invalid_argument
// otherwise.
Mat family_element(FamilyId fid, const ParamPoint& p,
                   const Perm& pbar = Perm::identity(4));

// Exact matrix with diagonal -1/2 and off-diagonal 1/2.
Mat grover();

// (x, z) = (sin(theta)/2, -(r/2)(1 - r cos(theta))) on x^2 + z^2 + r z = 0.
ParamPoint trig_point(double theta, int r);

enum class TrigFamily { X1Theta, Y1Theta, Z1Theta };
std::optional<TrigFamily> trig_family_from_name(const std::string& name);

// One-parameter deformations of the Grover matrix, always orthogonal and
// permutative to machine precision.
Mat trig_family(double theta, TrigFamily which);

// Exact rational conic points: x = (r^2-1)/(2(r^2+1)),
// z = s/2 + branch * r/(r^2+1), on x^2 + z^2 - s z = 0. Requires r != 0.
ParamPoint rational_point(const Rat& r, int s, int branch);

enum class SporadicKind { Plain, HalfJ };

// sign * P_tau or sign * (J/2 - P_tau); both are orthogonal permutative.
Mat sporadic_opm(const Perm& tau, int sign, SporadicKind kind);

// Determinant shared by every member of the family: +1 for j in {1,2},
// -1 for j in {3,4}.
int det_class(FamilyId fid);

enum class CSet { C1, C2 };

// The two one-parameter sets with constant first row -+1/2 and circulant
// lower block; a4 = -c2/2 + branch * sqrt(disc)/2 where disc is
// (1-3c2)(1+c2) for C1 (c2 in [-1,1/3]) and (1+3c2)(1-c2) for C2
// (c2 in [-1/3,1]). Exact when the discriminant is a rational square.
Mat c_set_element(CSet which, const Scalar& c2, int branch);

enum class Opm3Family { X1Bar, Ym1Bar, Z1Bar, Wm1Bar };

// Order-3 orthogonal permutative matrices: circulants circ(x, y, 1-x-y) on
// x^2+y^2-x-y+xy = 0 (X1Bar), circ(x, y, -1-x-y) on x^2+y^2+x+y+xy = 0
// (Ym1Bar), and their left multiples by the (23) row swap (Z1Bar, Wm1Bar).
Mat opm3_element(Opm3Family which, const Scalar& x, const Scalar& y);

Scalar opm3_conic_residual(Opm3Family which, const Scalar& x, const Scalar& y);

// Rational parametrization of the order-3 conics (through (1,0) resp (-1,0)).
std::pair<Rat, Rat> opm3_rational_point(Opm3Family which, const Rat& t);

// Rational c2 samples with rational sqrt(disc), via the conic d^2 = disc.
std::pair<Rat, Rat> c_set_rational_sample(CSet which, const Rat& t);

// ---- membership -----------------------------------------------------------

// Coefficients of a on an ordered pairwise H-orthogonal quadruple of
// permutations, when a lies in its span.
std::optional<std::array<Scalar, 4>> quadruple_coefficients(
    const Mat& a, const std::array<Perm, 4>& quad);

// The ordered quadruple carrying the letter's linear combinations: bare side
// {(34),(12),(13)(24),(14)(23)} / {(24),(12)(34),(13),(14)(23)} /
// {(23),(12)(34),(13)(24),(14)}; prefixed side is the bare one multiplied by
// the letter's prefix (34)/(24)/(23) on the left.
const std::array<Perm, 4>& letter_quadruple(FamilyLetter letter, bool prefixed);

const Perm& letter_prefix(FamilyLetter letter);

// j such that a is a member of the letter's bare family set (the M/N forms),
// or of the prefix-multiplied set when prefixed is true.
std::optional<int> family_index(const Mat& a, FamilyLetter letter, bool prefixed);

// Recovered construction data for an orthogonal permutative matrix:
// a == family_element(fid, point, pbar).
struct FamilyWitness {
  FamilyId fid;
  ParamPoint point;
  Perm pbar;
};

// All witnesses in deterministic order (pbar by image order, then letter);
// empty when a is not an OPM of order 4.
std::vector<FamilyWitness> opm_family_witnesses(const Mat& a);
std::optional<FamilyWitness> opm_family_witness(const Mat& a);

// Witness for a 3x3 orthogonal permutative matrix.
struct Opm3Witness {
  Opm3Family family;
  Scalar x;
  Scalar y;
};

std::optional<Opm3Witness> opm3_witness(const Mat& b);

const std::array<Perm, 6>& one_plus_p3();  // prefixes fixing 1, image order

}  // namespace opm
