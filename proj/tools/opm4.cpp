// Command-line interface for generating, checking, decomposing, classifying
// and verifying order-4 orthogonal matrices built from permutation matrices.
//
// Exit codes: 0 success, 2 usage/constraint error, 3 semantic precondition
// failure (e.g. classifying a non-orthogonal matrix).

#include "opm/classify.hpp"
#include "opm/decompose.hpp"
#include "opm/families.hpp"
#include "opm/json_io.hpp"
#include "opm/verify.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace opm;

constexpr int kExitUsage = 2;
constexpr int kExitSemantic = 3;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
  throw CliError{code, message};
}

Scalar parse_scalar_arg(const std::string& text, bool snap) {
  if (auto r = parse_rational(text)) return Scalar::exact(*r);
  try {
    const double d = std::stod(text);
    if (snap) return Scalar::exact(snap_to_rational(d));
    return Scalar::approx(d);
  } catch (const std::exception&) {
    fail(kExitUsage, "cannot parse value '" + text + "' (expected p/q or decimal)");
  }
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) fail(kExitUsage, "cannot open input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) fail(kExitUsage, "cannot open output file: " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

Mat load_matrix(const std::string& path, bool snap, double tol) {
  Json j;
  try {
    j = Json::parse(read_input(path));
  } catch (const std::exception& ex) {
    fail(kExitUsage, std::string("matrix JSON parse error: ") + ex.what());
  }
  try {
    return matrix_from_json(j, snap, tol);
  } catch (const std::exception& ex) {
    fail(kExitUsage, std::string("matrix load error: ") + ex.what());
  }
}

int parse_sign(const std::string& text) {
  if (text == "+" || text == "+1" || text == "1") return 1;
  if (text == "-" || text == "-1") return -1;
  fail(kExitUsage, "sign must be + or -");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::string x = "0", z = "0", c2 = "0";
  double theta = 0;
  std::string pbar = "id", tau = "id", sign = "+", kind = "half-J", branch = "+";
  std::string out = "-";
};

Mat generate(const GenArgs& a, bool snap) {
  if (a.family == "grover") return grover();
  if (a.family == "sporadic") {
    if (a.kind != "plain" && a.kind != "half-J") {
      fail(kExitUsage, "sporadic kind must be plain or half-J");
    }
    const SporadicKind kind =
        a.kind == "plain" ? SporadicKind::Plain : SporadicKind::HalfJ;
    return sporadic_opm(parse_cycles(a.tau), parse_sign(a.sign), kind);
  }
  if (auto trig = trig_family_from_name(a.family)) return trig_family(a.theta, *trig);
  if (a.family == "C1" || a.family == "C2") {
    return c_set_element(a.family == "C1" ? CSet::C1 : CSet::C2,
                         parse_scalar_arg(a.c2, snap), parse_sign(a.branch));
  }
  if (auto fid = family_from_name(a.family)) {
    const ParamPoint p{parse_scalar_arg(a.x, snap), parse_scalar_arg(a.z, snap)};
    return family_element(*fid, p, parse_cycles(a.pbar));
  }
  fail(kExitUsage, "unknown family '" + a.family +
                       "' (expected grover, X1..X4, Y1..Y4, Z1..Z4, C1, C2, "
                       "X1theta, Y1theta, Z1theta, sporadic)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthogonal permutative matrices of order 4"};
  app.require_subcommand(1);

  bool no_snap = false;
  double tol = kDefaultTol;
  app.add_flag("--no-snap", no_snap,
               "keep decimal inputs on the binary64 backend instead of snapping "
               "to rationals (denominator <= 10^6)");
  app.add_option("--tol", tol, "comparison tolerance for the approx backend");

  // gen
  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "generate a matrix from a named family");
  gen->add_option("family", gen_args.family, "family name")->required();
  gen->add_option("--x", gen_args.x, "first parameter (p/q or decimal)");
  gen->add_option("--z", gen_args.z, "second parameter (p/q or decimal)");
  gen->add_option("--c2", gen_args.c2, "set parameter c2");
  gen->add_option("--theta", gen_args.theta, "angle in radians");
  gen->add_option("--pbar", gen_args.pbar, "prefix permutation fixing 1, cycle notation");
  gen->add_option("--tau", gen_args.tau, "permutation for sporadic members");
  gen->add_option("--sign", gen_args.sign, "+ or -");
  gen->add_option("--kind", gen_args.kind, "plain or half-J");
  gen->add_option("--branch", gen_args.branch, "+ or - square-root branch");
  gen->add_option("--out", gen_args.out, "output path (default stdout)");

  // check
  std::string check_in = "-";
  auto* check = app.add_subcommand("check", "orthogonality / permutativity report");
  check->add_option("--in", check_in, "matrix JSON path (default stdin)");

  // decompose
  std::string dec_in = "-";
  auto* dec = app.add_subcommand("decompose", "permutation-basis decomposition");
  dec->add_option("--in", dec_in, "matrix JSON path (default stdin)");

  // classify
  std::string cls_in = "-";
  auto* cls = app.add_subcommand("classify", "structural classification");
  cls->add_option("--in", cls_in, "matrix JSON path (default stdin)");

  // partition
  auto* part = app.add_subcommand("partition", "the six pairwise H-orthogonal classes");

  // verify
  std::uint64_t seed = 1;
  int samples = 200;
  std::string verify_json;
  auto* ver = app.add_subcommand("verify", "run the verification suite");
  ver->add_option("--seed", seed, "sampling seed");
  ver->add_option("--samples", samples, "samples per sampled entry");
  ver->add_option("--json", verify_json, "write the JSON report to this path");

  // sweep
  std::string sweep_family, sweep_r_list, sweep_branch = "+", sweep_out = "-";
  double sweep_from = 0, sweep_to = 0, sweep_step = 0;
  auto* sweep = app.add_subcommand("sweep", "tabulate a one-parameter family as CSV");
  sweep->add_option("family", sweep_family, "X1theta/Y1theta/Z1theta or X1..Z4")
      ->required();
  sweep->add_option("--from", sweep_from, "start angle (radians)");
  sweep->add_option("--to", sweep_to, "end angle (radians)");
  sweep->add_option("--step", sweep_step, "angle step (radians)");
  sweep->add_option("--r", sweep_r_list, "comma-separated rational parameters");
  sweep->add_option("--branch", sweep_branch, "+ or - square-root branch");
  sweep->add_option("--out", sweep_out, "output CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  const bool snap = !no_snap;
  try {
    if (gen->parsed()) {
      Mat m = generate(gen_args, snap);
      write_output(gen_args.out, matrix_to_json(m).dump(2));
      return 0;
    }

    if (check->parsed()) {
      const Mat m = load_matrix(check_in, snap, tol);
      Json out;
      out["order"] = m.order();
      out["backend"] = m.is_exact() ? "exact" : "approx";
      out["orthogonal"] = m.is_orthogonal();
      out["orthogonality_residual"] = m.orthogonality_residual();
      out["permutative"] = m.is_permutative();
      auto [rows, cols] = m.row_col_sums();
      Json jr = Json::array(), jc = Json::array();
      for (int i = 0; i < m.order(); ++i) {
        jr.push_back(scalar_to_json(rows[i]));
        jc.push_back(scalar_to_json(cols[i]));
      }
      out["row_sums"] = std::move(jr);
      out["col_sums"] = std::move(jc);
      const Pattern p = m.pattern_of();
      out["pattern"] = pattern_to_json(p);
      out["quadrangular"] = is_quadrangular(p);
      out["strongly_quadrangular"] = is_strongly_quadrangular(p);
      write_output("-", out.dump(2));
      return 0;
    }

    if (dec->parsed()) {
      const Mat m = load_matrix(dec_in, snap, tol);
      Json out;
      const auto comb = in_perm_span(m);
      out["in_span"] = comb.has_value();
      if (comb) {
        out["combination"] = comb_to_json(*comb);
        Json blocks = Json::array();
        for (int k : subspace_membership(m)) blocks.push_back(k);
        out["subspaces"] = std::move(blocks);
        Json split = Json::array();
        for (const auto& [cls_idx, part] : split_six_permutative(*comb)) {
          Json e;
          e["class"] = cls_idx + 1;
          e["matrix"] = matrix_to_json(part);
          split.push_back(std::move(e));
        }
        out["six_split"] = std::move(split);
        if (m.is_orthogonal() && m.is_permutative()) {
          if (const auto w = opm_family_witness(m)) {
            Json fp;
            fp["family"] = family_name(w->fid);
            fp["prefix"] = format_cycles(w->pbar);
            fp["terms"] = comb_to_json(opm_as_four_perms(m, *w));
            out["four_permutations"] = std::move(fp);
          }
        }
      }
      write_output("-", out.dump(2));
      return 0;
    }

    if (cls->parsed()) {
      const Mat m = load_matrix(cls_in, snap, tol);
      const Classification c = classify_orthogonal(m);
      write_output("-", classification_to_json(c).dump(2));
      return c.tag == Classification::Tag::NotOrthogonal ? kExitSemantic : 0;
    }

    if (part->parsed()) {
      Json out = Json::array();
      for (const auto& cls_entry : s4_partition()) {
        Json members = Json::array();
        for (const auto& p : cls_entry.members) members.push_back(format_cycles(p));
        out.push_back(std::move(members));
      }
      write_output("-", out.dump(2));
      return 0;
    }

    if (ver->parsed()) {
      const SuiteReport report = run_all(seed, samples);
      std::cout << suite_report_table(report);
      if (!verify_json.empty()) {
        write_output(verify_json, suite_report_to_json(report).dump(2));
      }
      return report.all_pass() ? 0 : 1;
    }

    if (sweep->parsed()) {
      std::ostringstream csv;
      csv << "parameter";
      for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) csv << ",a" << i << j;
      }
      csv << ",det,ortho_residual,permutative\n";

      auto emit_row = [&csv](const std::string& param, const Mat& m) {
        csv << param;
        for (int i = 0; i < 4; ++i) {
          for (int j = 0; j < 4; ++j) {
            const Scalar& s = m.at(i, j);
            csv << ',' << (s.is_exact() ? format_rational(s.rat()) : format_double(s.dbl()));
          }
        }
        const Scalar d = m.det();
        csv << ',' << (d.is_exact() ? format_rational(d.rat()) : format_double(d.dbl()));
        csv << ',' << format_double(m.orthogonality_residual());
        csv << ',' << (m.is_permutative() ? 1 : 0) << '\n';
      };

      if (auto trig = trig_family_from_name(sweep_family)) {
        if (sweep_step <= 0 || sweep_to < sweep_from) {
          fail(kExitUsage, "sweep needs --from <= --to and --step > 0");
        }
        for (double theta = sweep_from; theta <= sweep_to + 1e-12; theta += sweep_step) {
          emit_row(format_double(theta), trig_family(theta, *trig));
        }
      } else if (auto fid = family_from_name(sweep_family)) {
        if (sweep_r_list.empty()) fail(kExitUsage, "rational sweep needs a nonempty --r list");
        std::vector<Rat> rs;
        std::stringstream ss(sweep_r_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          const auto r = parse_rational(tok);
          if (!r) fail(kExitUsage, "malformed rational '" + tok + "' in --r list");
          rs.push_back(*r);
        }
        if (rs.empty()) fail(kExitUsage, "rational sweep needs a nonempty --r list");
        const int branch = parse_sign(sweep_branch);
        const int s = (fid->j == 1 || fid->j == 3) ? 1 : -1;
        for (const Rat& r : rs) {
          ParamPoint p = rational_point(r, s, branch);
          if (fid->j >= 3) p = {p.z, p.x};
          emit_row(format_rational(r), family_element(*fid, p));
        }
      } else {
        fail(kExitUsage, "unknown sweep family '" + sweep_family + "'");
      }
      write_output(sweep_out, csv.str());
      return 0;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
