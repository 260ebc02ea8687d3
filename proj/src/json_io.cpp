#include "opm/json_io.hpp"

#include <stdexcept>

namespace opm {

Json scalar_to_json(const Scalar& s) {
  if (s.is_exact()) return format_rational(s.rat());
  return s.dbl();
}

std::string scalar_to_string(const Scalar& s) {
  if (s.is_exact()) return format_rational(s.rat());
  return std::to_string(s.dbl());
}

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.order(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.order(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const Json& j, bool snap, double tol) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix JSON must be an array of rows");
  const int n = static_cast<int>(j.size());
  if (n > 4) throw std::invalid_argument("matrix order must be 1..4");

  bool any_string = false, any_number = false;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw std::invalid_argument("matrix JSON rows must all have length n");
    }
    for (const auto& e : row) {
      if (e.is_string()) {
        any_string = true;
      } else if (e.is_number()) {
        any_number = true;
      } else {
        throw std::invalid_argument("matrix entries must be strings or numbers");
      }
    }
  }
  if (any_string && any_number) {
    throw std::invalid_argument("matrix entries must be homogeneous: all \"p/q\" strings or all numbers");
  }

  const bool exact = any_string || snap;
  std::vector<Scalar> entries;
  entries.reserve(n * n);
  for (const auto& row : j) {
    for (const auto& e : row) {
      if (e.is_string()) {
        const auto r = parse_rational(e.get<std::string>());
        if (!r) throw std::invalid_argument("malformed rational entry: " + e.get<std::string>());
        entries.push_back(Scalar::exact(*r));
      } else if (exact) {
        entries.push_back(Scalar::exact(snap_to_rational(e.get<double>())));
      } else {
        entries.push_back(Scalar::approx(e.get<double>()));
      }
    }
  }
  return Mat::from_entries(n, entries, tol);
}

Json perm_to_json(const Perm& p) {
  Json out = Json::array();
  for (int v : p.image_one_based()) out.push_back(v);
  return out;
}

Perm perm_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("permutation JSON must be an image array");
  std::vector<int> image;
  for (const auto& e : j) image.push_back(e.get<int>());
  return Perm::from_image(image);
}

Json pattern_to_json(const Pattern& p) {
  Json out = Json::array();
  for (const auto& row : p.rows_text()) out.push_back(row);
  return out;
}

Pattern pattern_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("pattern JSON must be an array of row strings");
  std::string text;
  for (const auto& e : j) {
    if (!text.empty()) text.push_back(',');
    text += e.get<std::string>();
  }
  return Pattern::parse_text(text);
}

Json comb_to_json(const PermLinComb& c) {
  Json out = Json::array();
  for (const auto& [p, coeff] : c.terms()) {
    Json term;
    term["perm"] = format_cycles(p);
    term["coeff"] = scalar_to_json(coeff);
    out.push_back(std::move(term));
  }
  return out;
}

PermLinComb comb_from_json(const Json& j) {
  PermLinComb c;
  for (const auto& term : j) {
    const Perm p = parse_cycles(term.at("perm").get<std::string>());
    const auto& coeff = term.at("coeff");
    if (coeff.is_string()) {
      const auto r = parse_rational(coeff.get<std::string>());
      if (!r) throw std::invalid_argument("malformed coefficient");
      c.add(p, Scalar::exact(*r));
    } else {
      c.add(p, Scalar::approx(coeff.get<double>()));
    }
  }
  return c;
}

namespace {

Json opm3_witness_to_json(const Opm3Witness& w) {
  Json out;
  switch (w.family) {
    case Opm3Family::X1Bar: out["family"] = "X1bar"; break;
    case Opm3Family::Ym1Bar: out["family"] = "Ym1bar"; break;
    case Opm3Family::Z1Bar: out["family"] = "Z1bar"; break;
    case Opm3Family::Wm1Bar: out["family"] = "Wm1bar"; break;
  }
  out["x"] = scalar_to_json(w.x);
  out["y"] = scalar_to_json(w.y);
  return out;
}

Json block_witness_to_json(const BlockWitness& b) {
  Json out;
  out["size"] = b.size;
  out["block"] = matrix_to_json(b.block);
  if (b.size <= 2 && b.sign != 0) out["sign"] = b.sign;
  if (b.perm2) out["perm"] = format_cycles(*b.perm2);
  if (b.opm3) out["witness"] = opm3_witness_to_json(*b.opm3);
  return out;
}

}  // namespace

Json classification_to_json(const Classification& c) {
  Json out;
  out["tag"] = tag_name(c.tag);
  if (c.family) {
    Json w;
    w["family"] = family_name(c.family->fid);
    w["x"] = scalar_to_json(c.family->point.x);
    w["z"] = scalar_to_json(c.family->point.z);
    w["prefix"] = format_cycles(c.family->pbar);
    out["witness"] = std::move(w);
  }
  if (c.direct_sum) {
    Json w;
    w["left"] = format_cycles(c.direct_sum->left);
    w["right"] = format_cycles(c.direct_sum->right);
    w["sizes"] = c.direct_sum->sizes;
    Json blocks = Json::array();
    for (const auto& b : c.direct_sum->blocks) blocks.push_back(block_witness_to_json(b));
    w["blocks"] = std::move(blocks);
    out["witness"] = std::move(w);
  }
  if (c.hadamard) {
    Json w;
    w["left"] = format_cycles(c.hadamard->left);
    w["right"] = format_cycles(c.hadamard->right);
    w["corner"] = c.hadamard->corner;
    w["block"] = matrix_to_json(c.hadamard->block);
    w["block_witness"] = opm3_witness_to_json(c.hadamard->opm3);
    out["witness"] = std::move(w);
  }
  return out;
}

Json two_perm_report_to_json(const TwoPermScanReport& r) {
  Json out;
  out["pair_count"] = r.pair_count;
  out["any_nontrivial"] = r.any_nontrivial;
  Json pairs = Json::array();
  for (const auto& pr : r.pairs) {
    Json e;
    e["p"] = format_cycles(pr.p);
    e["q"] = format_cycles(pr.q);
    e["overlap"] = pr.overlap;
    Json sols = Json::array();
    for (const auto& [alpha, beta] : pr.solutions) {
      sols.push_back(Json::array({format_rational(alpha), format_rational(beta)}));
    }
    e["solutions"] = std::move(sols);
    pairs.push_back(std::move(e));
  }
  out["pairs"] = std::move(pairs);
  return out;
}

Json three_perm_report_to_json(const ThreePermScanReport& r) {
  Json out;
  out["triples_total"] = r.triples_total;
  out["classes_scanned"] = r.classes_scanned;
  out["exact_solutions"] = r.exact_solutions;
  out["approx_solutions"] = r.approx_solutions;
  out["signed_perm_count"] = r.signed_perm_count;
  out["direct_sum_count"] = r.direct_sum_count;
  out["unresolved_count"] = r.unresolved_count;
  return out;
}

}  // namespace opm
