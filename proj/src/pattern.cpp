#include "opm/pattern.hpp"

#include <bit>
#include <cctype>
#include <stdexcept>

namespace opm {

Pattern::Pattern(int n) : n_(n), bits_(0) {
  if (n < 1 || n > 4) throw std::invalid_argument("pattern order must be 1..4");
}

Pattern Pattern::from_bits(int n, std::uint16_t bits) {
  Pattern p(n);
  p.bits_ = bits;
  if (n < 4) p.bits_ &= static_cast<std::uint16_t>((1u << (n * n)) - 1u);
  return p;
}

Pattern Pattern::parse_text(const std::string& text) {
  std::vector<std::string> rows;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      rows.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  rows.push_back(cur);
  const int n = static_cast<int>(rows.size());
  Pattern p(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n) {
      throw std::invalid_argument("pattern is not square");
    }
    for (int j = 0; j < n; ++j) {
      const char c = rows[i][j];
      if (c != '0' && c != '1') throw std::invalid_argument("pattern entries must be 0/1");
      p.set(i, j, c == '1');
    }
  }
  return p;
}

std::string Pattern::to_text() const {
  std::string out;
  for (int i = 0; i < n_; ++i) {
    if (i) out.push_back(',');
    for (int j = 0; j < n_; ++j) out.push_back(bit(i, j) ? '1' : '0');
  }
  return out;
}

std::vector<std::string> Pattern::rows_text() const {
  std::vector<std::string> rows(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) rows[i].push_back(bit(i, j) ? '1' : '0');
  }
  return rows;
}

void Pattern::set(int i, int j, bool v) {
  const std::uint16_t mask = static_cast<std::uint16_t>(1u << (i * n_ + j));
  if (v) {
    bits_ |= mask;
  } else {
    bits_ &= static_cast<std::uint16_t>(~mask);
  }
}

Pattern Pattern::transposed() const {
  Pattern t(n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) t.set(j, i, bit(i, j));
  }
  return t;
}

namespace {

// Row i as a bitmask over columns.
unsigned row_mask(const Pattern& m, int i) {
  unsigned r = 0;
  for (int j = 0; j < m.order(); ++j) {
    if (m.bit(i, j)) r |= 1u << j;
  }
  return r;
}

bool rows_quadrangular(const Pattern& m) {
  const int n = m.order();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::popcount(row_mask(m, i) & row_mask(m, j)) == 1) return false;
    }
  }
  return true;
}

}  // namespace

bool is_quadrangular(const Pattern& m) {
  return rows_quadrangular(m) && rows_quadrangular(m.transposed());
}

bool is_row_strongly_quadrangular(const Pattern& m) {
  const int n = m.order();
  std::vector<unsigned> rows(n);
  for (int i = 0; i < n; ++i) rows[i] = row_mask(m, i);

  // Every subset S in which each row meets another row of S must have at
  // least |S| columns with two or more 1s among the rows of S.
  for (unsigned subset = 1; subset < (1u << n); ++subset) {
    const int size = std::popcount(subset);
    if (size < 2) continue;
    bool qualifies = true;
    for (int i = 0; i < n && qualifies; ++i) {
      if (!((subset >> i) & 1u)) continue;
      bool meets = false;
      for (int j = 0; j < n; ++j) {
        if (i == j || !((subset >> j) & 1u)) continue;
        if (rows[i] & rows[j]) {
          meets = true;
          break;
        }
      }
      if (!meets) qualifies = false;
    }
    if (!qualifies) continue;
    int heavy_cols = 0;
    for (int c = 0; c < n; ++c) {
      int ones = 0;
      for (int i = 0; i < n; ++i) {
        if (((subset >> i) & 1u) && ((rows[i] >> c) & 1u)) ++ones;
      }
      if (ones >= 2) ++heavy_cols;
    }
    if (heavy_cols < size) return false;
  }
  return true;
}

bool is_column_strongly_quadrangular(const Pattern& m) {
  return is_row_strongly_quadrangular(m.transposed());
}

bool is_strongly_quadrangular(const Pattern& m) {
  return is_row_strongly_quadrangular(m) && is_column_strongly_quadrangular(m);
}

bool supports_unitary_small(const Pattern& m) {
  if (m.order() > 4) throw std::invalid_argument("criterion stated only for order <= 4");
  return is_strongly_quadrangular(m);
}

}  // namespace opm
