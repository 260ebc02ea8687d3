#include "opm/perm.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace opm {

Perm::Perm(int n) : n_(n), img_{0, 1, 2, 3} {
  if (n < 1 || n > kMaxOrder) throw std::invalid_argument("permutation order must be 1..4");
}

Perm Perm::from_image(const std::vector<int>& image_one_based) {
  const int n = static_cast<int>(image_one_based.size());
  Perm p(n);
  std::array<bool, kMaxOrder> seen{};
  for (int i = 0; i < n; ++i) {
    const int v = image_one_based[i];
    if (v < 1 || v > n || seen[v - 1]) {
      throw std::invalid_argument("image is not a bijection on {1..n}");
    }
    seen[v - 1] = true;
    p.img_[i] = static_cast<std::uint8_t>(v - 1);
  }
  return p;
}

std::vector<int> Perm::image_one_based() const {
  std::vector<int> out(n_);
  for (int i = 0; i < n_; ++i) out[i] = img_[i] + 1;
  return out;
}

Perm Perm::inverse() const {
  Perm r(n_);
  for (int i = 0; i < n_; ++i) r.img_[img_[i]] = static_cast<std::uint8_t>(i);
  return r;
}

bool Perm::is_identity() const {
  for (int i = 0; i < n_; ++i) {
    if (img_[i] != i) return false;
  }
  return true;
}

int Perm::sign() const {
  int s = 1;
  std::array<bool, kMaxOrder> seen{};
  for (int i = 0; i < n_; ++i) {
    if (seen[i]) continue;
    int len = 0;
    int j = i;
    do {
      seen[j] = true;
      j = img_[j];
      ++len;
    } while (j != i);
    if (len % 2 == 0) s = -s;
  }
  return s;
}

bool Perm::h_orthogonal_to(const Perm& other) const {
  if (n_ != other.n_) throw std::invalid_argument("order mismatch");
  for (int i = 0; i < n_; ++i) {
    if (img_[i] == other.img_[i]) return false;
  }
  return true;
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.order() != q.order()) throw std::invalid_argument("order mismatch");
  std::vector<int> image(p.order());
  for (int i = 0; i < p.order(); ++i) image[i] = q(p(i)) + 1;
  return Perm::from_image(image);
}

Perm parse_cycles(const std::string& text, int n) {
  std::string s;
  s.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s == "id" || s == "()" || s.empty()) return Perm::identity(n);

  Perm result = Perm::identity(n);
  std::array<bool, Perm::kMaxOrder> used{};
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '(') throw std::invalid_argument("expected '(' in cycle notation");
    ++i;
    std::vector<int> cycle;
    while (i < s.size() && s[i] != ')') {
      const char c = s[i];
      if (c < '1' || c > '0' + n) throw std::invalid_argument("cycle element out of range");
      const int v = c - '0';
      if (used[v - 1]) throw std::invalid_argument("repeated element in cycle product");
      used[v - 1] = true;
      cycle.push_back(v);
      ++i;
    }
    if (i == s.size()) throw std::invalid_argument("unterminated cycle");
    ++i;  // ')'
    if (cycle.size() > 1) {
      std::vector<int> image(n);
      for (int k = 0; k < n; ++k) image[k] = k + 1;
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        image[cycle[k] - 1] = cycle[(k + 1) % cycle.size()];
      }
      result = compose(result, Perm::from_image(image));
    }
  }
  return result;
}

std::string format_cycles(const Perm& p) {
  if (p.is_identity()) return "id";
  std::string out;
  std::array<bool, Perm::kMaxOrder> seen{};
  for (int i = 0; i < p.order(); ++i) {
    if (seen[i] || p(i) == i) continue;
    out.push_back('(');
    int j = i;
    do {
      seen[j] = true;
      out.push_back(static_cast<char>('1' + j));
      j = p(j);
    } while (j != i);
    out.push_back(')');
  }
  return out;
}

const std::vector<Perm>& all_perms(int n) {
  static const std::array<std::vector<Perm>, Perm::kMaxOrder + 1> tables = [] {
    std::array<std::vector<Perm>, Perm::kMaxOrder + 1> t;
    for (int n = 1; n <= Perm::kMaxOrder; ++n) {
      std::vector<int> image(n);
      for (int i = 0; i < n; ++i) image[i] = i + 1;
      do {
        t[n].push_back(Perm::from_image(image));
      } while (std::next_permutation(image.begin(), image.end()));
    }
    return t;
  }();
  if (n < 1 || n > Perm::kMaxOrder) throw std::invalid_argument("order must be 1..4");
  return tables[n];
}

bool PermClass::contains(const Perm& p) const {
  return std::find(members.begin(), members.end(), p) != members.end();
}

const std::array<PermClass, 6>& s4_partition() {
  static const std::array<PermClass, 6> classes = [] {
    auto make = [](const char* a, const char* b, const char* c, const char* d) {
      std::array<Perm, 4> m = {parse_cycles(a), parse_cycles(b), parse_cycles(c),
                               parse_cycles(d)};
      std::sort(m.begin(), m.end());
      return PermClass{m};
    };
    return std::array<PermClass, 6>{
        make("id", "(12)(34)", "(13)(24)", "(14)(23)"),
        make("(23)", "(124)", "(1342)", "(143)"),
        make("(24)", "(123)", "(134)", "(1432)"),
        make("(34)", "(12)", "(1324)", "(1423)"),
        make("(14)", "(1243)", "(132)", "(234)"),
        make("(13)", "(1234)", "(142)", "(243)"),
    };
  }();
  return classes;
}

int s4_class_index(const Perm& p) {
  if (p.order() != 4) throw std::invalid_argument("order-4 permutation expected");
  const auto& classes = s4_partition();
  for (int k = 0; k < 6; ++k) {
    if (classes[k].contains(p)) return k;
  }
  throw std::logic_error("partition does not cover S4");
}

}  // namespace opm
