#include "tomei/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "tomei/error.hpp"

namespace tomei {

namespace {

long long llgcd(long long a, long long b) { return std::gcd(a, b); }

// Determinant of a small integer matrix by fraction-free (Bareiss) elimination.
long long int_det(std::vector<long long> m, int n) {
  long long prev = 1;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    if (m[static_cast<size_t>(k) * n + k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[static_cast<size_t>(i) * n + k] != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j)
        std::swap(m[static_cast<size_t>(k) * n + j], m[static_cast<size_t>(p) * n + j]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        long long num = m[static_cast<size_t>(i) * n + j] * m[static_cast<size_t>(k) * n + k] -
                        m[static_cast<size_t>(i) * n + k] * m[static_cast<size_t>(k) * n + j];
        m[static_cast<size_t>(i) * n + j] = num / prev;
      }
    prev = m[static_cast<size_t>(k) * n + k];
  }
  return sign * m[static_cast<size_t>(n - 1) * n + (n - 1)];
}

std::vector<DynkinEdge> chain_edges(int l) {
  std::vector<DynkinEdge> e;
  for (int i = 0; i + 1 < l; ++i) e.push_back({i, i + 1, 1, -1});
  return e;
}

DynkinDiagram standard_type(char letter, int l) {
  switch (letter) {
    case 'A': {
      if (l < 1) throw InputError("A_l requires l >= 1");
      return DynkinDiagram(l, chain_edges(l), "A" + std::to_string(l));
    }
    case 'B': {
      if (l < 2) throw InputError("B_l requires l >= 2");
      auto e = chain_edges(l);
      e.back().mult = 2;
      e.back().short_node = l - 1;
      return DynkinDiagram(l, e, "B" + std::to_string(l));
    }
    case 'C': {
      if (l < 2) throw InputError("C_l requires l >= 2");
      auto e = chain_edges(l);
      e.back().mult = 2;
      e.back().short_node = l - 2;
      return DynkinDiagram(l, e, "C" + std::to_string(l));
    }
    case 'D': {
      if (l < 4) throw InputError("D_l requires l >= 4");
      std::vector<DynkinEdge> e;
      for (int i = 0; i + 1 < l - 2; ++i) e.push_back({i, i + 1, 1, -1});
      e.push_back({l - 3, l - 2, 1, -1});
      e.push_back({l - 3, l - 1, 1, -1});
      std::sort(e.begin(), e.end(), [](const DynkinEdge& x, const DynkinEdge& y) {
        return std::pair(x.a, x.b) < std::pair(y.a, y.b);
      });
      return DynkinDiagram(l, e, "D" + std::to_string(l));
    }
    case 'E': {
      if (l != 6) throw InputError("only E6 is supported (rank cap)");
      std::vector<DynkinEdge> e = {{0, 1, 1, -1}, {1, 2, 1, -1}, {2, 3, 1, -1},
                                   {2, 5, 1, -1}, {3, 4, 1, -1}};
      std::sort(e.begin(), e.end(), [](const DynkinEdge& x, const DynkinEdge& y) {
        return std::pair(x.a, x.b) < std::pair(y.a, y.b);
      });
      return DynkinDiagram(6, e, "E6");
    }
    case 'F': {
      if (l != 4) throw InputError("F_l requires l == 4");
      auto e = chain_edges(4);
      e[1].mult = 2;
      e[1].short_node = 2;
      return DynkinDiagram(4, e, "F4");
    }
    case 'G': {
      if (l != 2) throw InputError("G_l requires l == 2");
      // Convention: C_21 = -3, so node 0 carries the short root.
      return DynkinDiagram(2, {{0, 1, 3, 0}}, "G2");
    }
    default:
      throw InputError(std::string("unknown type letter '") + letter + "'");
  }
}

DynkinDiagram parse_explicit(const std::string& text, int max_rank) {
  auto fail = [&](const std::string& msg, size_t pos) {
    throw InputError("diagram parse error at position " + std::to_string(pos) + ": " + msg);
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.rfind("rank=", 0) != 0) fail("expected 'rank='", 0);
  size_t pos = 5, start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start) fail("expected rank value", pos);
  int rank = std::stoi(s.substr(start, pos - start));
  std::vector<DynkinEdge> edges;
  if (pos < s.size()) {
    if (s[pos] != ';') fail("expected ';'", pos);
    ++pos;
    if (s.rfind("edges=", pos) != pos) fail("expected 'edges='", pos);
    pos += 6;
    while (pos < s.size()) {
      auto read_int = [&]() {
        size_t st = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == st) fail("expected node index", pos);
        return std::stoi(s.substr(st, pos - st));
      };
      int a = read_int();
      if (pos >= s.size() || s[pos] != '-') fail("expected '-'", pos);
      ++pos;
      int b = read_int();
      int mult = 1;
      if (pos < s.size() && s[pos] == ':') {
        ++pos;
        mult = read_int();
      }
      int short_node = -1;
      if (pos < s.size() && (s[pos] == '>' || s[pos] == '<')) {
        short_node = (s[pos] == '>') ? b : a;
        ++pos;
      }
      if (a < 1 || a > rank || b < 1 || b > rank || a == b) fail("bad node pair", pos);
      if (mult < 1 || mult > 3) fail("bond multiplicity must be 1..3", pos);
      if (mult > 1 && short_node < 0) fail("multiple bond needs an arrow (< or >)", pos);
      if (mult == 1) short_node = -1;
      DynkinEdge e;
      e.a = std::min(a, b) - 1;
      e.b = std::max(a, b) - 1;
      e.mult = mult;
      e.short_node = short_node < 0 ? -1 : short_node - 1;
      edges.push_back(e);
      if (pos < s.size()) {
        if (s[pos] != ',') fail("expected ','", pos);
        ++pos;
      }
    }
  }
  if (rank > max_rank)
    throw SizeCapExceeded("rank " + std::to_string(rank) + " exceeds cap " +
                          std::to_string(max_rank));
  std::sort(edges.begin(), edges.end(), [](const DynkinEdge& x, const DynkinEdge& y) {
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  return DynkinDiagram(rank, edges);
}

}  // namespace

int CartanMatrix::coxeter_m(int i, int j) const {
  int p = at(i, j) * at(j, i);
  switch (p) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: throw NonFiniteType("bond product " + std::to_string(p));
  }
}

DynkinDiagram::DynkinDiagram(int rank, std::vector<DynkinEdge> edges, std::string label)
    : rank_(rank), edges_(std::move(edges)), label_(std::move(label)) {
  if (rank_ < 1) throw InputError("diagram rank must be positive");
  for (size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.a < 0 || e.b >= rank_ || e.a >= e.b) throw InputError("bad edge node indices");
    if (e.mult < 1 || e.mult > 3) throw InputError("bad bond multiplicity");
    if (e.mult > 1 && e.short_node != e.a && e.short_node != e.b)
      throw InputError("multiple bond must name its short end");
    for (size_t j = i + 1; j < edges_.size(); ++j)
      if (edges_[j].a == e.a && edges_[j].b == e.b) throw InputError("duplicate edge");
  }
  validate_finite_type();
}

CartanMatrix DynkinDiagram::cartan() const {
  CartanMatrix c;
  c.rank = rank_;
  c.entries.assign(static_cast<size_t>(rank_) * rank_, 0);
  for (int i = 0; i < rank_; ++i) c.at(i, i) = 2;
  for (const auto& e : edges_) {
    if (e.mult == 1) {
      c.at(e.a, e.b) = -1;
      c.at(e.b, e.a) = -1;
    } else {
      int s = e.short_node;
      int l = (s == e.a) ? e.b : e.a;
      c.at(l, s) = -e.mult;
      c.at(s, l) = -1;
    }
  }
  return c;
}

void DynkinDiagram::validate_finite_type() const {
  CartanMatrix c = cartan();
  const int n = rank_;
  // Symmetrize: find positive integer weights d with d_i C_ij = d_j C_ji.
  std::vector<long long> num(n, 0), den(n, 1);
  std::vector<int> comp(n, -1);
  for (int root = 0; root < n; ++root) {
    if (comp[root] >= 0) continue;
    num[root] = 1;
    den[root] = 1;
    comp[root] = root;
    std::vector<int> stack = {root};
    while (!stack.empty()) {
      int i = stack.back();
      stack.pop_back();
      for (int j = 0; j < n; ++j) {
        if (j == i || c.at(i, j) == 0) continue;
        // d_j = d_i * C_ij / C_ji
        long long nj = num[i] * c.at(i, j);
        long long dj = den[i] * c.at(j, i);
        if (dj < 0) {
          nj = -nj;
          dj = -dj;
        }
        long long g = llgcd(std::abs(nj), dj);
        if (g > 0) {
          nj /= g;
          dj /= g;
        }
        if (comp[j] < 0) {
          comp[j] = root;
          num[j] = nj;
          den[j] = dj;
          stack.push_back(j);
        } else if (num[j] * dj != nj * den[j]) {
          throw NonFiniteType("Cartan matrix is not symmetrizable");
        }
      }
    }
  }
  long long scale = 1;
  for (int i = 0; i < n; ++i) scale = scale / llgcd(scale, den[i]) * den[i];
  std::vector<long long> d(n);
  for (int i = 0; i < n; ++i) d[i] = num[i] * (scale / den[i]);
  // Leading principal minors of D*C must all be positive (Sylvester).
  std::vector<long long> b(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[static_cast<size_t>(i) * n + j] = d[i] * c.at(i, j);
  for (int k = 1; k <= n; ++k) {
    std::vector<long long> sub(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub[static_cast<size_t>(i) * k + j] = b[static_cast<size_t>(i) * n + j];
    if (int_det(std::move(sub), k) <= 0)
      throw NonFiniteType("symmetrized Cartan matrix is not positive definite");
  }
}

bool DynkinDiagram::adjacent(int i, int j) const { return bond(i, j) > 0; }

int DynkinDiagram::bond(int i, int j) const {
  if (i > j) std::swap(i, j);
  for (const auto& e : edges_)
    if (e.a == i && e.b == j) return e.mult;
  return 0;
}

std::vector<int> DynkinDiagram::neighbors(int i) const {
  std::vector<int> out;
  for (const auto& e : edges_) {
    if (e.a == i) out.push_back(e.b);
    if (e.b == i) out.push_back(e.a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

DynkinDiagram DynkinDiagram::restrict_to(unsigned mask) const {
  std::vector<int> keep;
  for (int i = 0; i < rank_; ++i)
    if (mask & (1u << i)) keep.push_back(i);
  if (keep.empty()) throw InputError("restriction to empty node set");
  std::vector<int> newidx(rank_, -1);
  for (size_t k = 0; k < keep.size(); ++k) newidx[keep[k]] = static_cast<int>(k);
  std::vector<DynkinEdge> sub;
  for (const auto& e : edges_) {
    if (newidx[e.a] < 0 || newidx[e.b] < 0) continue;
    DynkinEdge f = e;
    f.a = newidx[e.a];
    f.b = newidx[e.b];
    if (f.short_node >= 0) f.short_node = newidx[f.short_node];
    sub.push_back(f);
  }
  return DynkinDiagram(static_cast<int>(keep.size()), std::move(sub));
}

std::string DynkinDiagram::text() const {
  if (!label_.empty()) return label_;
  std::ostringstream os;
  os << "rank=" << rank_;
  if (!edges_.empty()) {
    os << "; edges=";
    for (size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      if (i) os << ',';
      os << (e.a + 1) << '-' << (e.b + 1) << ':' << e.mult;
      if (e.mult > 1) os << (e.short_node == e.b ? '>' : '<');
    }
  }
  return os.str();
}

DynkinDiagram DynkinDiagram::parse(const std::string& text, int max_rank) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw InputError("empty diagram string");
  if (s.rfind("rank=", 0) == 0) return parse_explicit(s, max_rank);
  // Product form: LETTERdigits(xLETTERdigits)*
  std::vector<DynkinDiagram> factors;
  size_t pos = 0;
  while (pos < s.size()) {
    char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(s[pos])));
    ++pos;
    size_t st = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (st == pos) throw InputError("expected rank digits in '" + s + "'");
    factors.push_back(standard_type(letter, std::stoi(s.substr(st, pos - st))));
    if (pos < s.size()) {
      if (s[pos] != 'x' && s[pos] != 'X')
        throw InputError("expected 'x' between product factors in '" + s + "'");
      ++pos;
    }
  }
  int rank = 0;
  std::vector<DynkinEdge> edges;
  std::string label;
  for (size_t i = 0; i < factors.size(); ++i) {
    for (auto e : factors[i].edges()) {
      e.a += rank;
      e.b += rank;
      if (e.short_node >= 0) e.short_node += rank;
      edges.push_back(e);
    }
    rank += factors[i].rank();
    if (i) label += "x";
    label += factors[i].label();
  }
  if (rank > max_rank)
    throw SizeCapExceeded("rank " + std::to_string(rank) + " exceeds cap " +
                          std::to_string(max_rank));
  return DynkinDiagram(rank, std::move(edges), label);
}

CartanMatrix cartan_from_diagram(const DynkinDiagram& d) { return d.cartan(); }

}  // namespace tomei
