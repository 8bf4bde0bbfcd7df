#include "tomei/signs.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "tomei/error.hpp"

namespace tomei {

namespace {

SignVec unpack(int bits, int l) {
  SignVec s;
  s.n = static_cast<int8_t>(l);
  for (int i = 0; i < l; ++i) s.v[i] = (bits >> i) & 1 ? -1 : 1;
  return s;
}

void act_by_mask(unsigned flip, int gen, SignVec& eps) {
  if (eps[gen] != -1) return;
  for (int j = 0; j < eps.size(); ++j)
    if (flip & (1u << j)) eps[j] = static_cast<int8_t>(-eps[j]);
}

std::string edge_name(const DynkinEdge& e) {
  return std::to_string(e.a + 1) + "-" + std::to_string(e.b + 1);
}

}  // namespace

Marking::Marking(const DynkinDiagram& d, std::vector<std::pair<int8_t, int8_t>> edge_signs)
    : diagram_(d), edge_signs_(std::move(edge_signs)) {
  if (d.rank() > kMaxRank) throw SizeCapExceeded("rank exceeds sign-vector capacity");
  if (edge_signs_.size() != d.edges().size())
    throw InvalidMarking("expected one sign pair per edge");
  for (size_t k = 0; k < edge_signs_.size(); ++k) {
    const auto& e = d.edges()[k];
    auto [sij, sji] = edge_signs_[k];
    if ((sij != 1 && sij != -1) || (sji != 1 && sji != -1))
      throw InvalidMarking("signs must be +1 or -1 on edge " + edge_name(e));
    if (e.mult == 1 && sij != sji)
      throw InvalidMarking("single edge " + edge_name(e) + " must carry one sign");
    if (e.mult == 2 && sij == -1 && sji == -1)
      throw InvalidMarking("double edge " + edge_name(e) + " cannot be marked (-,-)");
  }
  build_flips();
}

void Marking::build_flips() {
  flips_.fill(0);
  const auto& edges = diagram_.edges();
  for (size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    if (edge_signs_[k].first == -1) flips_[e.a] |= 1u << e.b;   // s_a flips eps_b
    if (edge_signs_[k].second == -1) flips_[e.b] |= 1u << e.a;  // s_b flips eps_a
  }
}

Marking Marking::trivial(const DynkinDiagram& d) {
  return Marking(d, std::vector<std::pair<int8_t, int8_t>>(d.edges().size(), {1, 1}));
}

Marking Marking::standard(const DynkinDiagram& d) {
  CartanMatrix c = d.cartan();
  std::vector<std::pair<int8_t, int8_t>> signs;
  for (const auto& e : d.edges()) {
    // Standard action: eps_j -> eps_j * eps_i^{-C_{j,i}}, so the flip parity
    // of s_a on eps_b is C_{b,a} mod 2.
    int8_t sab = (c.at(e.b, e.a) % 2 != 0) ? -1 : 1;
    int8_t sba = (c.at(e.a, e.b) % 2 != 0) ? -1 : 1;
    signs.push_back({sab, sba});
  }
  return Marking(d, std::move(signs));
}

Marking Marking::parse(const DynkinDiagram& d, const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty() || s == "trivial") return trivial(d);
  if (s == "standard") return standard(d);
  std::vector<std::pair<int8_t, int8_t>> signs(d.edges().size(), {0, 0});
  std::istringstream is(s);
  std::string item;
  size_t count = 0;
  while (std::getline(is, item, ';')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos || item[0] != 'e')
      throw InvalidMarking("expected eK=SIGNS, got '" + item + "'");
    size_t k = 0;
    try {
      k = std::stoul(item.substr(1, eq - 1));
    } catch (...) {
      throw InvalidMarking("bad edge number in '" + item + "'");
    }
    if (k < 1 || k > d.edges().size())
      throw InvalidMarking("edge index out of range in '" + item + "'");
    const auto& e = d.edges()[k - 1];
    std::string val = item.substr(eq + 1);
    auto sign_of = [&](char c) -> int8_t {
      if (c == '+') return 1;
      if (c == '-') return -1;
      throw InvalidMarking("bad sign character in '" + item + "'");
    };
    if (e.mult == 1) {
      if (val.size() != 1)
        throw InvalidMarking("single edge e" + std::to_string(k) + " takes one sign");
      signs[k - 1] = {sign_of(val[0]), sign_of(val[0])};
    } else {
      if (val.size() != 2)
        throw InvalidMarking("multiple edge e" + std::to_string(k) + " takes two signs");
      signs[k - 1] = {sign_of(val[0]), sign_of(val[1])};
    }
    ++count;
  }
  if (count != d.edges().size())
    throw InvalidMarking("marking must assign all " + std::to_string(d.edges().size()) +
                         " edges");
  return Marking(d, std::move(signs));
}

bool Marking::positively_marked() const {
  for (const auto& [a, b] : edge_signs_)
    if (a == -1 || b == -1) return false;
  return true;
}

bool Marking::is_standard() const {
  CartanMatrix c = diagram_.cartan();
  const auto& edges = diagram_.edges();
  for (size_t k = 0; k < edges.size(); ++k) {
    const auto& e = edges[k];
    int8_t sab = (c.at(e.b, e.a) % 2 != 0) ? -1 : 1;
    int8_t sba = (c.at(e.a, e.b) % 2 != 0) ? -1 : 1;
    if (edge_signs_[k] != std::pair(sab, sba)) return false;
  }
  return true;
}

std::string Marking::text() const {
  std::ostringstream os;
  const auto& edges = diagram_.edges();
  for (size_t k = 0; k < edges.size(); ++k) {
    if (k) os << ';';
    os << 'e' << (k + 1) << '=';
    os << (edge_signs_[k].first > 0 ? '+' : '-');
    if (edges[k].mult > 1) os << (edge_signs_[k].second > 0 ? '+' : '-');
  }
  return os.str();
}

std::string Marking::name() const {
  if (positively_marked()) return "trivial";
  if (is_standard()) return "standard";
  return text();
}

Marking Marking::restrict_to(unsigned mask) const {
  DynkinDiagram sub = diagram_.restrict_to(mask);
  std::vector<std::pair<int8_t, int8_t>> signs;
  const auto& edges = diagram_.edges();
  for (size_t k = 0; k < edges.size(); ++k) {
    if ((mask & (1u << edges[k].a)) && (mask & (1u << edges[k].b)))
      signs.push_back(edge_signs_[k]);
  }
  return Marking(sub, std::move(signs));
}

void Marking::act_generator(int gen, SignVec& eps) const { act_by_mask(flips_[gen], gen, eps); }

SignVec Marking::act_word(const WeylGroup& W, int w, SignVec eps) const {
  const auto& word = W.reduced_word(w);
  for (auto it = word.rbegin(); it != word.rend(); ++it) act_generator(*it, eps);
  return eps;
}

SignVec SignVec::parse(const std::string& s) {
  if (s.size() > kMaxRank) throw SizeCapExceeded("sign vector longer than capacity");
  SignVec v;
  v.n = static_cast<int8_t>(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+') v.v[i] = 1;
    else if (s[i] == '-') v.v[i] = -1;
    else if (s[i] == '0') v.v[i] = 0;
    else throw InputError("bad sign character '" + std::string(1, s[i]) + "'");
  }
  return v;
}

SignVec sign_product(const SignVec& a, const SignVec& b) {
  SignVec r;
  r.n = a.n;
  for (int i = 0; i < a.n; ++i) r.v[i] = static_cast<int8_t>(a.v[i] * b.v[i]);
  return r;
}

RelationReport verify_relations_raw(const DynkinDiagram& d,
                                    const std::array<unsigned, kMaxRank>& flips) {
  const int l = d.rank();
  CartanMatrix c = d.cartan();
  RelationReport rep;
  for (int bits = 0; bits < (1 << l); ++bits) {
    SignVec eps = unpack(bits, l);
    for (int i = 0; i < l; ++i) {
      SignVec t = eps;
      act_by_mask(flips[i], i, t);
      act_by_mask(flips[i], i, t);
      if (!(t == eps)) {
        rep.ok = false;
        rep.failure = "s_" + std::to_string(i + 1) + "^2 != id at " + eps.str();
        return rep;
      }
      // Automorphism w.r.t. the componentwise product.
      for (int bits2 = 0; bits2 < (1 << l); ++bits2) {
        SignVec e2 = unpack(bits2, l);
        SignVec lhs = sign_product(eps, e2);
        act_by_mask(flips[i], i, lhs);
        SignVec r1 = eps, r2 = e2;
        act_by_mask(flips[i], i, r1);
        act_by_mask(flips[i], i, r2);
        if (!(lhs == sign_product(r1, r2))) {
          rep.ok = false;
          rep.failure = "s_" + std::to_string(i + 1) + " is not an automorphism at " +
                        eps.str() + "," + e2.str();
          return rep;
        }
      }
      for (int j = i + 1; j < l; ++j) {
        int mij = c.coxeter_m(i, j);
        SignVec t2 = eps;
        for (int k = 0; k < mij; ++k) {
          act_by_mask(flips[j], j, t2);
          act_by_mask(flips[i], i, t2);
        }
        if (!(t2 == eps)) {
          rep.ok = false;
          rep.failure = "(s_" + std::to_string(i + 1) + " s_" + std::to_string(j + 1) + ")^" +
                        std::to_string(mij) + " != id at " + eps.str();
        return rep;
        }
      }
    }
  }
  return rep;
}

RelationReport verify_relations(const Marking& m) {
  std::array<unsigned, kMaxRank> flips{};
  for (int i = 0; i < m.diagram().rank(); ++i) flips[i] = m.flip_mask(i);
  return verify_relations_raw(m.diagram(), flips);
}

std::vector<Marking> enumerate_markings(const DynkinDiagram& d) {
  static const std::vector<std::pair<int8_t, int8_t>> kSingle = {{1, 1}, {-1, -1}};
  static const std::vector<std::pair<int8_t, int8_t>> kDouble = {{1, 1}, {1, -1}, {-1, 1}};
  static const std::vector<std::pair<int8_t, int8_t>> kTriple = {
      {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  const auto& edges = d.edges();
  std::vector<Marking> out;
  std::vector<std::pair<int8_t, int8_t>> cur(edges.size());
  auto options = [&](size_t k) -> const std::vector<std::pair<int8_t, int8_t>>& {
    switch (edges[k].mult) {
      case 1: return kSingle;
      case 2: return kDouble;
      default: return kTriple;
    }
  };
  // Lexicographic product over edges in canonical order.
  std::vector<size_t> pos(edges.size(), 0);
  while (true) {
    for (size_t k = 0; k < edges.size(); ++k) cur[k] = options(k)[pos[k]];
    out.emplace_back(d, cur);
    size_t k = edges.size();
    while (k > 0) {
      --k;
      if (++pos[k] < options(k).size()) break;
      pos[k] = 0;
      if (k == 0) return out;
    }
    if (edges.empty()) return out;
  }
}

std::vector<std::array<unsigned, kMaxRank>> classify_parity_matrices(const DynkinDiagram& d) {
  const int l = d.rank();
  if (l > 4) throw SizeCapExceeded("classify_parity_matrices: rank must be <= 4");
  const int slots = l * (l - 1);
  std::vector<std::pair<int, int>> slot_index;  // (target j, generator i)
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j)
      if (i != j) slot_index.push_back({j, i});

  std::vector<std::array<unsigned, kMaxRank>> survivors;
  for (long long bits = 0; bits < (1ll << slots); ++bits) {
    std::array<unsigned, kMaxRank> flips{};
    for (int s = 0; s < slots; ++s)
      if ((bits >> s) & 1) flips[slot_index[s].second] |= 1u << slot_index[s].first;

    if (verify_relations_raw(d, flips).ok) survivors.push_back(flips);
  }
  std::sort(survivors.begin(), survivors.end());
  survivors.erase(std::unique(survivors.begin(), survivors.end()), survivors.end());
  return survivors;
}

}  // namespace tomei
