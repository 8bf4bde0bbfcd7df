#ifndef TOMEI_SIGNS_HPP
#define TOMEI_SIGNS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tomei/diagram.hpp"
#include "tomei/weyl.hpp"

namespace tomei {

constexpr int kMaxRank = 8;

// Sign vector in {+1,-1,0}^l; zeros mark the coordinates collapsed by the
// external walls of a cell (the set A).
struct SignVec {
  std::array<int8_t, kMaxRank> v{};
  int8_t n = 0;

  static SignVec all_plus(int l) {
    SignVec s;
    s.n = static_cast<int8_t>(l);
    for (int i = 0; i < l; ++i) s.v[i] = 1;
    return s;
  }
  int size() const { return n; }
  int8_t operator[](int i) const { return v[i]; }
  int8_t& operator[](int i) { return v[i]; }
  unsigned zero_mask() const {
    unsigned m = 0;
    for (int i = 0; i < n; ++i)
      if (v[i] == 0) m |= 1u << i;
    return m;
  }
  bool operator==(const SignVec& o) const { return n == o.n && v == o.v; }
  bool operator<(const SignVec& o) const {
    if (n != o.n) return n < o.n;
    return v < o.v;
  }
  std::string str() const {  // e.g. "+-0"
    std::string s;
    for (int i = 0; i < n; ++i) s += v[i] > 0 ? '+' : (v[i] < 0 ? '-' : '0');
    return s;
  }
  static SignVec parse(const std::string& s);
};

// Marked Dynkin diagram: one ordered sign pair per edge, in canonical edge
// order. For edge {i,j} with i<j, first controls whether s_i flips eps_j,
// second whether s_j flips eps_i. Owns a copy of the diagram.
class Marking {
 public:
  Marking(const DynkinDiagram& d, std::vector<std::pair<int8_t, int8_t>> edge_signs);

  static Marking trivial(const DynkinDiagram& d);
  static Marking standard(const DynkinDiagram& d);
  // "trivial" | "standard" | "e1=-;e2=+-" (explicit per-edge, canonical order).
  static Marking parse(const DynkinDiagram& d, const std::string& text);

  const DynkinDiagram& diagram() const { return diagram_; }
  const std::vector<std::pair<int8_t, int8_t>>& edge_signs() const { return edge_signs_; }

  bool positively_marked() const;
  bool is_standard() const;  // signs realizable by Cartan parities
  std::string text() const;  // explicit grammar form
  std::string name() const;  // "trivial" / "standard" when applicable, else text()

  // Flip set of generator i as a bitmask: the coordinates s_i negates when
  // eps_i = -1.
  unsigned flip_mask(int i) const { return flips_[i]; }

  // Restriction of the marking to a node subset (Levi subdiagram).
  Marking restrict_to(unsigned mask) const;

  void act_generator(int gen, SignVec& eps) const;
  SignVec act_generator_copy(int gen, SignVec eps) const {
    act_generator(gen, eps);
    return eps;
  }
  // Action of a group element along its reduced word (leftmost letter applied last).
  SignVec act_word(const WeylGroup& W, int w, SignVec eps) const;

 private:
  DynkinDiagram diagram_;
  std::vector<std::pair<int8_t, int8_t>> edge_signs_;
  std::array<unsigned, kMaxRank> flips_{};

  void build_flips();
};

// Componentwise product, the group law on {+-1}^l.
SignVec sign_product(const SignVec& a, const SignVec& b);

struct RelationReport {
  bool ok = true;
  std::string failure;  // first violated relation, with witness
};

// Exhaustively checks s_i^2 = id, (s_i s_j)^{m_ij} = id and the
// automorphism property over all 2^l sign vectors.
RelationReport verify_relations(const Marking& m);

// Same check on a raw flip-set table (T_i as bitmasks), without the marked-
// diagram constraints; this is what the parity-matrix oracle filters with.
RelationReport verify_relations_raw(const DynkinDiagram& d,
                                    const std::array<unsigned, kMaxRank>& flips);

// All valid markings of d, in deterministic (edge-lexicographic) order.
std::vector<Marking> enumerate_markings(const DynkinDiagram& d);

// Brute-force oracle over parity matrices a_ij mod 2 (a_ii even): keeps the
// induced maps satisfying all Coxeter relations on {+-1}^l. Returns the
// distinct surviving flip-set tables. Requires rank <= 4.
std::vector<std::array<unsigned, kMaxRank>> classify_parity_matrices(const DynkinDiagram& d);

}  // namespace tomei

#endif
