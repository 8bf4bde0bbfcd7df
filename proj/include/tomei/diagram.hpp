#ifndef TOMEI_DIAGRAM_HPP
#define TOMEI_DIAGRAM_HPP

#include <optional>
#include <string>
#include <vector>

namespace tomei {

// l x l Cartan matrix, row-major. C[i][j] = <alpha_i, alpha_j^vee>.
struct CartanMatrix {
  int rank = 0;
  std::vector<int> entries;

  int at(int i, int j) const { return entries[static_cast<size_t>(i) * rank + j]; }
  int& at(int i, int j) { return entries[static_cast<size_t>(i) * rank + j]; }

  // Coxeter exponent m_ij from the bond: 2, 3, 4, 6 for C_ij*C_ji = 0, 1, 2, 3.
  int coxeter_m(int i, int j) const;
};

struct DynkinEdge {
  int a = 0, b = 0;    // a < b, 0-based node indices
  int mult = 1;        // bond multiplicity, 1..3
  int short_node = -1; // for mult > 1: the node carrying the shorter root
};

// Finite-type Dynkin diagram (products of irreducible types allowed).
class DynkinDiagram {
 public:
  DynkinDiagram(int rank, std::vector<DynkinEdge> edges, std::string label = "");

  // Compact text forms: "A3", "B2", "G2", "A2xA1", or an explicit edge list
  // "rank=3; edges=1-2:1,2-3:2>" where :m is bond multiplicity and the arrow
  // points toward the shorter root. Throws InputError / NonFiniteType.
  static DynkinDiagram parse(const std::string& text, int max_rank = kDefaultMaxRank);

  int rank() const { return rank_; }
  const std::vector<DynkinEdge>& edges() const { return edges_; }
  const std::string& label() const { return label_; }

  CartanMatrix cartan() const;

  bool adjacent(int i, int j) const;
  // Edge multiplicity between i and j (0 if not adjacent).
  int bond(int i, int j) const;
  std::vector<int> neighbors(int i) const;

  // Restriction to a subset of nodes (bitmask), nodes renumbered in
  // ascending order. Used for Levi subdiagrams.
  DynkinDiagram restrict_to(unsigned mask) const;

  std::string text() const;

  static constexpr int kDefaultMaxRank = 6;

 private:
  int rank_;
  std::vector<DynkinEdge> edges_;
  std::string label_;

  void validate_finite_type() const;
};

// Free-function form of DynkinDiagram::cartan; validates finite type.
CartanMatrix cartan_from_diagram(const DynkinDiagram& d);

}  // namespace tomei

#endif
