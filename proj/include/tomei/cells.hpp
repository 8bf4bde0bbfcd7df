#ifndef TOMEI_CELLS_HPP
#define TOMEI_CELLS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tomei/signs.hpp"
#include "tomei/sparse.hpp"
#include "tomei/weyl.hpp"

namespace tomei {

// Signed colored Dynkin diagram cell in canonical form:
//   eps has zeros exactly on A, A and S are disjoint node masks, and w is the
//   minimal-length representative of its coset w W_S.
struct Cell {
  SignVec eps;
  uint16_t A = 0;
  uint16_t S = 0;
  int32_t w = 0;

  bool operator==(const Cell& o) const {
    return A == o.A && S == o.S && w == o.w && eps == o.eps;
  }
  bool operator<(const Cell& o) const {
    if (A != o.A) return A < o.A;
    if (S != o.S) return S < o.S;
    if (w != o.w) return w < o.w;
    return eps < o.eps;
  }
};

struct CellHash {
  size_t operator()(const Cell& c) const {
    size_t h = 1469598103934665603ull;
    auto mix = [&h](size_t x) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(c.A);
    mix(c.S);
    mix(static_cast<size_t>(c.w));
    for (int i = 0; i < c.eps.size(); ++i) mix(static_cast<size_t>(c.eps[i] + 2));
    return h;
  }
};

// Sparse integer chain; all cells of one chain share a dimension.
using Chain = std::map<Cell, long long>;

void chain_add(Chain& ch, const Cell& c, long long coeff);
bool chain_is_zero(const Chain& ch);
bool chain_all_even(const Chain& ch);

// Result of reducing a raw (eps, A, S, w) label to canonical form. The
// transport runs on the +1-filled representative (A-coordinates carried as
// +1), so flip_parity records every coordinate the gluing chain negated an
// odd number of times, including the filled ones.
struct CanonRecord {
  Cell cell;
  int strips = 0;
  unsigned flip_parity = 0;
};

// Sign convention for the cellular boundary operator. The classical face
// signs leave the position convention and the orientation transport of the
// twisted gluings implicit; the calibration test selects the variant below
// and the shipped default is the selected one. p is the 1-based position of
// the face direction among the free roots in increasing index order.
struct FaceConvention {
  int ext_global = 1;       // overall sign of external faces
  bool ext_eps = true;      // factor eps_f on external faces
  int int_global = 1;       // overall sign of internal faces
  bool int_eps = false;     // factor eps_f on internal faces
  bool int_strips = false;  // factor (-1)^{#reduction steps}
  bool jA = false;          // transport flip parity over A (filled) coords
  bool jS = false;          // ... over the parent's S coords
  bool jf = false;          // ... over the face direction f itself
  bool jF = true;           // ... over the remaining free coords
  unsigned id() const {
    return (ext_global < 0 ? 1u : 0u) | (ext_eps ? 2u : 0u) | (int_global < 0 ? 4u : 0u) |
           (int_eps ? 8u : 0u) | (int_strips ? 16u : 0u) | (jA ? 32u : 0u) | (jS ? 64u : 0u) |
           (jf ? 128u : 0u) | (jF ? 256u : 0u);
  }
  static FaceConvention from_id(unsigned id) {
    FaceConvention c;
    c.ext_global = (id & 1u) ? -1 : 1;
    c.ext_eps = id & 2u;
    c.int_global = (id & 4u) ? -1 : 1;
    c.int_eps = id & 8u;
    c.int_strips = id & 16u;
    c.jA = id & 32u;
    c.jS = id & 64u;
    c.jf = id & 128u;
    c.jF = id & 256u;
    return c;
  }
};

// Default selected by the calibration scan (tests/test_complex.cpp asserts
// the selection).
FaceConvention default_face_convention();

// The twisted Tomei manifold M(delta) as a finite cell complex. Immutable
// after construction; all query methods are const and thread-safe.
class CellComplex {
 public:
  CellComplex(const WeylGroup& W, const Marking& marking,
              FaceConvention conv = default_face_convention(), size_t max_cells = 2000000,
              bool verify_d2 = true);

  const WeylGroup& weyl() const { return *W_; }
  const Marking& marking() const { return marking_; }
  int top_dim() const { return rank_; }
  const FaceConvention& convention() const { return conv_; }

  const std::vector<Cell>& cells(int dim) const { return cells_[dim]; }
  std::vector<long long> f_vector() const;
  long long euler_characteristic() const;

  // Index of a canonical cell within its dimension.
  int index_of(const Cell& c) const;

  // boundary(k): rows index (k-1)-cells, columns index k-cells, 1 <= k <= l.
  const SparseIntMat& boundary(int k) const { return boundary_[k]; }

  CanonRecord canonicalize(SignVec eps, unsigned A, unsigned S, int w) const;

  // The (j,t)-face of c, t in {1,2}: the external face (alpha_j joins A) sits
  // at the slot with eps_j = (-1)^{t+1}, the internal one (alpha_j joins S) at
  // eps_j = (-1)^t. Empty when alpha_j is not free in c. The sign is the
  // coefficient the face carries in the boundary of c.
  std::optional<std::pair<Cell, int>> face(const Cell& c, int j, int t) const;

  // Signed canonical faces of one cell, accumulated into `out` scaled by coeff.
  void cell_boundary(const Cell& c, Chain& out, long long coeff = 1) const;
  Chain boundary_of(const Chain& ch) const;

  // Gamma_eps: the top chain carried by the sign sheet eps.
  Chain gamma_chain(const SignVec& eps) const;

  // Unstable-manifold chain of the critical point labeled by w; degree equals
  // the index |Pi^u(w)|. Each term's sheet is the acted sign vector
  // sigma(eps), matching the sheet labels {w eps} of the Gamma chains.
  Chain unstable_chain(int w) const;

  // Closed-form boundary of the unstable chain (all coefficients even);
  // agrees with boundary_of(unstable_chain(w)) term by term.
  Chain unstable_boundary_explicit(int w) const;

  // Face closure of the unstable manifold's cells.
  std::vector<Cell> unstable_closure_cells(int w) const;

  Cell weyl_act(int sigma, const Cell& c) const;

  struct OrientationKernel {
    int rank = 0;
    std::vector<long long> generator;  // top-cell coefficients when rank == 1
    bool unit_coefficients = false;
  };
  OrientationKernel orientation_kernel() const;

  // Exact d(d(x)) = 0 check over Z; throws FaceConventionFailure on failure.
  void verify_d2() const;

 private:
  const WeylGroup* W_;
  Marking marking_;
  int rank_;
  FaceConvention conv_;
  std::vector<std::vector<Cell>> cells_;
  std::unordered_map<Cell, int, CellHash> index_;
  std::vector<SparseIntMat> boundary_;

  void enumerate(size_t max_cells);
  void build_boundaries();
  std::pair<Cell, int> external_face(const Cell& c, int f, int p) const;
  std::pair<Cell, int> internal_face(const Cell& c, int f, int p) const;
};

// Mod-2 Betti numbers of a face-closed set of cells of cx.
std::vector<int> betti_mod2_of_cells(const CellComplex& cx, const std::vector<Cell>& cells);

// Dimension of a canonical cell.
inline int cell_dim(const Cell& c, int rank) {
  return rank - __builtin_popcount(static_cast<unsigned>(c.A)) -
         __builtin_popcount(static_cast<unsigned>(c.S));
}

std::string cell_str(const CellComplex& cx, const Cell& c);

}  // namespace tomei

#endif
