#include "tomei/cells.hpp"

#include <algorithm>
#include <sstream>

#include "tomei/error.hpp"
#include "tomei/gf2.hpp"
#include "tomei/snf.hpp"

namespace tomei {

namespace {

int parity_sign(unsigned bits) { return __builtin_popcount(bits) % 2 ? -1 : 1; }

// Enumerate sign vectors with zeros exactly on `zero_mask`, ascending
// (all-plus first): bit b of `code` drives the b-th nonzero position.
SignVec sign_pattern(int l, unsigned zero_mask, unsigned code) {
  SignVec s;
  s.n = static_cast<int8_t>(l);
  int b = 0;
  for (int i = 0; i < l; ++i) {
    if (zero_mask & (1u << i)) {
      s.v[i] = 0;
    } else {
      s.v[i] = (code >> b) & 1 ? -1 : 1;
      ++b;
    }
  }
  return s;
}

}  // namespace

void chain_add(Chain& ch, const Cell& c, long long coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = ch.emplace(c, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) ch.erase(it);
  }
}

bool chain_is_zero(const Chain& ch) { return ch.empty(); }

bool chain_all_even(const Chain& ch) {
  for (const auto& [c, v] : ch)
    if (v % 2 != 0) return false;
  return true;
}

FaceConvention default_face_convention() {
  // Frozen by the calibration scan over all 512 variants (see the
  // "face convention calibration" test): external faces carry
  // (-1)^p eps_f, internal faces carry (-1)^{p+1} eps_f times the
  // orientation transport parity over the face's free directions.
  FaceConvention c;
  c.ext_global = -1;  // external faces: (-1)^p * eps_f
  c.ext_eps = true;
  c.int_global = 1;   // internal faces: (-1)^{p+1} * eps_f * transport parity
  c.int_eps = true;
  c.int_strips = false;
  c.jA = c.jS = c.jf = false;
  c.jF = true;
  return c;
}

CellComplex::CellComplex(const WeylGroup& W, const Marking& marking, FaceConvention conv,
                         size_t max_cells, bool verify)
    : W_(&W), marking_(marking), rank_(W.rank()), conv_(conv) {
  if (rank_ < 1) throw InputError("empty diagram has no cell complex");
  if (marking_.diagram().rank() != rank_)
    throw InputError("marking rank does not match Weyl group rank");
  // The glued complex exists only when the marking's flip maps satisfy the
  // Coxeter relations (otherwise the wall identifications are inconsistent).
  if (auto rel = verify_relations(marking_); !rel.ok)
    throw InvalidMarking("marking " + marking_.name() + " does not define a twisted sign action: " +
                         rel.failure);
  enumerate(max_cells);
  build_boundaries();
  if (verify) verify_d2();
}

void CellComplex::enumerate(size_t max_cells) {
  const int l = rank_;
  const unsigned full = (1u << l) - 1;
  // Count first so the cap rejects before allocation.
  size_t total = 0;
  for (unsigned A = 0; A <= full; ++A)
    for (unsigned S = 0; S <= full; ++S) {
      if (A & S) continue;
      total += (1ull << (l - __builtin_popcount(A))) * W_->min_coset_reps(S).size();
      if (total > max_cells)
        throw SizeCapExceeded("cell complex would exceed " + std::to_string(max_cells) +
                              " cells");
    }
  cells_.assign(l + 1, {});
  for (unsigned A = 0; A <= full; ++A) {
    for (unsigned S = 0; S <= full; ++S) {
      if (A & S) continue;
      int dim = l - __builtin_popcount(A) - __builtin_popcount(S);
      auto reps = W_->min_coset_reps(S);
      unsigned patterns = 1u << (l - __builtin_popcount(A));
      for (unsigned code = 0; code < patterns; ++code) {
        SignVec eps = sign_pattern(l, A, code);
        for (int w : reps) {
          Cell c;
          c.eps = eps;
          c.A = static_cast<uint16_t>(A);
          c.S = static_cast<uint16_t>(S);
          c.w = w;
          cells_[dim].push_back(c);
        }
      }
    }
  }
  for (int d = 0; d <= l; ++d)
    for (size_t i = 0; i < cells_[d].size(); ++i)
      index_.emplace(cells_[d][i], static_cast<int>(i));
}

int CellComplex::index_of(const Cell& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) throw InternalError("index_of: cell not in complex");
  return it->second;
}

CanonRecord CellComplex::canonicalize(SignVec eps, unsigned A, unsigned S, int w) const {
  const int l = rank_;
  if (A & S) throw InputError("canonicalize: A and S must be disjoint");
  CanonRecord rec;
  // Carry the A-coordinates as a +1 fill so the transport parity counts
  // flips there too.
  SignVec filled = eps;
  for (int i = 0; i < l; ++i) {
    if (A & (1u << i)) filled[i] = 1;
    else if (filled[i] == 0)
      throw InputError("canonicalize: zero entry off A");
  }
  bool moved = true;
  while (moved) {
    moved = false;
    for (int g = 0; g < l && !moved; ++g) {
      if (!(S & (1u << g))) continue;
      int next = W_->right(w, g);
      if (W_->length(next) < W_->length(w)) {
        if (filled[g] == -1) {
          unsigned flips = marking_.flip_mask(g);
          rec.flip_parity ^= flips;
          for (int j = 0; j < l; ++j)
            if (flips & (1u << j)) filled[j] = static_cast<int8_t>(-filled[j]);
        }
        w = next;
        ++rec.strips;
        moved = true;
      }
    }
  }
  for (int i = 0; i < l; ++i)
    if (A & (1u << i)) filled[i] = 0;
  rec.cell.eps = filled;
  rec.cell.A = static_cast<uint16_t>(A);
  rec.cell.S = static_cast<uint16_t>(S);
  rec.cell.w = w;
  return rec;
}

std::pair<Cell, int> CellComplex::external_face(const Cell& c, int f, int p) const {
  Cell e = c;
  e.eps[f] = 0;
  e.A = static_cast<uint16_t>(c.A | (1u << f));
  int s = conv_.ext_global * ((p % 2 == 1) ? 1 : -1);
  if (conv_.ext_eps) s *= c.eps[f];
  return {e, s};
}

std::pair<Cell, int> CellComplex::internal_face(const Cell& c, int f, int p) const {
  // Push f into S, reduce to the minimal coset representative, and transport
  // eps along the gluing chain.
  CanonRecord r = canonicalize(c.eps, c.A, c.S | (1u << f), c.w);
  int s = conv_.int_global * ((p % 2 == 1) ? 1 : -1);
  if (conv_.int_eps) s *= c.eps[f];
  if (conv_.int_strips && (r.strips % 2)) s = -s;
  const unsigned full = (1u << rank_) - 1;
  const unsigned free = full & ~(c.A | c.S);
  unsigned jmask = 0;
  if (conv_.jA) jmask |= c.A;
  if (conv_.jS) jmask |= c.S;
  if (conv_.jf) jmask |= 1u << f;
  if (conv_.jF) jmask |= free & ~(1u << f);
  s *= parity_sign(r.flip_parity & jmask);
  return {r.cell, s};
}

std::optional<std::pair<Cell, int>> CellComplex::face(const Cell& c, int j, int t) const {
  if (t != 1 && t != 2) throw InputError("face: slot must be 1 or 2");
  const unsigned free = ((1u << rank_) - 1) & ~(c.A | c.S);
  if (j < 0 || j >= rank_ || !(free & (1u << j))) return std::nullopt;
  int p = 0;
  for (int f = 0; f <= j; ++f)
    if (free & (1u << f)) ++p;
  const int slot_sign = (t == 1) ? 1 : -1;  // (-1)^{t+1}
  if (c.eps[j] == slot_sign) return external_face(c, j, p);
  return internal_face(c, j, p);
}

void CellComplex::cell_boundary(const Cell& c, Chain& out, long long coeff) const {
  const unsigned free = ((1u << rank_) - 1) & ~(c.A | c.S);
  int p = 0;
  for (int f = 0; f < rank_; ++f) {
    if (!(free & (1u << f))) continue;
    ++p;  // 1-based position among free roots
    auto [ec, es] = external_face(c, f, p);
    chain_add(out, ec, coeff * es);
    auto [ic, is] = internal_face(c, f, p);
    chain_add(out, ic, coeff * is);
  }
}

void CellComplex::build_boundaries() {
  const int l = rank_;
  boundary_.clear();
  boundary_.emplace_back(0, static_cast<int>(cells_[0].size()));  // unused slot, k = 0
  for (int k = 1; k <= l; ++k) {
    SparseIntMat m(static_cast<int>(cells_[k - 1].size()), static_cast<int>(cells_[k].size()));
    for (size_t j = 0; j < cells_[k].size(); ++j) {
      Chain faces;
      cell_boundary(cells_[k][j], faces, 1);
      for (const auto& [cell, v] : faces) m.add(index_of(cell), static_cast<int>(j), v);
    }
    boundary_.push_back(std::move(m));
  }
}

Chain CellComplex::boundary_of(const Chain& ch) const {
  Chain out;
  for (const auto& [c, v] : ch) cell_boundary(c, out, v);
  return out;
}

void CellComplex::verify_d2() const {
  for (int k = 2; k <= rank_; ++k) {
    SparseIntMat prod = SparseIntMat::multiply(boundary_[k - 1], boundary_[k]);
    if (!prod.is_zero())
      throw FaceConventionFailure("d_" + std::to_string(k - 1) + " o d_" + std::to_string(k) +
                                  " != 0 for marking " + marking_.name() + " (convention " +
                                  std::to_string(conv_.id()) + ")");
  }
}

std::vector<long long> CellComplex::f_vector() const {
  std::vector<long long> f;
  for (const auto& cs : cells_) f.push_back(static_cast<long long>(cs.size()));
  return f;
}

long long CellComplex::euler_characteristic() const {
  long long chi = 0;
  int sign = 1;
  for (const auto& cs : cells_) {
    chi += sign * static_cast<long long>(cs.size());
    sign = -sign;
  }
  return chi;
}

Chain CellComplex::gamma_chain(const SignVec& eps) const {
  for (int i = 0; i < rank_; ++i)
    if (eps[i] == 0) throw InputError("gamma_chain: eps must have no zeros");
  Chain ch;
  for (int w = 0; w < W_->size(); ++w) {
    SignVec weps = marking_.act_word(*W_, w, eps);
    long long coeff = (W_->length(w) % 2) ? -1 : 1;
    for (int k = 0; k < rank_; ++k) coeff *= eps[k] * weps[k];
    Cell c;
    c.eps = weps;
    c.A = 0;
    c.S = 0;
    c.w = W_->inverse(w);
    chain_add(ch, c, coeff);
  }
  return ch;
}

Chain CellComplex::unstable_chain(int w) const {
  const unsigned Pu = W_->unstable_support(w);
  const unsigned Ps = ((1u << rank_) - 1) & ~Pu;
  Chain ch;
  for (int sigma : W_->parabolic_elements(Pu)) {
    const int lsign = ((W_->length(sigma) + W_->length(w)) % 2) ? -1 : 1;
    const unsigned patterns = 1u << __builtin_popcount(Pu);
    for (unsigned code = 0; code < patterns; ++code) {
      SignVec eps = sign_pattern(rank_, Ps, code);
      SignVec seps = marking_.act_word(*W_, sigma, eps);
      long long coeff = lsign;
      for (int k = 0; k < rank_; ++k)
        if (Pu & (1u << k)) coeff *= eps[k] * seps[k];
      Cell c;
      c.eps = seps;
      c.A = static_cast<uint16_t>(Ps);
      c.S = 0;
      c.w = W_->inverse(W_->multiply(sigma, w));
      chain_add(ch, c, coeff);
    }
  }
  return ch;
}

Chain CellComplex::unstable_boundary_explicit(int w) const {
  const unsigned Pu = W_->unstable_support(w);
  const unsigned Ps = ((1u << rank_) - 1) & ~Pu;
  Chain ch;
  const long long outer = ((W_->length(w) + 1) % 2) ? -1 : 1;  // (-1)^{l(w)+1}
  for (int sigma : W_->parabolic_elements(Pu)) {
    int p = 0;
    for (int r = 0; r < rank_; ++r) {
      if (!(Pu & (1u << r))) continue;
      ++p;  // 1-based position of alpha_r inside Pi^u(w)
      const unsigned zero_mask = Ps | (1u << r);
      const unsigned patterns = 1u << (rank_ - __builtin_popcount(zero_mask));
      for (unsigned code = 0; code < patterns; ++code) {
        SignVec eps = sign_pattern(rank_, zero_mask, code);
        SignVec minus = eps, plus = eps;
        minus[r] = -1;
        plus[r] = 1;
        const int act = W_->inverse(sigma);
        SignVec sminus = marking_.act_word(*W_, act, minus);
        SignVec splus = marking_.act_word(*W_, act, plus);
        int cond = 1;
        for (int j = 0; j < rank_; ++j)
          if (Pu & (1u << j)) cond *= sminus[j] * splus[j];
        if (cond != 1) continue;
        long long mu = ((W_->length(sigma) + p) % 2) ? -1 : 1;
        for (int j = 0; j < rank_; ++j)
          if (Pu & (1u << j)) mu *= minus[j] * sminus[j];
        Cell c;
        c.eps = eps;
        c.A = static_cast<uint16_t>(zero_mask);
        c.S = 0;
        c.w = W_->inverse(W_->multiply(sigma, w));
        chain_add(ch, c, 2 * outer * mu);
      }
    }
  }
  return ch;
}

std::vector<Cell> CellComplex::unstable_closure_cells(int w) const {
  const unsigned Pu = W_->unstable_support(w);
  const unsigned full = (1u << rank_) - 1;
  const unsigned Ps = full & ~Pu;
  std::unordered_map<Cell, char, CellHash> seen;
  std::vector<Cell> queue;

  auto push = [&](const Cell& c) {
    if (seen.emplace(c, 1).second) queue.push_back(c);
  };

  for (int sigma : W_->parabolic_elements(Pu)) {
    int u = W_->inverse(W_->multiply(sigma, w));
    unsigned extra = Pu;
    // All B with Ps ⊆ B, i.e. B = Ps | sub for sub ⊆ Pu.
    unsigned sub = 0;
    while (true) {
      unsigned B = Ps | sub;
      unsigned patterns = 1u << (rank_ - __builtin_popcount(B));
      for (unsigned code = 0; code < patterns; ++code) {
        Cell c;
        c.eps = sign_pattern(rank_, B, code);
        c.A = static_cast<uint16_t>(B);
        c.S = 0;
        c.w = u;
        push(c);
      }
      if (sub == extra) break;
      sub = (sub - extra) & extra;  // next submask
    }
  }
  // Close under faces.
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    Cell c = queue[qi];
    Chain faces;
    cell_boundary(c, faces, 1);
    for (const auto& [cell, v] : faces) push(cell);
    // Faces whose signed coefficient vanished still bound the cell; walk
    // them explicitly so the closure is face-complete regardless of signs.
    const unsigned free = full & ~(c.A | c.S);
    for (int f = 0; f < rank_; ++f) {
      if (!(free & (1u << f))) continue;
      Cell e = c;
      e.eps[f] = 0;
      e.A = static_cast<uint16_t>(c.A | (1u << f));
      push(e);
      push(canonicalize(c.eps, c.A, c.S | (1u << f), c.w).cell);
    }
  }
  std::vector<Cell> out(queue.begin(), queue.end());
  std::sort(out.begin(), out.end());
  return out;
}

Cell CellComplex::weyl_act(int sigma, const Cell& c) const {
  return canonicalize(c.eps, c.A, c.S, W_->multiply(sigma, c.w)).cell;
}

CellComplex::OrientationKernel CellComplex::orientation_kernel() const {
  OrientationKernel out;
  IntegerKernel k = integer_kernel(boundary_[rank_]);
  out.rank = k.rank;
  if (k.rank == 1) {
    out.generator = k.basis[0];
    out.unit_coefficients = true;
    for (long long v : out.generator)
      if (v != 1 && v != -1) out.unit_coefficients = false;
  }
  return out;
}

std::vector<int> betti_mod2_of_cells(const CellComplex& cx, const std::vector<Cell>& cells) {
  const int l = cx.top_dim();
  std::vector<std::unordered_map<Cell, int, CellHash>> idx(l + 1);
  std::vector<std::vector<Cell>> by_dim(l + 1);
  for (const auto& c : cells) {
    int d = cell_dim(c, l);
    idx[d].emplace(c, static_cast<int>(by_dim[d].size()));
    by_dim[d].push_back(c);
  }
  int top = 0;
  for (int d = 0; d <= l; ++d)
    if (!by_dim[d].empty()) top = d;
  std::vector<int> rk(top + 2, 0);
  for (int k = 1; k <= top; ++k) {
    GF2Mat m(static_cast<int>(by_dim[k - 1].size()), static_cast<int>(by_dim[k].size()));
    for (size_t j = 0; j < by_dim[k].size(); ++j) {
      Chain faces;
      cx.cell_boundary(by_dim[k][j], faces, 1);
      for (const auto& [cell, v] : faces) {
        if (v % 2 == 0) continue;
        auto it = idx[k - 1].find(cell);
        if (it == idx[k - 1].end())
          throw InternalError("betti_mod2_of_cells: cell set is not face-closed");
        m.set(it->second, static_cast<int>(j));
      }
    }
    rk[k] = m.rank();
  }
  std::vector<int> betti(top + 1, 0);
  for (int k = 0; k <= top; ++k)
    betti[k] = static_cast<int>(by_dim[k].size()) - rk[k] - rk[k + 1];
  return betti;
}

std::string cell_str(const CellComplex& cx, const Cell& c) {
  std::ostringstream os;
  os << '(' << c.eps.str() << ";A=";
  for (int i = 0; i < cx.top_dim(); ++i)
    if (c.A & (1u << i)) os << (i + 1);
  os << ";S=";
  for (int i = 0; i < cx.top_dim(); ++i)
    if (c.S & (1u << i)) os << (i + 1);
  os << ";w=";
  const auto& word = cx.weyl().reduced_word(c.w);
  if (word.empty()) os << 'e';
  for (size_t i = 0; i < word.size(); ++i) {
    if (i) os << '.';
    os << 's' << (word[i] + 1);
  }
  os << ')';
  return os.str();
}

}  // namespace tomei
