#include "tomei/homology.hpp"

#include <algorithm>
#include <sstream>

#include "tomei/error.hpp"
#include "tomei/gf2.hpp"

namespace tomei {

namespace {

std::string mask_str(unsigned m, int l) {
  std::string s;
  for (int i = 0; i < l; ++i)
    if (m & (1u << i)) s += std::to_string(i + 1);
  return s.empty() ? "-" : s;
}

int even_torsion_count(const std::vector<TorsionFactor>& t) {
  int n = 0;
  for (const auto& f : t)
    if (f.value % 2 == 0) ++n;
  return n;
}

}  // namespace

TorsionFactor factor_torsion(long long n) {
  TorsionFactor out;
  out.value = n;
  long long m = n;
  for (long long p = 2; p <= 1000000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.prime_powers.push_back({p, e});
  }
  if (m > 1) {
    if (m <= 1000000LL * 1000000LL && m > 1) {
      // Remaining cofactor is prime (no divisor below its square root).
      out.prime_powers.push_back({m, 1});
    } else {
      out.fully_factored = false;
    }
  }
  return out;
}

bool HomologyResult::torsion_free() const {
  for (const auto& t : torsion)
    if (!t.empty()) return false;
  return true;
}

bool HomologyResult::universal_coefficients_consistent() const {
  for (size_t k = 0; k < betti_mod2.size(); ++k) {
    long long expect = free_rank[k] + even_torsion_count(torsion[k]) +
                       (k > 0 ? even_torsion_count(torsion[k - 1]) : 0);
    if (betti_mod2[k] != expect) return false;
  }
  return true;
}

long long HomologyResult::euler_from_f() const {
  long long chi = 0;
  int s = 1;
  for (long long x : f) {
    chi += s * x;
    s = -s;
  }
  return chi;
}

long long HomologyResult::euler_from_betti_mod2() const {
  long long chi = 0;
  int s = 1;
  for (int x : betti_mod2) {
    chi += s * x;
    s = -s;
  }
  return chi;
}

HomologyResult homology_of(const CellComplex& cx) {
  const int l = cx.top_dim();
  HomologyResult out;
  out.f = cx.f_vector();
  out.boundary_rank.assign(l + 2, 0);
  std::vector<int> rank2(l + 2, 0);
  std::vector<SmithDecomposition> snf(l + 1);
  for (int k = 1; k <= l; ++k) {
    snf[k] = smith_invariants(cx.boundary(k));
    out.boundary_rank[k] = snf[k].rank();
    rank2[k] = rank_mod2(cx.boundary(k));
  }
  out.betti_mod2.assign(l + 1, 0);
  out.free_rank.assign(l + 1, 0);
  out.torsion.assign(l + 1, {});
  for (int k = 0; k <= l; ++k) {
    out.betti_mod2[k] = static_cast<int>(out.f[k]) - rank2[k] - rank2[k + 1];
    out.free_rank[k] = out.f[k] - out.boundary_rank[k] - out.boundary_rank[k + 1];
    if (k < l)
      for (long long d : snf[k + 1].factors)
        if (d > 1) out.torsion[k].push_back(factor_torsion(d));
  }
  return out;
}

TheoremReport check_theorems(const CellComplex& cx) {
  const WeylGroup& W = cx.weyl();
  const Marking& m = cx.marking();
  const int l = cx.top_dim();
  TheoremReport rep;
  rep.homology = homology_of(cx);
  rep.index_counts = W.index_counts();

  auto add = [&rep](const std::string& name, bool pass, const std::string& detail) {
    rep.checks.push_back({name, pass, detail});
  };

  // Mod-2 Betti numbers equal the index counts e(k).
  {
    bool ok = true;
    std::ostringstream os;
    for (int k = 0; k <= l; ++k) {
      if (rep.homology.betti_mod2[k] != rep.index_counts[k]) {
        ok = false;
        os << "k=" << k << ": " << rep.homology.betti_mod2[k] << " != " << rep.index_counts[k]
           << "; ";
      }
    }
    add("mod2_betti_equal_index_counts", ok, os.str());
  }

  // Positively marked => integral homology free of rank e(k).
  if (m.positively_marked()) {
    bool ok = rep.homology.torsion_free();
    std::ostringstream os;
    for (int k = 0; k <= l; ++k)
      if (rep.homology.free_rank[k] != rep.index_counts[k]) {
        ok = false;
        os << "free rank k=" << k << ": " << rep.homology.free_rank[k] << "; ";
      }
    if (!rep.homology.torsion_free()) os << "torsion present; ";
    add("integral_free_of_rank_e", ok, os.str());
  }

  // Orientable iff positively marked; the integer top kernel and the top
  // unstable chain must agree on this.
  {
    auto kernel = cx.orientation_kernel();
    bool kernel_orientable = kernel.rank == 1 && kernel.unit_coefficients;
    bool chain_cycle = chain_is_zero(cx.boundary_of(cx.unstable_chain(W.identity())));
    rep.orientable = kernel_orientable;
    bool ok = (kernel_orientable == m.positively_marked()) &&
              (chain_cycle == m.positively_marked()) && (kernel.rank <= 1);
    std::ostringstream os;
    os << "kernel rank " << kernel.rank << ", top chain " << (chain_cycle ? "cycle" : "not a cycle");
    add("orientable_iff_positively_marked", ok, os.str());
  }

  // Unstable boundaries over all w: evenness, the closed form, and the
  // cycle criterion.
  {
    bool even_ok = true, closed_ok = true, cycle_ok = true;
    std::ostringstream ose, osc, osy;
    for (int w = 0; w < W.size(); ++w) {
      Chain chain = cx.unstable_chain(w);
      Chain generic = cx.boundary_of(chain);
      if (!chain_all_even(generic)) {
        even_ok = false;
        ose << "w=" << w << "; ";
      }
      Chain closed = cx.unstable_boundary_explicit(w);
      if (generic != closed) {
        closed_ok = false;
        osc << "w=" << w << "; ";
      }
      unsigned pu = W.unstable_support(w);
      bool positively;
      if (pu == 0) {
        positively = true;
      } else {
        positively = cx.marking().restrict_to(pu).positively_marked();
      }
      if (chain_is_zero(generic) != positively) {
        cycle_ok = false;
        osy << "w=" << w << " support=" << mask_str(pu, l) << "; ";
      }
    }
    add("unstable_boundaries_all_even", even_ok, ose.str());
    add("unstable_boundary_matches_closed_form", closed_ok, osc.str());
    add("cycle_iff_levi_positively_marked", cycle_ok, osy.str());
  }

  // Standard marking: cycle iff the unstable Weyl group is abelian.
  if (m.is_standard()) {
    bool ok = true;
    std::ostringstream os;
    const DynkinDiagram& d = m.diagram();
    for (int w = 0; w < W.size(); ++w) {
      unsigned pu = W.unstable_support(w);
      bool abelian = true;
      for (const auto& e : d.edges())
        if ((pu & (1u << e.a)) && (pu & (1u << e.b))) abelian = false;
      bool cycle = chain_is_zero(cx.boundary_of(cx.unstable_chain(w)));
      if (cycle != abelian) {
        ok = false;
        os << "w=" << w << "; ";
      }
    }
    add("standard_cycle_iff_abelian_unstable_group", ok, os.str());
  }

  // Euler characteristic identity and universal coefficients.
  {
    long long chi_f = rep.homology.euler_from_f();
    long long chi_e = 0;
    int s = 1;
    for (long long e : rep.index_counts) {
      chi_e += s * e;
      s = -s;
    }
    add("euler_characteristic_identity", chi_f == chi_e,
        "f: " + std::to_string(chi_f) + ", e: " + std::to_string(chi_e));
    add("universal_coefficients_identity", rep.homology.universal_coefficients_consistent(), "");
  }

  return rep;
}

TheoremReport check_theorems(const WeylGroup& W, const Marking& m) {
  CellComplex cx(W, m);
  return check_theorems(cx);
}

bool TheoremReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::vector<LeviCheck> check_levi_closures(const CellComplex& cx) {
  const WeylGroup& W = cx.weyl();
  std::vector<LeviCheck> out;
  for (int w = 0; w < W.size(); ++w) {
    LeviCheck lc;
    lc.w = w;
    lc.support = W.unstable_support(w);
    lc.closure_betti = betti_mod2_of_cells(cx, cx.unstable_closure_cells(w));
    if (lc.support == 0) {
      lc.levi_betti = {1};  // the twisted complex of the empty diagram is a point
    } else {
      Marking sub = cx.marking().restrict_to(lc.support);
      WeylGroup subW(sub.diagram());
      CellComplex subcx(subW, sub, cx.convention());
      auto h = homology_of(subcx);
      lc.levi_betti = h.betti_mod2;
    }
    lc.match = lc.closure_betti == lc.levi_betti;
    out.push_back(std::move(lc));
  }
  return out;
}

}  // namespace tomei
