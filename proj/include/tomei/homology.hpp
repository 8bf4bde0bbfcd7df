#ifndef TOMEI_HOMOLOGY_HPP
#define TOMEI_HOMOLOGY_HPP

#include <string>
#include <vector>

#include "tomei/cells.hpp"
#include "tomei/snf.hpp"

namespace tomei {

struct TorsionFactor {
  long long value = 1;
  std::vector<std::pair<long long, int>> prime_powers;
  bool fully_factored = true;
};

struct HomologyResult {
  std::vector<long long> f;                        // f-vector, degrees 0..l
  std::vector<int> betti_mod2;                     // Z/2 ranks
  std::vector<long long> free_rank;                // integral free ranks
  std::vector<std::vector<TorsionFactor>> torsion; // per degree
  std::vector<int> boundary_rank;                  // rank of d_k over Q, k = 0..l

  bool torsion_free() const;
  // mod2_rank_k == free_k + #(even torsion in k) + #(even torsion in k-1)
  bool universal_coefficients_consistent() const;
  long long euler_from_f() const;
  long long euler_from_betti_mod2() const;
};

HomologyResult homology_of(const CellComplex& cx);

// Factors n into prime powers by trial division up to 10^6; anything left
// is reported unfactored.
TorsionFactor factor_torsion(long long n);

struct TheoremCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct TheoremReport {
  std::vector<TheoremCheck> checks;
  HomologyResult homology;
  std::vector<long long> index_counts;
  bool orientable = false;
  bool all_pass() const;
};

// Runs the full audit for one marking: mod-2 ranks against the index
// counts, integral freeness in the positively marked case, orientability,
// cycle criteria for every unstable chain, the closed-form boundary match,
// and the Euler / universal-coefficient identities.
TheoremReport check_theorems(const WeylGroup& W, const Marking& m);
TheoremReport check_theorems(const CellComplex& cx);

// Unstable-closure audit (one entry per Weyl element): mod-2 Betti numbers
// of the closure against the twisted complex of the Levi subdiagram.
struct LeviCheck {
  int w = 0;
  unsigned support = 0;
  std::vector<int> closure_betti;
  std::vector<int> levi_betti;
  bool match = false;
};
std::vector<LeviCheck> check_levi_closures(const CellComplex& cx);

}  // namespace tomei

#endif
