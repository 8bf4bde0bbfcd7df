#ifndef TOMEI_SNF_HPP
#define TOMEI_SNF_HPP

#include <vector>

#include "tomei/sparse.hpp"

namespace tomei {

// Invariant factors d_1 | d_2 | ... of an integer matrix, all positive;
// rank = number of nonzero factors (factors holds exactly the nonzero ones).
struct SmithDecomposition {
  std::vector<long long> factors;
  int rank() const { return static_cast<int>(factors.size()); }
};

// Exact Smith normal form. Elimination runs on 64-bit integers with overflow
// checks and falls back to arbitrary precision if an intermediate overflows.
SmithDecomposition smith_invariants(const SparseIntMat& m);

// Integer kernel of m, computed by unimodular column elimination. The basis
// vectors are primitive (they extend to a basis of Z^cols).
struct IntegerKernel {
  int rank = 0;                                 // nullity of m
  std::vector<std::vector<long long>> basis;    // rank vectors of length m.cols
};

IntegerKernel integer_kernel(const SparseIntMat& m);

}  // namespace tomei

#endif
