#ifndef TOMEI_SPARSE_HPP
#define TOMEI_SPARSE_HPP

#include <cstdint>
#include <map>
#include <vector>

namespace tomei {

// Column-major sparse integer matrix. Entries within a column are kept
// sorted by row with no explicit zeros.
struct SparseIntMat {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<std::pair<int, long long>>> col;

  SparseIntMat() = default;
  SparseIntMat(int r, int c) : rows(r), cols(c), col(c) {}

  void add(int r, int c, long long v);  // accumulates, drops zeros
  long long at(int r, int c) const;
  size_t nnz() const;

  // b = this * a, with a a sparse vector over columns (index -> coeff).
  std::map<int, long long> apply(const std::map<int, long long>& a) const;

  static SparseIntMat multiply(const SparseIntMat& A, const SparseIntMat& B);
  bool is_zero() const;
};

}  // namespace tomei

#endif
