#ifndef TOMEI_GF2_HPP
#define TOMEI_GF2_HPP

#include <cstdint>
#include <vector>

#include "tomei/sparse.hpp"

namespace tomei {

// Dense GF(2) matrix with 64-bit packed rows.
class GF2Mat {
 public:
  GF2Mat(int rows, int cols);
  static GF2Mat from_integer_matrix(const SparseIntMat& m);  // entries mod 2

  void set(int r, int c);
  bool get(int r, int c) const;
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  // Destroys row order; returns the rank.
  int rank() const;

 private:
  int rows_, cols_, words_;
  std::vector<uint64_t> data_;  // row-major blocks
};

int rank_mod2(const SparseIntMat& m);

}  // namespace tomei

#endif
