#include "tomei/gf2.hpp"

namespace tomei {

GF2Mat::GF2Mat(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(static_cast<size_t>(rows) * words_, 0) {}

GF2Mat GF2Mat::from_integer_matrix(const SparseIntMat& m) {
  GF2Mat g(m.rows, m.cols);
  for (int c = 0; c < m.cols; ++c)
    for (const auto& [r, v] : m.col[c])
      if (v & 1) g.set(r, c);
  return g;
}

void GF2Mat::set(int r, int c) { data_[static_cast<size_t>(r) * words_ + c / 64] ^= 1ull << (c % 64); }

bool GF2Mat::get(int r, int c) const {
  return (data_[static_cast<size_t>(r) * words_ + c / 64] >> (c % 64)) & 1;
}

int GF2Mat::rank() const {
  std::vector<uint64_t> work = data_;
  int rank = 0;
  for (int c = 0; c < cols_ && rank < rows_; ++c) {
    const int w = c / 64;
    const uint64_t bit = 1ull << (c % 64);
    int pivot = -1;
    for (int r = rank; r < rows_; ++r) {
      if (work[static_cast<size_t>(r) * words_ + w] & bit) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (int k = 0; k < words_; ++k)
        std::swap(work[static_cast<size_t>(pivot) * words_ + k],
                  work[static_cast<size_t>(rank) * words_ + k]);
    }
    for (int r = 0; r < rows_; ++r) {
      if (r != rank && (work[static_cast<size_t>(r) * words_ + w] & bit)) {
        for (int k = w; k < words_; ++k)
          work[static_cast<size_t>(r) * words_ + k] ^= work[static_cast<size_t>(rank) * words_ + k];
      }
    }
    ++rank;
  }
  return rank;
}

int rank_mod2(const SparseIntMat& m) { return GF2Mat::from_integer_matrix(m).rank(); }

}  // namespace tomei
