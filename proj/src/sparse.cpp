#include "tomei/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace tomei {

void SparseIntMat::add(int r, int c, long long v) {
  if (v == 0) return;
  if (r < 0 || r >= rows || c < 0 || c >= cols) throw std::out_of_range("SparseIntMat::add");
  auto& column = col[c];
  auto it = std::lower_bound(column.begin(), column.end(), r,
                             [](const auto& e, int row) { return e.first < row; });
  if (it != column.end() && it->first == r) {
    it->second += v;
    if (it->second == 0) column.erase(it);
  } else {
    column.insert(it, {r, v});
  }
}

long long SparseIntMat::at(int r, int c) const {
  const auto& column = col[c];
  auto it = std::lower_bound(column.begin(), column.end(), r,
                             [](const auto& e, int row) { return e.first < row; });
  if (it != column.end() && it->first == r) return it->second;
  return 0;
}

size_t SparseIntMat::nnz() const {
  size_t n = 0;
  for (const auto& c : col) n += c.size();
  return n;
}

std::map<int, long long> SparseIntMat::apply(const std::map<int, long long>& a) const {
  std::map<int, long long> out;
  for (const auto& [j, coeff] : a) {
    for (const auto& [r, v] : col[j]) {
      long long& slot = out[r];
      slot += coeff * v;
      if (slot == 0) out.erase(r);
    }
  }
  return out;
}

SparseIntMat SparseIntMat::multiply(const SparseIntMat& A, const SparseIntMat& B) {
  if (A.cols != B.rows) throw std::invalid_argument("SparseIntMat::multiply: shape mismatch");
  SparseIntMat C(A.rows, B.cols);
  for (int j = 0; j < B.cols; ++j) {
    std::map<int, long long> acc;
    for (const auto& [k, bv] : B.col[j]) {
      for (const auto& [r, av] : A.col[k]) {
        long long& slot = acc[r];
        slot += av * bv;
        if (slot == 0) acc.erase(r);
      }
    }
    C.col[j].assign(acc.begin(), acc.end());
  }
  return C;
}

bool SparseIntMat::is_zero() const {
  for (const auto& c : col)
    if (!c.empty()) return false;
  return true;
}

}  // namespace tomei
