#include "tomei/snf.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <stdexcept>

#include "tomei/bigint.hpp"
#include "tomei/error.hpp"

namespace tomei {

namespace {

struct SnfOverflow : std::exception {};

// 64-bit integer whose arithmetic throws SnfOverflow instead of wrapping.
struct Checked {
  long long v = 0;
  Checked() = default;
  Checked(long long x) : v(x) {}  // NOLINT
  bool is_zero() const { return v == 0; }
  Checked operator-() const {
    if (v == LLONG_MIN) throw SnfOverflow();
    return Checked(-v);
  }
  Checked operator+(Checked o) const {
    long long r;
    if (__builtin_add_overflow(v, o.v, &r)) throw SnfOverflow();
    return Checked(r);
  }
  Checked operator-(Checked o) const {
    long long r;
    if (__builtin_sub_overflow(v, o.v, &r)) throw SnfOverflow();
    return Checked(r);
  }
  Checked operator*(Checked o) const {
    long long r;
    if (__builtin_mul_overflow(v, o.v, &r)) throw SnfOverflow();
    return Checked(r);
  }
  Checked operator/(Checked o) const {
    if (v == LLONG_MIN && o.v == -1) throw SnfOverflow();
    return Checked(v / o.v);
  }
  Checked operator%(Checked o) const {
    if (v == LLONG_MIN && o.v == -1) throw SnfOverflow();
    return Checked(v % o.v);
  }
  bool operator==(Checked o) const { return v == o.v; }
  Checked abs() const {
    if (v == LLONG_MIN) throw SnfOverflow();
    return Checked(v < 0 ? -v : v);
  }
  static int cmp_abs(Checked a, Checked b) {
    unsigned long long x = a.v < 0 ? -static_cast<unsigned long long>(a.v) : a.v;
    unsigned long long y = b.v < 0 ? -static_cast<unsigned long long>(b.v) : b.v;
    return x < y ? -1 : (x > y ? 1 : 0);
  }
};

template <class T>
struct Dense {
  int rows, cols;
  std::vector<T> a;
  Dense(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  T& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const T& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

template <class T>
Dense<T> densify(const SparseIntMat& m) {
  Dense<T> d(m.rows, m.cols);
  for (int c = 0; c < m.cols; ++c)
    for (const auto& [r, v] : m.col[c]) d.at(r, c) = T(v);
  return d;
}

template <class T>
int cmp_abs_t(const T& a, const T& b) {
  return T::cmp_abs(a, b);
}
template <>
int cmp_abs_t<BigInt>(const BigInt& a, const BigInt& b) {
  return BigInt::cmp_abs(a, b);
}

template <class T>
std::vector<T> snf_diagonal(Dense<T> m) {
  std::vector<T> diag;
  const int n = std::min(m.rows, m.cols);
  for (int t = 0; t < n; ++t) {
    // Pivot: nonzero of minimal absolute value in the trailing submatrix.
    int pr = -1, pc = -1;
    for (int i = t; i < m.rows; ++i)
      for (int j = t; j < m.cols; ++j) {
        const T& x = m.at(i, j);
        if (x.is_zero()) continue;
        if (pr < 0 || cmp_abs_t(x, m.at(pr, pc)) < 0) {
          pr = i;
          pc = j;
        }
      }
    if (pr < 0) break;
    if (pr != t)
      for (int j = t; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(t, j));
    if (pc != t)
      for (int i = t; i < m.rows; ++i) std::swap(m.at(i, pc), m.at(i, t));

    bool settled = false;
    while (!settled) {
      settled = true;
      // Clear column t by Euclidean steps.
      for (int i = t + 1; i < m.rows; ++i) {
        if (m.at(i, t).is_zero()) continue;
        T q = m.at(i, t) / m.at(t, t);
        if (!q.is_zero())
          for (int j = t; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - q * m.at(t, j);
        if (!m.at(i, t).is_zero()) {
          // Remainder is strictly smaller than the pivot; promote it.
          for (int j = t; j < m.cols; ++j) std::swap(m.at(i, j), m.at(t, j));
          settled = false;
        }
      }
      if (!settled) continue;
      // Clear row t.
      for (int j = t + 1; j < m.cols; ++j) {
        if (m.at(t, j).is_zero()) continue;
        T q = m.at(t, j) / m.at(t, t);
        if (!q.is_zero())
          for (int i = t; i < m.rows; ++i) m.at(i, j) = m.at(i, j) - q * m.at(i, t);
        if (!m.at(t, j).is_zero()) {
          for (int i = t; i < m.rows; ++i) std::swap(m.at(i, j), m.at(i, t));
          settled = false;
        }
      }
      if (!settled) continue;
      // Pivot must divide every remaining entry for the divisibility chain.
      for (int i = t + 1; i < m.rows && settled; ++i)
        for (int j = t + 1; j < m.cols && settled; ++j) {
          if ((m.at(i, j) % m.at(t, t)).is_zero()) continue;
          for (int k = t; k < m.cols; ++k) m.at(t, k) = m.at(t, k) + m.at(i, k);
          settled = false;
        }
    }
    diag.push_back(m.at(t, t).abs());
  }
  return diag;
}

template <class T>
long long to_ll(const T& x);
template <>
long long to_ll<Checked>(const Checked& x) {
  return x.v;
}
template <>
long long to_ll<BigInt>(const BigInt& x) {
  if (!x.fits_int64()) throw InternalError("smith_invariants: factor exceeds 64 bits");
  return x.to_int64();
}

template <class T>
SmithDecomposition snf_run(const SparseIntMat& m) {
  auto diag = snf_diagonal(densify<T>(m));
  SmithDecomposition out;
  for (const auto& d : diag)
    if (!d.is_zero()) out.factors.push_back(to_ll(d));
  std::sort(out.factors.begin(), out.factors.end());
  return out;
}

// Column echelon by unimodular column operations, tracking the transform.
template <class T>
IntegerKernel kernel_run(const SparseIntMat& m) {
  Dense<T> w = densify<T>(m);
  Dense<T> v(m.cols, m.cols);
  for (int j = 0; j < m.cols; ++j) v.at(j, j) = T(1);
  std::vector<bool> used(m.cols, false);

  auto colop = [&](int dst, int src, const T& q) {
    // col_dst -= q * col_src
    for (int i = 0; i < m.rows; ++i) w.at(i, dst) = w.at(i, dst) - q * w.at(i, src);
    for (int i = 0; i < m.cols; ++i) v.at(i, dst) = v.at(i, dst) - q * v.at(i, src);
  };
  auto colswap = [&](int a, int b) {
    for (int i = 0; i < m.rows; ++i) std::swap(w.at(i, a), w.at(i, b));
    for (int i = 0; i < m.cols; ++i) std::swap(v.at(i, a), v.at(i, b));
  };

  for (int r = 0; r < m.rows; ++r) {
    // Gather active columns with a nonzero entry in row r; reduce to one.
    while (true) {
      int lead = -1;
      for (int j = 0; j < m.cols; ++j) {
        if (used[j] || w.at(r, j).is_zero()) continue;
        if (lead < 0 || cmp_abs_t(w.at(r, j), w.at(r, lead)) < 0) lead = j;
      }
      if (lead < 0) break;
      bool clean = true;
      for (int j = 0; j < m.cols; ++j) {
        if (j == lead || used[j] || w.at(r, j).is_zero()) continue;
        T q = w.at(r, j) / w.at(r, lead);
        if (!q.is_zero()) colop(j, lead, q);
        if (!w.at(r, j).is_zero()) clean = false;  // remainder survives, next pass
      }
      if (clean) {
        used[lead] = true;
        break;
      }
      (void)colswap;
    }
  }

  IntegerKernel out;
  for (int j = 0; j < m.cols; ++j) {
    if (used[j]) continue;
    bool zero = true;
    for (int i = 0; i < m.rows && zero; ++i) zero = w.at(i, j).is_zero();
    if (!zero) throw InternalError("integer_kernel: unused column not annihilated");
    std::vector<long long> vec(m.cols);
    for (int i = 0; i < m.cols; ++i) vec[i] = to_ll(v.at(i, j));
    out.basis.push_back(std::move(vec));
  }
  out.rank = static_cast<int>(out.basis.size());
  return out;
}

}  // namespace

SmithDecomposition smith_invariants(const SparseIntMat& m) {
  try {
    return snf_run<Checked>(m);
  } catch (const SnfOverflow&) {
    return snf_run<BigInt>(m);
  }
}

IntegerKernel integer_kernel(const SparseIntMat& m) {
  try {
    return kernel_run<Checked>(m);
  } catch (const SnfOverflow&) {
    return kernel_run<BigInt>(m);
  }
}

}  // namespace tomei
