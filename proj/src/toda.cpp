#include "tomei/toda.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tomei/error.hpp"

namespace tomei::toda {

namespace {

double hypot2(double a, double b) { return std::hypot(a, b); }

// Dense column-major n x n helpers, n is small (<= ~50).
struct Mat {
  int n;
  std::vector<double> a;
  explicit Mat(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}
  double& at(int i, int j) { return a[static_cast<size_t>(j) * n + i]; }
  double at(int i, int j) const { return a[static_cast<size_t>(j) * n + i]; }
};

Mat mat_mul(const Mat& x, const Mat& y) {
  Mat z(x.n);
  for (int j = 0; j < x.n; ++j)
    for (int k = 0; k < x.n; ++k) {
      double v = y.at(k, j);
      if (v == 0) continue;
      for (int i = 0; i < x.n; ++i) z.at(i, j) += x.at(i, k) * v;
    }
  return z;
}

Mat transpose(const Mat& x) {
  Mat z(x.n);
  for (int j = 0; j < x.n; ++j)
    for (int i = 0; i < x.n; ++i) z.at(i, j) = x.at(j, i);
  return z;
}

Mat tridiagonal_dense(const TridiagonalState& x) {
  Mat m(x.size());
  for (int i = 0; i < x.size(); ++i) m.at(i, i) = x.a[i];
  for (int i = 0; i + 1 < x.size(); ++i) {
    m.at(i, i + 1) = x.b[i];
    m.at(i + 1, i) = x.b[i];
  }
  return m;
}

// Householder QR, R forced to have a positive diagonal; only Q is returned.
Mat qr_orthogonal_factor(Mat r) {
  const int n = r.n;
  Mat q(n);
  for (int i = 0; i < n; ++i) q.at(i, i) = 1.0;
  for (int k = 0; k < n; ++k) {
    double norm = 0;
    for (int i = k; i < n; ++i) norm += r.at(i, k) * r.at(i, k);
    norm = std::sqrt(norm);
    if (norm == 0) continue;
    double alpha = r.at(k, k) > 0 ? -norm : norm;
    std::vector<double> v(n, 0.0);
    v[k] = r.at(k, k) - alpha;
    for (int i = k + 1; i < n; ++i) v[i] = r.at(i, k);
    double vtv = 0;
    for (int i = k; i < n; ++i) vtv += v[i] * v[i];
    if (vtv == 0) continue;
    // r <- (I - 2 v v^T / v^T v) r ; q <- q (I - 2 v v^T / v^T v)
    for (int j = k; j < n; ++j) {
      double dot = 0;
      for (int i = k; i < n; ++i) dot += v[i] * r.at(i, j);
      dot = 2 * dot / vtv;
      for (int i = k; i < n; ++i) r.at(i, j) -= dot * v[i];
    }
    for (int i = 0; i < n; ++i) {
      double dot = 0;
      for (int j = k; j < n; ++j) dot += q.at(i, j) * v[j];
      dot = 2 * dot / vtv;
      for (int j = k; j < n; ++j) q.at(i, j) -= dot * v[j];
    }
  }
  for (int k = 0; k < n; ++k) {
    if (r.at(k, k) < 0)
      for (int i = 0; i < n; ++i) q.at(i, k) = -q.at(i, k);
  }
  return q;
}

void check_gaps(std::vector<double> values, double gap_min) {
  std::sort(values.begin(), values.end(), std::greater<>());
  for (size_t i = 0; i + 1 < values.size(); ++i)
    if (values[i] - values[i + 1] < gap_min)
      throw DegenerateSpectrum("eigenvalue gap " + std::to_string(values[i] - values[i + 1]) +
                               " below " + std::to_string(gap_min));
}

}  // namespace

Spectrum Spectrum::from_values(std::vector<double> values, double gap_min) {
  if (values.size() < 2) throw InputError("spectrum needs at least two eigenvalues");
  std::sort(values.begin(), values.end(), std::greater<>());
  double sum = std::accumulate(values.begin(), values.end(), 0.0);
  double scale = 0;
  for (double v : values) scale += std::abs(v);
  if (std::abs(sum) > 1e-9 * std::max(1.0, scale))
    throw SumMismatch("spectrum must sum to zero, got " + std::to_string(sum));
  check_gaps(values, gap_min);
  Spectrum s;
  s.lambda = std::move(values);
  return s;
}

TridiagonalState TridiagonalState::make(std::vector<double> a, std::vector<double> b) {
  if (a.size() < 2 || b.size() + 1 != a.size())
    throw InputError("tridiagonal state needs |a| = l+1, |b| = l");
  double norm = 0;
  for (double v : a) norm += std::abs(v);
  double trace = std::accumulate(a.begin(), a.end(), 0.0);
  if (std::abs(trace) > 1e-12 * std::max(1.0, norm))
    throw InputError("trace must vanish, got " + std::to_string(trace));
  TridiagonalState s;
  s.a = std::move(a);
  s.b = std::move(b);
  return s;
}

std::vector<double> char_coefficients(const TridiagonalState& x) {
  const int n = x.size();
  // p_k has ascending coefficients, degree k.
  std::vector<double> prev = {1.0};
  std::vector<double> cur = {-x.a[0], 1.0};
  for (int k = 2; k <= n; ++k) {
    std::vector<double> next(k + 1, 0.0);
    for (int i = 0; i < k; ++i) {
      next[i + 1] += cur[i];
      next[i] -= x.a[k - 1] * cur[i];
    }
    double bb = x.b[k - 2] * x.b[k - 2];
    for (int i = 0; i < k - 1; ++i) next[i] -= bb * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = cur[n - 1 - j];
  return out;
}

double morse_value(const TridiagonalState& x) {
  const int l = x.size() - 1;
  double f = 0;
  for (int i = 0; i < l; ++i) f += (l - i) * x.a[i];
  return f;
}

std::vector<double> moment_diag(const TridiagonalState& x) { return x.a; }

EigenSystem eigen_tridiagonal(const TridiagonalState& x) {
  const int n = x.size();
  std::vector<double> d = x.a;
  std::vector<double> e(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i] = x.b[i];
  std::vector<double> z(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) z[static_cast<size_t>(i) * n + i] = 1.0;  // column-major

  // Implicit-shift QL, after the classic tql2 routine.
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      int m = l;
      for (; m + 1 < n; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-15 * dd) break;
      }
      if (m == l) break;
      if (++iter > 50) throw InternalError("eigen_tridiagonal: QL did not converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = hypot2(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        double bb = c * e[i];
        r = hypot2(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * bb;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - bb;
        for (int k = 0; k < n; ++k) {
          double zi1 = z[static_cast<size_t>(i + 1) * n + k];
          double zi = z[static_cast<size_t>(i) * n + k];
          z[static_cast<size_t>(i + 1) * n + k] = s * zi + c * zi1;
          z[static_cast<size_t>(i) * n + k] = c * zi - s * zi1;
        }
      }
      if (r == 0.0 && m - 1 >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  EigenSystem out;
  out.values = std::move(d);
  out.vectors.assign(static_cast<size_t>(n) * n, 0.0);
  // z was accumulated with rows as vectors (column-major over k above);
  // store eigenvector j contiguously.
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      out.vectors[static_cast<size_t>(j) * n + i] = z[static_cast<size_t>(j) * n + i];
  return out;
}

TridiagonalState flow_step(const TridiagonalState& x, double h) {
  if (h <= 0) throw InputError("step size must be positive");
  const int n = x.size();
  EigenSystem es = eigen_tridiagonal(x);
  double radius = 0;
  for (double v : es.values) radius = std::max(radius, std::abs(v));
  if (h * radius > 30.0)
    throw StepTooLarge("h * spectral radius = " + std::to_string(h * radius) + " > 30");
  check_gaps(es.values, 1e-6);

  // exp(hX) = Z exp(h Lambda) Z^T
  Mat expm(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0;
      for (int k = 0; k < n; ++k)
        acc += es.vectors[static_cast<size_t>(k) * n + i] * std::exp(h * es.values[k]) *
               es.vectors[static_cast<size_t>(k) * n + j];
      expm.at(i, j) = acc;
    }
  Mat q = qr_orthogonal_factor(expm);
  Mat xq = mat_mul(tridiagonal_dense(x), q);
  Mat next = mat_mul(transpose(q), xq);

  // Re-symmetrize and re-tridiagonalize.
  std::vector<double> a(n), b(n - 1);
  for (int i = 0; i < n; ++i) a[i] = next.at(i, i);
  for (int i = 0; i + 1 < n; ++i) b[i] = 0.5 * (next.at(i, i + 1) + next.at(i + 1, i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j)
      if (std::abs(next.at(i, j)) > 1e-10 || std::abs(next.at(j, i)) > 1e-10)
        throw InternalError("flow_step: step left the tridiagonal band");
  double mean = std::accumulate(a.begin(), a.end(), 0.0) / n;
  for (double& v : a) v -= mean;  // exact trace-zero restoration

  // Per-step invariant drift guard.
  std::vector<double> c0 = char_coefficients(x);
  TridiagonalState out = TridiagonalState::make(std::move(a), std::move(b));
  std::vector<double> c1 = char_coefficients(out);
  for (size_t j = 0; j < c0.size(); ++j)
    if (std::abs(c1[j] - c0[j]) > 1e-10 * std::max(1.0, std::abs(c0[j])))
      throw InternalError("flow_step: spectral invariant drifted");

  // The flow preserves b-signs away from zero.
  bool guarded = true;
  for (int i = 0; i + 1 < n; ++i)
    if (std::abs(x.b[i]) <= 1e-8) guarded = false;
  if (guarded)
    for (int i = 0; i + 1 < n; ++i)
      if (x.b[i] * out.b[i] < 0) throw InternalError("flow_step: b sign pattern flipped");
  return out;
}

Trajectory simulate(const TridiagonalState& x0, double T, double h) {
  if (h <= 0 || T < 0) throw InputError("simulate: need h > 0 and T >= 0");
  Trajectory traj;
  traj.initial_coefficients = char_coefficients(x0);
  const long long steps = std::llround(T / h);
  TridiagonalState x = x0;
  for (long long k = 0;; ++k) {
    Sample s;
    s.t = k * h;
    s.x = x;
    s.morse = morse_value(x);
    auto c = char_coefficients(x);
    double drift = 0;
    for (size_t j = 0; j < c.size(); ++j)
      drift = std::max(drift, std::abs(c[j] - traj.initial_coefficients[j]));
    s.drift = drift;
    traj.max_drift = std::max(traj.max_drift, drift);
    traj.samples.push_back(std::move(s));
    if (k >= steps) break;
    x = flow_step(x, h);
  }
  return traj;
}

bool in_permutohedron(const std::vector<double>& d, const Spectrum& lam, double tol) {
  if (d.size() != lam.lambda.size()) throw InputError("in_permutohedron: size mismatch");
  double sd = std::accumulate(d.begin(), d.end(), 0.0);
  double sl = std::accumulate(lam.lambda.begin(), lam.lambda.end(), 0.0);
  if (std::abs(sd - sl) > 1e-9 * std::max(1.0, std::abs(sl)))
    throw SumMismatch("diagonal sum differs from spectrum sum");
  std::vector<double> sorted = d;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double pd = 0, pl = 0;
  for (size_t k = 0; k + 1 < sorted.size(); ++k) {
    pd += sorted[k];
    pl += lam.lambda[k];
    if (pd > pl + tol) return false;
  }
  return true;
}

ConvexityAudit convexity_audit(const Trajectory& traj, const Spectrum& lam, double step_tol,
                               double inside_tol) {
  ConvexityAudit audit;
  audit.max_drift = traj.max_drift;
  double prev = -1e300;
  for (const auto& s : traj.samples) {
    if (!in_permutohedron(moment_diag(s.x), lam, inside_tol)) {
      audit.inside_all = false;
      if (audit.violation_time < 0) {
        audit.violation_time = s.t;
        audit.violation = "moment diagonal left the permutohedron";
      }
    }
    if (s.morse < prev - step_tol) {
      audit.monotone = false;
      if (audit.violation_time < 0) {
        audit.violation_time = s.t;
        audit.violation = "Morse value decreased";
      }
    }
    prev = s.morse;
  }
  const auto& last = traj.samples.back().x.a;
  std::vector<int> perm(last.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](int i, int j) { return last[i] > last[j]; });
  for (int& p : perm) ++p;
  audit.limit_permutation = std::move(perm);
  return audit;
}

TridiagonalState jacobi_from_spectrum(const Spectrum& lam, const std::vector<int>& signs,
                                      uint64_t seed) {
  const int n = lam.size();
  if (static_cast<int>(signs.size()) + 1 != n)
    throw InputError("jacobi_from_spectrum: need l = n-1 signs");
  for (int s : signs)
    if (s != 1 && s != -1) throw InputError("signs must be +1/-1");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  };
  for (int attempt = 0; attempt < 100; ++attempt) {
    // Random unit start vector via Box-Muller.
    std::vector<double> q(n);
    for (int i = 0; i < n; ++i) {
      double u1 = uniform(), u2 = uniform();
      q[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }
    double norm = 0;
    for (double v : q) norm += v * v;
    norm = std::sqrt(norm);
    bool ok = norm > 1e-8;
    for (double v : q) ok = ok && std::abs(v / norm) > 1e-4;
    if (!ok) continue;
    for (double& v : q) v /= norm;

    // Lanczos on diag(lambda) with full reorthogonalization.
    std::vector<std::vector<double>> basis = {q};
    std::vector<double> a(n, 0.0), b(n - 1, 0.0);
    bool degenerate = false;
    for (int k = 0; k < n; ++k) {
      const auto& qk = basis[k];
      std::vector<double> v(n);
      for (int i = 0; i < n; ++i) v[i] = lam.lambda[i] * qk[i];
      double ak = 0;
      for (int i = 0; i < n; ++i) ak += qk[i] * v[i];
      a[k] = ak;
      if (k == n - 1) break;
      for (const auto& prev : basis) {
        double dot = 0;
        for (int i = 0; i < n; ++i) dot += prev[i] * v[i];
        for (int i = 0; i < n; ++i) v[i] -= dot * prev[i];
      }
      double bk = 0;
      for (double t : v) bk += t * t;
      bk = std::sqrt(bk);
      if (bk < 1e-8) {
        degenerate = true;
        break;
      }
      b[k] = bk;
      for (double& t : v) t /= bk;
      basis.push_back(std::move(v));
    }
    if (degenerate) continue;
    // Diagonal conjugation flips b-signs to the requested pattern.
    for (int i = 0; i < n - 1; ++i) b[i] *= signs[i];
    double mean = std::accumulate(a.begin(), a.end(), 0.0) / n;
    for (double& t : a) t -= mean;  // spectrum sums to zero already; clear roundoff
    return TridiagonalState::make(std::move(a), std::move(b));
  }
  throw InputError("jacobi_from_spectrum: construction retry cap exceeded");
}

}  // namespace tomei::toda
