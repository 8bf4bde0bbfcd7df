#ifndef TOMEI_TODA_HPP
#define TOMEI_TODA_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tomei::toda {

// Fixed spectrum: strictly decreasing, trace zero, adjacent gaps above the
// degeneracy guard.
struct Spectrum {
  std::vector<double> lambda;
  static Spectrum from_values(std::vector<double> values, double gap_min = 1e-6);
  int size() const { return static_cast<int>(lambda.size()); }
};

// Trace-zero symmetric tridiagonal matrix: diagonal a (length l+1) and
// off-diagonal b (length l).
struct TridiagonalState {
  std::vector<double> a;
  std::vector<double> b;
  static TridiagonalState make(std::vector<double> a, std::vector<double> b);
  int size() const { return static_cast<int>(a.size()); }
};

// Coefficients (c_l, ..., c_0) of det(lambda I - X) = lambda^{l+1} + c_l
// lambda^l + ... + c_0, by the three-term tridiagonal recurrence.
std::vector<double> char_coefficients(const TridiagonalState& x);

// f(X) = sum_{i=1..l} (l - i + 1) a_i.
double morse_value(const TridiagonalState& x);

std::vector<double> moment_diag(const TridiagonalState& x);

struct EigenSystem {
  std::vector<double> values;   // unsorted (QL order)
  std::vector<double> vectors;  // column-major: vectors[i + n*j] = v_j[i]
};
// Implicit-shift QL on the symmetric tridiagonal, with eigenvectors.
EigenSystem eigen_tridiagonal(const TridiagonalState& x);

// One step of the QR-stepped Toda flow: exp(hX) = QR with positive diagonal
// R, then X -> Q^T X Q, re-symmetrized and re-tridiagonalized.
TridiagonalState flow_step(const TridiagonalState& x, double h);

struct Sample {
  double t = 0;
  TridiagonalState x;
  double morse = 0;
  double drift = 0;  // max_j |c_j(t) - c_j(0)|
};

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<double> initial_coefficients;
  double max_drift = 0;
};

Trajectory simulate(const TridiagonalState& x0, double T, double h);

// Majorization test for membership in the permutohedron conv(W.lambda).
bool in_permutohedron(const std::vector<double>& d, const Spectrum& lam, double tol = 1e-9);

struct ConvexityAudit {
  bool inside_all = true;
  bool monotone = true;
  double max_drift = 0;
  std::vector<int> limit_permutation;  // 1-based indices sorting the final diagonal descending
  double violation_time = -1;
  std::string violation;
};
ConvexityAudit convexity_audit(const Trajectory& traj, const Spectrum& lam,
                               double step_tol = 1e-9, double inside_tol = 1e-9);

// Inverse eigenvalue construction: Jacobi matrix with the given spectrum from
// a random orthogonal first row (Lanczos), b-signs set per `signs` (+1/-1,
// length l). Deterministic for a fixed seed.
TridiagonalState jacobi_from_spectrum(const Spectrum& lam, const std::vector<int>& signs,
                                      uint64_t seed);

}  // namespace tomei::toda

#endif
