#ifndef TOMEI_WEYL_HPP
#define TOMEI_WEYL_HPP

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tomei/diagram.hpp"

namespace tomei {

// Finite Weyl group in its reflection representation on the simple-root
// basis: each element is the exact integer matrix sending root coordinates
// v to w(v). Elements are found by breadth-first closure from the identity,
// so lengths are BFS depths and reduced words are read off BFS parents
// (generator ties broken by index, making words deterministic).
//
// Immutable after construction; safe to share read-only across threads.
class WeylGroup {
 public:
  explicit WeylGroup(const DynkinDiagram& d, size_t max_elements = 1000000);

  int rank() const { return rank_; }
  int size() const { return static_cast<int>(length_.size()); }
  const DynkinDiagram& diagram() const { return diagram_; }
  const CartanMatrix& cartan() const { return cartan_; }

  int identity() const { return 0; }
  int length(int w) const { return length_[w]; }
  const std::vector<int>& reduced_word(int w) const { return word_[w]; }
  int longest() const { return longest_; }

  int right(int w, int gen) const { return right_[gen][w]; }  // w * s_gen
  int left(int gen, int w) const { return left_[gen][w]; }    // s_gen * w
  int inverse(int w) const { return inverse_[w]; }
  int multiply(int a, int b) const;  // a * b

  const std::vector<int>& matrix(int w) const { return mats_[w]; }

  // Pi^u(w) = { i : l(s_i w) > l(w) } as a bitmask; |Pi^u| is the index of w.
  unsigned unstable_support(int w) const;
  // e(k) = #{ w : |Pi^u(w)| = k }, k = 0..rank.
  std::vector<long long> index_counts() const;

  // Minimal-length representative of w W_S and the tail in W_S with
  // w = w_min * tail.
  struct CosetFactor {
    int w_min;
    int tail;
  };
  CosetFactor min_coset_rep(int w, unsigned S_mask) const;
  bool is_min_coset_rep(int w, unsigned S_mask) const;
  std::vector<int> min_coset_reps(unsigned S_mask) const;

  // Elements of the parabolic subgroup W_S in index order.
  std::vector<int> parabolic_elements(unsigned S_mask) const;

 private:
  int rank_;
  DynkinDiagram diagram_;
  CartanMatrix cartan_;
  std::vector<std::vector<int>> mats_;
  std::vector<int> length_;
  std::vector<std::vector<int>> word_;
  std::vector<std::vector<int>> right_;
  std::vector<std::vector<int>> left_;
  std::vector<int> inverse_;
  int longest_ = 0;

  struct MatHash {
    size_t operator()(const std::vector<int>& m) const {
      size_t h = 1469598103934665603ull;
      for (int x : m) {
        h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  std::unordered_map<std::vector<int>, int, MatHash> index_;

  std::vector<int> gen_matrix(int g) const;
  static std::vector<int> mat_mul(const std::vector<int>& a, const std::vector<int>& b, int n);
};

}  // namespace tomei

#endif
