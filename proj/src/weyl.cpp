#include "tomei/weyl.hpp"

#include <algorithm>
#include <deque>

#include "tomei/error.hpp"

namespace tomei {

std::vector<int> WeylGroup::gen_matrix(int g) const {
  // s_g(alpha_j) = alpha_j - C_{j,g} alpha_g, column j holds the image of alpha_j.
  std::vector<int> m(static_cast<size_t>(rank_) * rank_, 0);
  for (int i = 0; i < rank_; ++i) m[static_cast<size_t>(i) * rank_ + i] = 1;
  for (int j = 0; j < rank_; ++j) m[static_cast<size_t>(g) * rank_ + j] -= cartan_.at(j, g);
  return m;
}

std::vector<int> WeylGroup::mat_mul(const std::vector<int>& a, const std::vector<int>& b, int n) {
  std::vector<int> c(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      int av = a[static_cast<size_t>(i) * n + k];
      if (av == 0) continue;
      for (int j = 0; j < n; ++j)
        c[static_cast<size_t>(i) * n + j] += av * b[static_cast<size_t>(k) * n + j];
    }
  return c;
}

WeylGroup::WeylGroup(const DynkinDiagram& d, size_t max_elements)
    : rank_(d.rank()), diagram_(d), cartan_(d.cartan()) {
  std::vector<std::vector<int>> gens(rank_);
  for (int g = 0; g < rank_; ++g) gens[g] = gen_matrix(g);

  std::vector<int> id(static_cast<size_t>(rank_) * rank_, 0);
  for (int i = 0; i < rank_; ++i) id[static_cast<size_t>(i) * rank_ + i] = 1;
  mats_.push_back(id);
  length_.push_back(0);
  word_.push_back({});
  index_.emplace(id, 0);
  right_.assign(rank_, {});
  left_.assign(rank_, {});
  for (int g = 0; g < rank_; ++g) right_[g].push_back(-1);

  std::deque<int> queue = {0};
  while (!queue.empty()) {
    int w = queue.front();
    queue.pop_front();
    for (int g = 0; g < rank_; ++g) {
      if (right_[g][w] >= 0) continue;
      std::vector<int> m = mat_mul(mats_[w], gens[g], rank_);
      auto it = index_.find(m);
      int idx;
      if (it == index_.end()) {
        idx = static_cast<int>(mats_.size());
        if (static_cast<size_t>(idx) >= max_elements)
          throw SizeCapExceeded("Weyl group larger than " + std::to_string(max_elements));
        mats_.push_back(std::move(m));
        length_.push_back(length_[w] + 1);
        auto word = word_[w];
        word.push_back(g);
        word_.push_back(std::move(word));
        index_.emplace(mats_[idx], idx);
        for (int h = 0; h < rank_; ++h) right_[h].push_back(-1);
        queue.push_back(idx);
      } else {
        idx = it->second;
      }
      right_[g][w] = idx;
      right_[g][idx] = w;
    }
  }

  const int n = size();
  for (int g = 0; g < rank_; ++g) {
    left_[g].assign(n, -1);
    for (int w = 0; w < n; ++w) {
      if (left_[g][w] >= 0) continue;
      int u = index_.at(mat_mul(gens[g], mats_[w], rank_));
      left_[g][w] = u;
      left_[g][u] = w;
    }
  }

  inverse_.assign(n, 0);
  for (int w = 0; w < n; ++w) {
    int u = 0;
    const auto& word = word_[w];
    for (auto it = word.rbegin(); it != word.rend(); ++it) u = right_[*it][u];
    inverse_[w] = u;
  }

  longest_ = 0;
  for (int w = 1; w < n; ++w)
    if (length_[w] > length_[longest_]) longest_ = w;
  for (int w = 0; w < n; ++w)
    if (w != longest_ && length_[w] == length_[longest_])
      throw InternalError("longest element is not unique");
}

int WeylGroup::multiply(int a, int b) const {
  int r = a;
  for (int g : word_[b]) r = right_[g][r];
  return r;
}

unsigned WeylGroup::unstable_support(int w) const {
  unsigned mask = 0;
  for (int g = 0; g < rank_; ++g)
    if (length_[left_[g][w]] > length_[w]) mask |= 1u << g;
  return mask;
}

std::vector<long long> WeylGroup::index_counts() const {
  std::vector<long long> e(rank_ + 1, 0);
  for (int w = 0; w < size(); ++w) e[__builtin_popcount(unstable_support(w))]++;
  return e;
}

WeylGroup::CosetFactor WeylGroup::min_coset_rep(int w, unsigned S_mask) const {
  int cur = w;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int g = 0; g < rank_; ++g) {
      if (!(S_mask & (1u << g))) continue;
      int next = right_[g][cur];
      if (length_[next] < length_[cur]) {
        cur = next;
        moved = true;
      }
    }
  }
  return {cur, multiply(inverse_[cur], w)};
}

bool WeylGroup::is_min_coset_rep(int w, unsigned S_mask) const {
  for (int g = 0; g < rank_; ++g)
    if ((S_mask & (1u << g)) && length_[right_[g][w]] < length_[w]) return false;
  return true;
}

std::vector<int> WeylGroup::min_coset_reps(unsigned S_mask) const {
  std::vector<int> out;
  for (int w = 0; w < size(); ++w)
    if (is_min_coset_rep(w, S_mask)) out.push_back(w);
  return out;
}

std::vector<int> WeylGroup::parabolic_elements(unsigned S_mask) const {
  // Closure of {e} under the S-generators.
  std::vector<char> seen(size(), 0);
  std::vector<int> out = {0};
  seen[0] = 1;
  for (size_t qi = 0; qi < out.size(); ++qi) {
    int w = out[qi];
    for (int g = 0; g < rank_; ++g) {
      if (!(S_mask & (1u << g))) continue;
      int u = right_[g][w];
      if (!seen[u]) {
        seen[u] = 1;
        out.push_back(u);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tomei
