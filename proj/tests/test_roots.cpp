#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "tomei/diagram.hpp"
#include "tomei/error.hpp"
#include "tomei/weyl.hpp"

using namespace tomei;

namespace {

// Element index from a word, multiplying generators left to right.
int elt(const WeylGroup& W, std::initializer_list<int> word) {
  int w = W.identity();
  for (int g : word) w = W.right(w, g);
  return w;
}

}  // namespace

TEST_CASE("Cartan matrices of the stock types") {
  CHECK(DynkinDiagram::parse("A2").cartan().entries == std::vector<int>{2, -1, -1, 2});
  // G2 in the C_21 = -3 convention.
  CHECK(DynkinDiagram::parse("G2").cartan().entries == std::vector<int>{2, -1, -3, 2});
  CHECK(DynkinDiagram::parse("B2").cartan().entries == std::vector<int>{2, -2, -1, 2});
  CHECK(DynkinDiagram::parse("C2").cartan().entries == std::vector<int>{2, -1, -2, 2});
  auto b3 = DynkinDiagram::parse("B3").cartan();
  CHECK(b3.at(1, 2) == -2);
  CHECK(b3.at(2, 1) == -1);
  CHECK(b3.at(0, 2) == 0);
  // Explicit edge grammar gives the same B3.
  auto expl = DynkinDiagram::parse("rank=3; edges=1-2:1,2-3:2>");
  CHECK(expl.cartan().entries == b3.entries);
  // Product diagrams are block sums.
  auto prod = DynkinDiagram::parse("A1xA1").cartan();
  CHECK(prod.entries == std::vector<int>{2, 0, 0, 2});
}

TEST_CASE("non-finite input is rejected") {
  // Affine A2: the 3-cycle.
  CHECK_THROWS_AS(DynkinDiagram::parse("rank=3; edges=1-2:1,2-3:1,1-3:1"), NonFiniteType);
  // Affine A1: a quadruple bond is out of range.
  CHECK_THROWS_AS(DynkinDiagram::parse("rank=2; edges=1-2:4>"), InputError);
  CHECK_THROWS_AS(DynkinDiagram::parse("rank=9"), SizeCapExceeded);
  CHECK_THROWS_AS(DynkinDiagram::parse("Q3"), InputError);
  CHECK_THROWS_AS(DynkinDiagram::parse("E8"), InputError);
  CHECK_THROWS_AS(DynkinDiagram::parse("E7"), InputError);
  CHECK_THROWS_AS(DynkinDiagram::parse("rank=2; edges=1-2:2"), InputError);  // missing arrow
}

TEST_CASE("Weyl enumeration: orders, lengths, longest element") {
  WeylGroup a2(DynkinDiagram::parse("A2"));
  CHECK(a2.size() == 6);
  std::multiset<int> lens;
  for (int w = 0; w < a2.size(); ++w) lens.insert(a2.length(w));
  CHECK(lens == std::multiset<int>{0, 1, 1, 2, 2, 3});
  CHECK(a2.length(a2.longest()) == 3);

  WeylGroup b2(DynkinDiagram::parse("B2"));
  CHECK(b2.size() == 8);
  CHECK(b2.length(b2.longest()) == 4);

  WeylGroup g2(DynkinDiagram::parse("G2"));
  CHECK(g2.size() == 12);
  CHECK(g2.length(g2.longest()) == 6);

  CHECK(WeylGroup(DynkinDiagram::parse("A3")).size() == 24);
  CHECK(WeylGroup(DynkinDiagram::parse("B3")).size() == 48);
  CHECK(WeylGroup(DynkinDiagram::parse("D4")).size() == 192);
  WeylGroup f4(DynkinDiagram::parse("F4"));
  CHECK(f4.size() == 1152);
  CHECK(f4.length(f4.longest()) == 24);
  // Rank-6 stress: E6 enumerates completely and the longest element has
  // length equal to the number of positive roots.
  WeylGroup e6(DynkinDiagram::parse("E6"));
  CHECK(e6.size() == 51840);
  CHECK(e6.length(e6.longest()) == 36);
  // The configurable cap rejects oversized closures early.
  CHECK_THROWS_AS(WeylGroup(DynkinDiagram::parse("E6"), 1000), SizeCapExceeded);
}

TEST_CASE("generator matrices: involution, braid and exchange sanity") {
  for (const char* name : {"A2", "B2", "C2", "G2", "A3", "B3"}) {
    DynkinDiagram d = DynkinDiagram::parse(name);
    WeylGroup W(d);
    CartanMatrix c = d.cartan();
    for (int i = 0; i < W.rank(); ++i) {
      CHECK(W.right(W.right(W.identity(), i), i) == W.identity());
      for (int j = i + 1; j < W.rank(); ++j) {
        int m = c.coxeter_m(i, j);
        int w = W.identity();
        for (int k = 0; k < m; ++k) w = W.right(W.right(w, i), j);
        CHECK(w == W.identity());
      }
    }
    for (int w = 0; w < W.size(); ++w) {
      for (int i = 0; i < W.rank(); ++i) {
        int d1 = W.length(W.right(w, i)) - W.length(w);
        CHECK((d1 == 1 || d1 == -1));
      }
      // Word read left-to-right multiplies to the element, and has minimal length.
      int acc = W.identity();
      for (int g : W.reduced_word(w)) acc = W.right(acc, g);
      CHECK(acc == w);
      CHECK(static_cast<int>(W.reduced_word(w).size()) == W.length(w));
      CHECK(W.length(W.inverse(w)) == W.length(w));
      CHECK(W.multiply(w, W.inverse(w)) == W.identity());
    }
  }
}

TEST_CASE("unstable support") {
  WeylGroup a2(DynkinDiagram::parse("A2"));
  CHECK(a2.unstable_support(a2.identity()) == 0b11u);
  CHECK(a2.unstable_support(a2.longest()) == 0u);
  CHECK(a2.unstable_support(elt(a2, {0})) == 0b10u);  // Pi^u(s1) = {alpha2}
}

TEST_CASE("index counts are Eulerian numbers in type A") {
  CHECK(WeylGroup(DynkinDiagram::parse("A1")).index_counts() ==
        std::vector<long long>{1, 1});
  CHECK(WeylGroup(DynkinDiagram::parse("A2")).index_counts() ==
        std::vector<long long>{1, 4, 1});
  CHECK(WeylGroup(DynkinDiagram::parse("A3")).index_counts() ==
        std::vector<long long>{1, 11, 11, 1});
  CHECK(WeylGroup(DynkinDiagram::parse("A4")).index_counts() ==
        std::vector<long long>{1, 26, 66, 26, 1});
  // Sum over k is |W|.
  auto e = WeylGroup(DynkinDiagram::parse("B3")).index_counts();
  long long total = 0;
  for (long long x : e) total += x;
  CHECK(total == 48);
}

TEST_CASE("minimal coset representatives") {
  WeylGroup a2(DynkinDiagram::parse("A2"));
  int s1 = elt(a2, {0}), s2 = elt(a2, {1}), s1s2 = elt(a2, {0, 1});

  auto f0 = a2.min_coset_rep(s1s2, 0);
  CHECK(f0.w_min == s1s2);
  CHECK(f0.tail == a2.identity());

  auto f1 = a2.min_coset_rep(s2, 0b10);  // w in W_S
  CHECK(f1.w_min == a2.identity());
  CHECK(f1.tail == s2);

  auto f2 = a2.min_coset_rep(s1s2, 0b10);  // S = {alpha2}
  CHECK(f2.w_min == s1);
  CHECK(f2.tail == s2);

  for (const char* name : {"A2", "B2", "G2", "A3"}) {
    WeylGroup W(DynkinDiagram::parse(name));
    unsigned full = (1u << W.rank()) - 1;
    for (unsigned S = 0; S <= full; ++S) {
      for (int w = 0; w < W.size(); ++w) {
        auto f = W.min_coset_rep(w, S);
        CHECK(W.multiply(f.w_min, f.tail) == w);
        CHECK(W.is_min_coset_rep(f.w_min, S));
        CHECK(W.length(f.w_min) + W.length(f.tail) == W.length(w));
        // Idempotent.
        CHECK(W.min_coset_rep(f.w_min, S).w_min == f.w_min);
      }
      // Representatives partition W.
      auto reps = W.min_coset_reps(S);
      CHECK(static_cast<int>(reps.size() * W.parabolic_elements(S).size()) == W.size());
    }
  }
}
