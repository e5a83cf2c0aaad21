#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace latticeforge;

namespace {

std::vector<std::pair<std::string, FiniteLattice>> factors() {
  return {{"chain2", chain(2)}, {"chain3", chain(3)}, {"chain4", chain(4)},
          {"boolean2", boolean(2)}, {"m3", m3()},      {"n5", n5()}};
}

RawBiIdeal raw_union(const RawBiIdeal& x, const RawBiIdeal& y) {
  RawBiIdeal u = x;
  u.unite(y);
  return u;
}

}  // namespace

TEST(PureTensor, Examples) {
  const TensorProduct T(m3(), n5());
  EXPECT_EQ(T.pure(3, 0), T.bottom());
  EXPECT_EQ(T.pure(0, 3), T.bottom());
  const auto t = T.pure(1, 3);  // p (x) c
  EXPECT_TRUE(T.is_valid(t));
  EXPECT_EQ(t.f[0], 4u);
  EXPECT_EQ(t.f[1], 3u);
  EXPECT_EQ(t.f[2], 0u);
  EXPECT_EQ(t.f[4], 0u);
  EXPECT_EQ(T.capping(t).pairs, (std::vector<std::pair<Elem, Elem>>{{1, 3}}));
  EXPECT_TRUE(T.capping(T.bottom()).pairs.empty());
  EXPECT_EQ(T.to_raw(t), biideal_closure(m3(), n5(), raw_pure_tensor(m3(), n5(), 1, 3)));
}

TEST(PureTensor, Monotone) {
  for (const auto& [na, A] : factors())
    for (const auto& [nb, B] : factors()) {
      const TensorProduct T(A, B);
      for (Elem a = 0; a < A.size(); ++a)
        for (Elem a2 = 0; a2 < A.size(); ++a2)
          for (Elem b = 0; b < B.size(); ++b)
            for (Elem b2 = 0; b2 < B.size(); ++b2)
              if (A.leq(a, a2) && B.leq(b, b2)) {
                EXPECT_TRUE(T.leq(T.pure(a, b), T.pure(a2, b2)));
              }
    }
}

TEST(TensorJoin, Examples) {
  const TensorProduct T(boolean(2), n5());
  const auto x = T.pure(1, 1);
  EXPECT_EQ(T.join(x, T.bottom()), x);
  EXPECT_EQ(T.join(T.pure(1, 1), T.pure(1, 2)), T.pure(1, 4));

  const auto M = m3();
  const TensorProduct TM(M, M);
  const auto j = TM.join(TM.pure(1, 1), TM.pure(2, 2));
  RawBiIdeal seed = raw_union(raw_pure_tensor(M, M, 1, 1), raw_pure_tensor(M, M, 2, 2));
  EXPECT_EQ(TM.to_raw(j), biideal_closure(M, M, seed));
}

TEST(TensorMeet, Examples) {
  for (const auto& [na, A] : factors())
    for (const auto& [nb, B] : factors()) {
      const TensorProduct T(A, B);
      for (Elem a = 0; a < A.size(); ++a)
        for (Elem a2 = 0; a2 < A.size(); ++a2)
          for (Elem b = 0; b < B.size(); ++b)
            for (Elem b2 = 0; b2 < B.size(); ++b2)
              EXPECT_EQ(T.meet(T.pure(a, b), T.pure(a2, b2)), T.pure(A.meet(a, a2), B.meet(b, b2)));
    }
}

TEST(TensorJoin, MatchesSubsetClosure) {
  auto rng = lf_test::make_rng(21);
  for (const auto& [na, A] : factors())
    for (const auto& [nb, B] : factors()) {
      const TensorProduct T(A, B);
      const auto elems = T.elements(100000);
      for (int i = 0; i < 60; ++i) {
        const auto& x = elems[lf_test::uniform(rng, elems.size())];
        const auto& y = elems[lf_test::uniform(rng, elems.size())];
        const auto j = T.join(x, y);
        EXPECT_TRUE(T.is_valid(j));
        EXPECT_EQ(T.to_raw(j), biideal_closure(A, B, raw_union(T.to_raw(x), T.to_raw(y))));
        const auto m = T.meet(x, y);
        EXPECT_TRUE(T.is_valid(m));
        RawBiIdeal inter(A.size(), B.size());
        for (Elem a = 0; a < A.size(); ++a)
          for (Elem b = 0; b < B.size(); ++b)
            if (T.to_raw(x).contains(a, b) && T.to_raw(y).contains(a, b)) inter.insert(a, b);
        EXPECT_EQ(T.to_raw(m), inter);
      }
    }
}

TEST(TensorJoin, LatticeLawsOnSamples) {
  auto rng = lf_test::make_rng(22);
  const TensorProduct T(m3(), n5());
  const auto elems = T.elements(100000);
  for (int i = 0; i < 300; ++i) {
    const auto& x = elems[lf_test::uniform(rng, elems.size())];
    const auto& y = elems[lf_test::uniform(rng, elems.size())];
    const auto& z = elems[lf_test::uniform(rng, elems.size())];
    EXPECT_EQ(T.join(x, T.meet(x, y)), x);
    EXPECT_EQ(T.meet(x, T.join(x, y)), x);
    EXPECT_EQ(T.join(T.join(x, y), z), T.join(x, T.join(y, z)));
    EXPECT_EQ(T.meet(T.meet(x, y), z), T.meet(x, T.meet(y, z)));
    EXPECT_EQ(T.join(x, y), T.join(y, x));
  }
}

TEST(TensorLattice, Examples) {
  // two-element factor: f is determined by its value at the top
  for (const auto& [nb, B] : factors()) {
    const auto t = tensor_lattice(chain(2), B);
    EXPECT_TRUE(are_isomorphic(t.lattice, B).has_value()) << nb;
  }
  EXPECT_EQ(tensor_lattice(chain(3), chain(3)).lattice.size(), 6u);
  EXPECT_EQ(brute_force_biideals(chain(2), chain(2)).lattice.size(), 2u);
  const auto bf = brute_force_biideals(n5(), chain(3));
  EXPECT_EQ(bf.lattice.bottom(), 0u);
  EXPECT_EQ(bf.elements[bf.lattice.bottom()], biideal_closure(n5(), chain(3), RawBiIdeal(5, 3)));
}

TEST(TensorLattice, ElementsMatchLiteralDefinition) {
  for (const auto& [na, A] : factors())
    for (const auto& [nb, B] : factors()) {
      if (A.size() > 4 && B.size() > 4) continue;  // keeps the literal search small
      const auto elems = TensorProduct(A, B).elements(100000);
      std::vector<std::vector<Elem>> maps;
      for (const auto& e : elems) maps.push_back(e.f);
      EXPECT_EQ(maps, lf_test::literal_biideals(A, B)) << na << " x " << nb;
    }
}

TEST(TensorLattice, OracleEquivalenceAndSymmetry) {
  for (const auto& [na, A] : factors())
    for (const auto& [nb, B] : factors()) {
      const auto t = tensor_lattice(A, B);
      const auto bf = brute_force_biideals(A, B);
      EXPECT_TRUE(are_isomorphic(t.lattice, bf.lattice).has_value()) << na << " x " << nb;
      const auto s = tensor_lattice(B, A);
      EXPECT_TRUE(are_isomorphic(t.lattice, s.lattice).has_value()) << na << " x " << nb;
    }
}

TEST(TensorLattice, SizeGuard) {
  EXPECT_THROW(brute_force_biideals(chain(9), chain(8)), SizeLimitExceeded);
}

TEST(Capping, RegeneratesEveryElement) {
  for (const auto& [na, A] : factors())
    for (const auto& [nb, B] : factors()) {
      const TensorProduct T(A, B);
      for (const auto& e : T.elements(100000)) {
        const auto c = T.capping(e);
        EXPECT_EQ(T.capping_closure(c), T.to_raw(e));
        auto j = T.bottom();
        for (auto [a, b] : c.pairs) j = T.join(j, T.pure(a, b));
        EXPECT_EQ(j, e);
      }
    }
}

TEST(Capping, BooleanExample) {
  const auto B2 = boolean(2);  // 0, 1, 2, 3 with atoms 1 and 2
  const TensorProduct T(B2, B2);
  const auto x = T.join(T.pure(1, 2), T.pure(2, 1));
  const auto c = T.capping(x);
  EXPECT_EQ(c.pairs, (std::vector<std::pair<Elem, Elem>>{{1, 2}, {2, 1}}));
  EXPECT_EQ(T.capping_closure(c), T.to_raw(x));
  EXPECT_EQ(T.from_raw(T.to_raw(x)), x);
}

TEST(Tensun, Examples) {
  const auto one = tensun_verify(chain(3), chain(3), {{1, 2}}, 1);
  EXPECT_TRUE(one.holds);
  EXPECT_EQ(one.trace.size(), 1u);

  const auto c = tensun_verify(chain(3), chain(3), {{1, 2}, {2, 1}}, 2);
  EXPECT_TRUE(c.holds);
  EXPECT_LE(c.stable_depth, 2u);

  const auto mn = tensun_verify(m3(), n5(), {{1, 1}, {2, 2}}, 4);
  EXPECT_TRUE(mn.holds);
  EXPECT_TRUE(mn.union_is_bi_ideal);
  EXPECT_LE(mn.stable_depth, 4u);
  for (const auto& step : mn.trace) {
    std::map<std::string, Elem> a{{"x", 1}, {"y", 2}}, b{{"x", 1}, {"y", 2}};
    EXPECT_EQ(eval_term(step.term, m3(), a), step.a_value);
    EXPECT_EQ(eval_term(dual_term(step.term), n5(), b), step.b_value);
  }
  EXPECT_THROW(tensun_verify(m3(), n5(), {}, 2), Error);
  EXPECT_THROW(tensun_verify(m3(), n5(), {{1, 1}}, 5), Error);
}

TEST(Tensun, DepthExhaustion) {
  EXPECT_THROW(tensun_verify(m3(), m3(), {{1, 1}, {2, 2}, {3, 3}}, 0), DepthExhausted);
}

TEST(Tensun, RandomInstances) {
  auto rng = lf_test::make_rng(23);
  const auto fs = factors();
  for (int i = 0; i < 50; ++i) {
    const auto& A = fs[lf_test::uniform(rng, fs.size())].second;
    const auto& B = fs[lf_test::uniform(rng, fs.size())].second;
    std::vector<std::pair<Elem, Elem>> pairs;
    for (int k = 0; k < 2; ++k)
      pairs.emplace_back(static_cast<Elem>(lf_test::uniform(rng, A.size())),
                         static_cast<Elem>(lf_test::uniform(rng, B.size())));
    const auto r = tensun_verify(A, B, pairs, 4);
    EXPECT_TRUE(r.union_is_bi_ideal);
    EXPECT_TRUE(r.equal);
  }
}
