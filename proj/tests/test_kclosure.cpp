#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace latticeforge;

namespace {

struct Case {
  std::string name;
  FiniteLattice L;
  std::size_t h;
};

std::vector<Case> cases() { return {{"m3", m3(), 1}, {"n5", n5(), 2}, {"chain4", chain(4), 1}}; }

// Runs step k times.
AntitoneAssignment power(const FiniteLattice& L, AntitoneAssignment x, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) x = step(L, x);
  return x;
}

template <class Rng>
KTensorElement random_fixed(const KClosure& kc, Rng& rng, std::size_t max_degree) {
  return kc.closure(lf_test::random_assignment(kc.lattice(), rng, max_degree));
}

bool raw_subset(const RawBiIdeal& x, const RawBiIdeal& y) { return x.subset_of(y); }

}  // namespace

TEST(Step, FixedPointExamples) {
  const auto N = n5();
  for (Elem v = 0; v < N.size(); ++v) {
    const auto only_c = make_assignment(v, {}, N.bottom(), {}, N.bottom());
    EXPECT_EQ(step(N, only_c), only_c);
    EXPECT_EQ(step(N, constant_assignment(v)), constant_assignment(v));
  }
}

TEST(Step, N5Example) {
  const auto N = n5();  // 0 a b c 1, a < c
  const auto x = make_assignment(4, {0}, 2, {}, 3);
  const auto y = step(N, x);
  const auto direct = lf_test::array_step(N, lf_test::to_arrays(x, 3));
  const auto got = lf_test::to_arrays(y, 3);
  EXPECT_EQ(got.c, direct.c);
  EXPECT_EQ(got.a, direct.a);
  EXPECT_EQ(got.b, direct.b);
  // c' = 1 v (b ^ c) = 1; a_1' = b v (c ^ 1) = 1; b_1' = c v (0 ^ 1) = c
  EXPECT_EQ(y.c_val, 4u);
  EXPECT_EQ(y.at_a(0), 0u);
  EXPECT_EQ(y.at_a(1), 4u);
  EXPECT_EQ(y.at_b(1), 3u);
}

TEST(Step, MatchesDirectEvaluation) {
  auto rng = lf_test::make_rng(31);
  for (const auto& c : cases())
    for (int i = 0; i < 500; ++i) {
      const auto x = lf_test::random_assignment(c.L, rng, 4);
      const std::size_t M = x.degree() + 2;
      const auto y = step(c.L, x);
      const auto direct = lf_test::array_step(c.L, lf_test::to_arrays(x, M));
      const auto got = lf_test::to_arrays(y, M);
      EXPECT_EQ(got.c, direct.c);
      EXPECT_EQ(got.a, direct.a);
      EXPECT_EQ(got.b, direct.b);
    }
}

TEST(Step, InflationaryAndStaysAntitone) {
  auto rng = lf_test::make_rng(32);
  for (const auto& c : cases())
    for (int i = 0; i < 500; ++i) {
      const auto x = lf_test::random_assignment(c.L, rng, 4);
      const auto y = step(c.L, x);
      EXPECT_TRUE(is_antitone(c.L, y));
      EXPECT_TRUE(assignment_leq(c.L, x, y));
      EXPECT_LE(y.degree(), x.degree() + 1);
    }
}

TEST(Ell, Examples) {
  EXPECT_EQ(ell(constant_assignment(2)), (Triple<Elem>{2, 2, 2}));
  const auto x = make_assignment(1, {0, 0}, 3, {}, 2);
  EXPECT_EQ(ell(x), (Triple<Elem>{3, 2, 1}));
}

TEST(Ell, CommutesWithStep) {
  auto rng = lf_test::make_rng(33);
  for (const auto& c : cases())
    for (int i = 0; i < 1000; ++i) {
      const auto x = lf_test::random_assignment(c.L, rng, 4);
      EXPECT_EQ(ell(step(c.L, x)), triple_step(c.L, ell(x)));
    }
}

TEST(EllFixed, StepKeepsDegreeAndStabilizesIndexwise) {
  auto rng = lf_test::make_rng(34);
  for (const auto& c : cases())
    for (int i = 0; i < 400; ++i) {
      // x^(h) has a stable limit triple because L is h-modular
      const auto x = power(c.L, lf_test::random_assignment(c.L, rng, 4), c.h);
      ASSERT_EQ(ell(step(c.L, x)), ell(x));
      const auto y = step(c.L, x);
      EXPECT_EQ(y.c_val, x.c_val);
      EXPECT_EQ(y.at_a(0), x.at_a(0));
      EXPECT_EQ(y.at_b(0), x.at_b(0));
      EXPECT_LE(y.degree(), x.degree());
      std::vector<AntitoneAssignment> it{x};
      for (std::size_t k = 1; k <= x.degree() + 3; ++k) it.push_back(step(c.L, it.back()));
      for (std::size_t k = 0; k + 1 < it.size(); ++k)
        for (std::size_t n = 0; n <= k && n <= x.degree() + 1; ++n) {
          EXPECT_EQ(it[k + 1].at_a(n), it[k].at_a(n));
          EXPECT_EQ(it[k + 1].at_b(n), it[k].at_b(n));
        }
      // x^(k)(a_n) = x(a_n) v (x^(k-1)(b_{n-1}) ^ x(c)), and symmetrically
      for (std::size_t k = 1; k < it.size(); ++k)
        for (std::size_t n = 1; n <= x.degree() + 1; ++n) {
          EXPECT_EQ(it[k].at_a(n), c.L.join(x.at_a(n), c.L.meet(it[k - 1].at_b(n - 1), x.c_val)));
          EXPECT_EQ(it[k].at_b(n), c.L.join(x.at_b(n), c.L.meet(it[k - 1].at_a(n - 1), x.c_val)));
        }
    }
}

TEST(KClosure, Preconditions) {
  EXPECT_NO_THROW(KClosure(m3(), 1));
  EXPECT_NO_THROW(KClosure(n5(), 2));
  EXPECT_THROW(KClosure(n5(), 1), NotHModular);
  EXPECT_THROW(KClosure(m3(), 0), NotHModular);
  const KClosure kc(m3(), 1);
  EXPECT_THROW(kc.closure(make_assignment(0, {4}, 1, {}, 0)), Error);  // not antitone
}

TEST(KClosure, FixedInputNeedsNoSteps) {
  const KClosure kc(n5(), 2);
  const auto x = kc.pure_preimage(KElem::ac(1), 1);
  const auto t = kc.closure_trace(x.x);
  EXPECT_EQ(t.iterations, 0u);
  EXPECT_EQ(t.value, x);
}

TEST(KClosure, StabilizesWithinBound) {
  auto rng = lf_test::make_rng(35);
  for (const auto& c : cases()) {
    const KClosure kc(c.L, c.h);
    std::size_t over = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto x = lf_test::random_assignment(c.L, rng, 5);
      const auto t = kc.closure_trace(x);
      EXPECT_TRUE(is_step_fixed(c.L, t.value.x));
      EXPECT_TRUE(assignment_leq(c.L, x, t.value.x));
      if (t.iterations > t.bound) ++over;
    }
    EXPECT_EQ(over, 0u) << c.name;
  }
}

TEST(KClosure, IsLeastFixedPointAbove) {
  auto rng = lf_test::make_rng(36);
  for (const auto& c : cases()) {
    const KClosure kc(c.L, c.h);
    for (int i = 0; i < 100; ++i) {
      const auto x = lf_test::random_assignment(c.L, rng, 3);
      const auto xt = kc.closure_trace(x).value;
      for (int j = 0; j < 10; ++j) {
        const auto z = kc.closure_trace(vee_c(c.L, x, lf_test::random_assignment(c.L, rng, 3))).value;
        EXPECT_TRUE(assignment_leq(c.L, xt.x, z.x));
      }
    }
  }
}

TEST(VeeStar, SemilatticeLaws) {
  auto rng = lf_test::make_rng(37);
  for (const auto& c : cases()) {
    const KClosure kc(c.L, c.h);
    const KTensorElement bot{bottom_assignment(c.L)};
    for (int i = 0; i < 300; ++i) {
      const auto x = random_fixed(kc, rng, 3), y = random_fixed(kc, rng, 3), z = random_fixed(kc, rng, 3);
      EXPECT_EQ(kc.vee_star(x, x), x);
      EXPECT_EQ(kc.vee_star(x, bot), x);
      EXPECT_EQ(kc.vee_star(x, y), kc.vee_star(y, x));
      EXPECT_EQ(kc.vee_star(kc.vee_star(x, y), z), kc.vee_star(x, kc.vee_star(y, z)));
      EXPECT_EQ(vee_c(c.L, x.x, y.x), vee_c(c.L, y.x, x.x));
    }
  }
}

TEST(ExtendBar, Examples) {
  const KClosure kc(n5(), 2);
  const auto x = kc.closure(make_assignment(1, {0, 0}, 3, {0}, 2));
  for (std::uint32_t m = 0; m < 5; ++m) {
    EXPECT_EQ(kc.extend_bar(x, KElem::a(m)), x.x.at_a(m));
    EXPECT_EQ(kc.extend_bar(x, KElem::t(m)), n5().meet(x.x.at_a(m), x.x.at_b(m)));
  }
  EXPECT_THROW(kc.extend_bar(x, KElem::zero()), ZeroArgument);
  EXPECT_THROW(assignment_at(x.x, KElem::t(0)), NotJoinIrreducible);
}

TEST(ExtendBar, WellDefinedAndJoinToMeet) {
  auto rng = lf_test::make_rng(38);
  const auto elems = k_elements(5);
  for (const auto& c : cases()) {
    const KClosure kc(c.L, c.h);
    for (int i = 0; i < 100; ++i) {
      const auto x = random_fixed(kc, rng, 3);
      for (const auto& e : elems) {
        if (e.kind == KKind::zero) continue;
        EXPECT_EQ(kc.extend_bar(x, e), kc.extend_full(x, e)) << format_kelem(e);
        for (const auto& f : elems) {
          if (f.kind == KKind::zero) continue;
          EXPECT_EQ(kc.extend_bar(x, k_join(e, f)), c.L.meet(kc.extend_bar(x, e), kc.extend_bar(x, f)));
        }
      }
    }
  }
}

TEST(PurePreimage, Examples) {
  const auto M = m3();
  const KClosure kc(M, 1);
  EXPECT_EQ(kc.pure_preimage(KElem::zero(), 1).x, bottom_assignment(M));
  EXPECT_EQ(kc.pure_preimage(KElem::top(), 1).x, constant_assignment(1));
  const auto x = kc.pure_preimage(KElem::ac(2), 1).x;
  for (std::uint32_t k = 0; k < 6; ++k) {
    EXPECT_EQ(x.at_a(k), k >= 2 ? 1u : 0u);
    EXPECT_EQ(x.at_b(k), k >= 3 ? 1u : 0u);
  }
  EXPECT_EQ(x.c_val, 1u);
  EXPECT_TRUE(is_step_fixed(M, x));
}

TEST(PurePreimage, EpsilonIsPureTensor) {
  for (const auto& c : cases()) {
    const KClosure kc(c.L, c.h);
    for (const auto& u : k_elements(3))
      for (Elem xi = 0; xi < c.L.size(); ++xi) {
        const auto x = kc.pure_preimage(u, xi);
        const auto KN = k_truncation(static_cast<std::uint32_t>(std::max<std::size_t>(x.x.degree() + 2, 4)));
        EXPECT_EQ(kc.epsilon_restricted(x, KN), pure_tensor(KN.lattice, c.L, KN.index_of(u), xi))
            << format_kelem(u) << " " << xi;
        if (u.kind != KKind::zero && xi != c.L.bottom()) {
          const auto g = kc.gamma_capping(x);
          const auto it = std::find(g.begin(), g.end(), std::pair<KElem, Elem>{u, xi});
          EXPECT_NE(it, g.end());
          EXPECT_EQ(gamma_fiber_sizes(g).at(xi), 1u);
        }
      }
  }
}

TEST(Epsilon, BottomAndTruncationGuard) {
  const KClosure kc(n5(), 2);
  const KTensorElement bot{bottom_assignment(n5())};
  const auto KN = k_truncation(3);
  EXPECT_EQ(kc.epsilon_restricted(bot, KN), TensorProduct(KN.lattice, n5()).bottom());
  const auto x = kc.pure_preimage(KElem::a(3), 1);
  EXPECT_THROW(kc.epsilon_restricted(x, k_truncation(4)), TruncationTooSmall);
  EXPECT_TRUE(TensorProduct(k_truncation(5).lattice, n5()).is_valid(kc.epsilon_restricted(x, k_truncation(5))));
}

TEST(Epsilon, HomomorphismForJoins) {
  auto rng = lf_test::make_rng(39);
  for (const auto& c : cases()) {
    const KClosure kc(c.L, c.h);
    for (int i = 0; i < 200; ++i) {
      const auto x = random_fixed(kc, rng, 3), y = random_fixed(kc, rng, 3);
      const auto j = kc.vee_star(x, y);
      const std::size_t N = std::max({vee_c(c.L, x.x, y.x).degree() + c.h + 2, j.x.degree() + 2, x.x.degree() + 2,
                                      y.x.degree() + 2});
      const auto KN = k_truncation(static_cast<std::uint32_t>(N));
      const TensorProduct T(KN.lattice, c.L);
      EXPECT_EQ(kc.epsilon_restricted(j, KN), T.join(kc.epsilon_restricted(x, KN), kc.epsilon_restricted(y, KN)));
    }
  }
}

TEST(Gamma, SmallFibersAndRegeneration) {
  auto rng = lf_test::make_rng(40);
  for (const auto& c : cases()) {
    const KClosure kc(c.L, c.h);
    for (int i = 0; i < 1000; ++i) {
      const auto x = random_fixed(kc, rng, 4);
      const auto g = kc.gamma_capping(x);
      for (const auto& [xi, n] : gamma_fiber_sizes(g)) EXPECT_LE(n, 4u);
      if (i % 10) continue;  // the regeneration check is the slow part
      for (std::size_t margin : {2u, 4u}) {
        const auto KN = k_truncation(static_cast<std::uint32_t>(x.x.degree() + margin));
        const TensorProduct T(KN.lattice, c.L);
        EXPECT_EQ(gamma_closure(KN, c.L, g), T.to_raw(kc.epsilon_restricted(x, KN)));
      }
    }
  }
}

TEST(MeetStar, LawsAndRestriction) {
  auto rng = lf_test::make_rng(41);
  for (const auto& c : cases()) {
    const KClosure kc(c.L, c.h);
    const KTensorElement bot{bottom_assignment(c.L)};
    for (int i = 0; i < 200; ++i) {
      const auto x = random_fixed(kc, rng, 3), y = random_fixed(kc, rng, 3);
      EXPECT_EQ(kc.meet_star(x, x), x);
      EXPECT_EQ(kc.meet_star(x, bot), bot);
      const auto m = kc.meet_star(x, y);
      const auto KN = k_truncation(static_cast<std::uint32_t>(std::max(x.x.degree(), y.x.degree()) + 2));
      const TensorProduct T(KN.lattice, c.L);
      EXPECT_EQ(kc.epsilon_restricted(m, KN), T.meet(kc.epsilon_restricted(x, KN), kc.epsilon_restricted(y, KN)));
    }
  }
}

TEST(VerifyCapped, Examples) {
  const KClosure m(m3(), 1);
  const auto r = verify_capped(m, {{KElem::a(0), 1}, {KElem::b(0), 2}}, 4);
  EXPECT_TRUE(r.oracle_equal);
  EXPECT_TRUE(r.capping_equal);
  EXPECT_LE(r.max_fiber, 4u);

  const auto single = verify_capped(m, {{KElem::ac(1), 3}}, 4);
  EXPECT_EQ(gamma_fiber_sizes(single.gamma).at(3), 1u);

  auto rng = lf_test::make_rng(42);
  const KClosure n(n5(), 2);
  const auto elems = k_elements(2);
  for (int i = 0; i < 10; ++i) {
    std::vector<std::pair<KElem, Elem>> ts;
    for (int k = 0; k < 3; ++k)
      ts.emplace_back(elems[lf_test::uniform(rng, elems.size())], static_cast<Elem>(lf_test::uniform(rng, 5)));
    const auto rr = verify_capped(n, ts, 6);
    EXPECT_TRUE(rr.oracle_equal && rr.capping_equal);
  }
}

TEST(MonotoneBridge, JoinStaysInsideBiIdeal) {
  auto rng = lf_test::make_rng(43);
  for (const auto& c : cases()) {
    const KClosure kc(c.L, c.h);
    const auto KN = k_truncation(7);
    const TensorProduct T(KN.lattice, c.L);
    std::size_t checked = 0;
    for (int i = 0; i < 60; ++i) {
      const auto x = random_fixed(kc, rng, 2), y = random_fixed(kc, rng, 2);
      const auto j = kc.vee_star(x, y);
      if (std::max({x.x.degree(), y.x.degree(), j.x.degree()}) + 2 > KN.N) continue;
      // a bi-ideal holding both, padded with a random pure tensor
      RawBiIdeal seed = T.to_raw(kc.epsilon_restricted(x, KN));
      seed.unite(T.to_raw(kc.epsilon_restricted(y, KN)));
      seed.unite(raw_pure_tensor(KN.lattice, c.L, static_cast<Elem>(lf_test::uniform(rng, KN.lattice.size())),
                                 static_cast<Elem>(lf_test::uniform(rng, c.L.size()))));
      const RawBiIdeal I = biideal_closure(KN.lattice, c.L, seed);
      ++checked;
      EXPECT_TRUE(raw_subset(T.to_raw(kc.epsilon_restricted(j, KN)), I));
    }
    EXPECT_GT(checked, 30u);
  }
}
