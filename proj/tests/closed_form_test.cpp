#include "permbinom/closed_form.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace permbinom {
namespace {

struct Case {
  u64 p;
  unsigned m;
};

BinomialSpec make(u64 p, unsigned m, u64 r, Elem a) { return BinomialSpec{p, m, 3, r, a}; }

Elem valid_a(const Field& F, const BinomialSpec& proto, std::mt19937_64& gen) {
  for (;;) {
    BinomialSpec s = proto;
    s.a = Elem{1 + gen() % (F.order() - 1)};
    if (has_unique_root(F, s)) return s.a;
  }
}

TEST(Decompose, Digits) {
  EXPECT_EQ(decompose_exponent(6 + 6 * 49, 7), (ExponentDecomp{300, 6, 0, 6}));
  EXPECT_EQ(decompose_exponent(1, 5), (ExponentDecomp{1, 1, 0, 0}));
  EXPECT_EQ(decompose_exponent(20, 9), (ExponentDecomp{20, 2, 2, 0}));
  EXPECT_THROW(decompose_exponent(0, 3), std::domain_error);
  EXPECT_THROW(decompose_exponent(26, 3), std::domain_error);
  EXPECT_NO_THROW(decompose_exponent(25, 3));
}

TEST(Congruence, OuterDigitsSingleSolution) {
  const auto sols = solve_congruence_triple(3, 13, 2, 0, 2);
  EXPECT_EQ(sols, (std::vector<CongruenceSolution>{{0, 0, 0}}));
}

TEST(Congruence, OuterDigitsAtMostOne) {
  for (u64 q : {3, 4, 5, 7, 8, 9, 11, 13}) {
    for (u64 r = 1; r <= q * q + q + 1; ++r) {
      const auto b = congruence_bounds(q, r, q - 1, 0, q - 1);
      EXPECT_EQ(b.spread(), static_cast<i128>(q * q - 1));
      EXPECT_LE(solve_congruence_triple(q, r, q - 1, 0, q - 1).size(), 1u);
    }
  }
}

TEST(Congruence, HalfDigitsDesignatedSolution) {
  for (u64 q : {3, 5, 7, 9, 11, 13, 25, 27}) {
    const u64 h = (q - 1) / 2;
    for (u64 r0 = 2; r0 <= q - 1; r0 += 2) {
      const auto sols = solve_congruence_triple(q, r0 * q + 1, h, h, q - 1);
      const CongruenceSolution designated{h, (r0 - 2) / 2, r0 / 2 - 1};
      EXPECT_NE(std::find(sols.begin(), sols.end(), designated), sols.end()) << q << " " << r0;
      // shifting all three indices down by one keeps the congruence, so the
      // designated triple is alone only when j* = 0
      EXPECT_EQ(sols.size() == 1, r0 == 2) << q << " " << r0;
    }
  }
}

TEST(Congruence, MatchesBoxEnumeration) {
  std::mt19937_64 gen(1);
  for (u64 q : {3, 4, 5, 7, 8, 9}) {
    for (int t = 0; t < 300; ++t) {
      const u64 r = 1 + gen() % (q * q + q + 1);
      const u64 N = 1 + gen() % (q * q * q - 2);
      const auto d = decompose_exponent(N, q);
      ASSERT_EQ(solve_congruence_triple(q, r, d.alpha, d.beta, d.gamma),
                oracle::box_solutions(q, r, d.alpha, d.beta, d.gamma))
          << "q=" << q << " r=" << r << " N=" << N;
    }
  }
}

TEST(Congruence, BaseMatchesTwoDigitSumCase) {
  for (u64 q : {3, 5, 7, 9}) {
    for (u64 r = 1; r <= q * q; ++r) {
      for (u64 alpha = 0; alpha < q; ++alpha) {
        for (u64 beta = 0; beta < q; ++beta) {
          if (alpha + beta > 2 * (q - 1) || alpha + beta < q - 1) continue;
          const u64 gamma = 2 * (q - 1) - alpha - beta;
          const auto b = congruence_bounds(q, r, alpha, beta, gamma);
          ASSERT_EQ(b.base, static_cast<i128>(r) * (2 + alpha + beta + q * beta));
        }
      }
    }
  }
  EXPECT_THROW(congruence_bounds(7, 1, 1, 0, 0), std::invalid_argument);
}

TEST(PowerSum, DirectOnPermutationVanishes) {
  const BinomialSpec proto = make(7, 1, 1, Elem{1});
  const Field F = field_for(proto);
  BinomialSpec s = proto;
  s.a = F.primitive();
  for (u64 N : {1, 2, 50, 300, 341}) EXPECT_TRUE(power_sum_direct(F, s, N).is_zero());
  EXPECT_EQ(power_sum_direct(F, s, F.order() - 1), F.neg(F.one()));
}

TEST(PowerSum, OuterDigitsValueSmallField) {
  const BinomialSpec proto = make(3, 1, 13, Elem{1});
  const Field F = field_for(proto);
  std::mt19937_64 gen(2);
  for (int t = 0; t < 10; ++t) {
    BinomialSpec s = proto;
    s.a = valid_a(F, proto, gen);
    const Elem expected = F.neg(F.pow(s.a, -6));
    EXPECT_EQ(power_sum_direct(F, s, 20), expected);
    EXPECT_EQ(power_sum_triple(F, s, 20), expected);
    EXPECT_EQ(power_sum_single(F, s, 20), expected);
  }
}

TEST(PowerSum, OuterDigitsTerm) {
  std::mt19937_64 gen(3);
  for (auto [p, m] : std::vector<Case>{{7, 1}, {3, 2}, {5, 1}}) {
    const BinomialSpec proto = make(p, m, 1, Elem{1});
    const Field F = field_for(proto);
    const u64 q = proto.q();
    const u64 N = (q - 1) + (q - 1) * q * q;
    for (u64 r = 2; r <= q * q + q + 1; ++r) {
      if (gcd(r, q - 1) != 1 || r % q == 1) continue;
      BinomialSpec s = proto;
      s.r = r;
      s.a = valid_a(F, proto, gen);
      std::vector<CongruenceSolution> terms;
      const Elem v = power_sum_triple(F, s, N, &terms);
      ASSERT_EQ(terms.size(), 1u) << r;
      const auto [i, j, k] = terms.front();
      ASSERT_EQ(j, 0u);
      const u64 coef = mul_mod(lucas_binom(q - 1, i, p).value, lucas_binom(q - 1, k, p).value, p);
      const Elem expected = F.neg(F.mul(F.scalar(coef), F.pow(s.a, static_cast<i128>(q) - static_cast<i128>(q) * q -
                                                                         static_cast<i128>(i) -
                                                                         static_cast<i128>(q) * q * k)));
      ASSERT_EQ(v, expected) << r;
      ASSERT_FALSE(v.is_zero());
    }
  }
}

TEST(PowerSum, ZeroWithoutDivisibility) {
  const BinomialSpec proto = make(7, 1, 5, Elem{1});
  const Field F = field_for(proto);
  std::mt19937_64 gen(4);
  BinomialSpec s = proto;
  s.a = valid_a(F, proto, gen);
  // 5 * (1 + 0 + 0) is not a multiple of 6
  EXPECT_TRUE(power_sum_triple(F, s, 1).is_zero());
  EXPECT_TRUE(power_sum_direct(F, s, 1).is_zero());
}

TEST(PowerSum, ThreeWayAgreement) {
  std::mt19937_64 gen(5);
  for (auto [p, m] : std::vector<Case>{{3, 2}, {7, 1}, {2, 3}, {5, 1}, {2, 2}}) {
    const BinomialSpec proto = make(p, m, 1, Elem{1});
    const Field F = field_for(proto);
    const u64 q = proto.q();
    for (int t = 0; t < 200; ++t) {
      BinomialSpec s = proto;
      s.r = 1 + gen() % (q * q + q + 1);
      s.a = Elem{1 + gen() % (F.order() - 1)};
      const u64 N = 1 + gen() % (F.order() - 2);
      const Elem direct = power_sum_direct(F, s, N);
      ASSERT_EQ(power_sum_triple(F, s, N), direct) << "q=" << q << " r=" << s.r << " N=" << N;
      ASSERT_EQ(power_sum_single(F, s, N), direct) << "q=" << q << " r=" << s.r << " N=" << N;
    }
  }
}

TEST(PowerSum, SingleIndexOtherDegrees) {
  std::mt19937_64 gen(6);
  for (auto [p, m, e] : std::vector<std::tuple<u64, unsigned, unsigned>>{{2, 1, 9}, {3, 1, 4}, {5, 1, 2}, {2, 2, 4}}) {
    const BinomialSpec proto{p, m, e, 1, Elem{1}};
    const Field F = field_for(proto);
    for (int t = 0; t < 200; ++t) {
      BinomialSpec s = proto;
      s.r = 1 + gen() % 100;
      s.a = Elem{1 + gen() % (F.order() - 1)};
      const u64 N = 1 + gen() % (F.order() - 2);
      ASSERT_EQ(power_sum_single(F, s, N), power_sum_direct(F, s, N)) << p << "^" << m * e << " N=" << N;
    }
  }
  const BinomialSpec s{2, 1, 9, 3, Elem{1}};
  EXPECT_THROW(power_sum_triple(field_for(s), s, 5), std::invalid_argument);
}

TEST(SingleIndex, NearSquareMultipleTerm) {
  for (u64 q : {5, 7, 11, 13}) {
    for (u64 r0 = 2; r0 <= (q - 1) / 2; r0 += 2) {
      const u64 N = 1 + (q - 2) * q + (q - 1) * q * q;
      ASSERT_EQ(N, (q * q + q - 1) * (q - 1));
      const auto cands = single_index_candidates(q, 3, r0 * q + 1, N);
      std::vector<u64> surviving;
      for (u64 n1 : cands) {
        if (!lucas_binom(N, n1, q).is_zero()) surviving.push_back(n1);
      }
      EXPECT_EQ(surviving, (std::vector<u64>{(2 * r0 - 1) * q + (q - 1) * q * q})) << q << " " << r0;
    }
  }
}

TEST(SingleIndex, SquareMinusOneTerm) {
  // N = (q^2 - 1)(q - 1), r0 a multiple of p; one of the two candidate terms dies
  for (auto [p, m] : std::vector<Case>{{3, 2}, {5, 2}, {3, 3}}) {
    const u64 q = static_cast<u64>(checked_pow(p, m));
    const u64 N = 1 + (q - 1) * q + (q - 2) * q * q;
    ASSERT_EQ(N, (q * q - 1) * (q - 1));
    for (u64 r0 = 2 * p; r0 <= q; r0 += 2 * p) {
      u64 alive = 0, dead = 0;
      if (2 * r0 < q + 1) {
        alive = (2 * r0 - 1) * q + (r0 - 2) * q * q;
        dead = 1 + 2 * r0 * q + (r0 - 1) * q * q;
      } else {
        dead = (2 * r0 - 1 - q) * q + (r0 - 1) * q * q;
        alive = 1 + (2 * r0 - q) * q + r0 * q * q;
      }
      const auto cands = single_index_candidates(q, 3, r0 * q + 1, N);
      EXPECT_NE(std::find(cands.begin(), cands.end(), dead), cands.end());
      std::vector<u64> surviving;
      for (u64 n1 : cands) {
        if (!lucas_binom(N, n1, p).is_zero()) surviving.push_back(n1);
      }
      EXPECT_EQ(surviving, std::vector<u64>{alive}) << q << " " << r0;
    }
  }
}

TEST(SingleIndex, ProgressionMatchesScan) {
  std::mt19937_64 gen(7);
  for (u64 q : {3, 4, 5, 7}) {
    for (unsigned e : {2u, 3u, 4u}) {
      const u64 Q1 = static_cast<u64>(checked_pow(q, e)) - 1;
      for (int t = 0; t < 50; ++t) {
        const u64 r = 1 + gen() % 60, N = 1 + gen() % (Q1 - 1);
        std::vector<u64> scan;
        for (u64 n1 = 0; n1 <= N; ++n1) {
          if ((static_cast<u128>(r) * N + static_cast<u128>(q - 1) * n1) % Q1 == 0) scan.push_back(n1);
        }
        ASSERT_EQ(single_index_candidates(q, e, r, N), scan);
      }
    }
  }
}

TEST(Witness, Examples) {
  std::mt19937_64 gen(8);
  {
    const BinomialSpec proto = make(7, 1, 2, Elem{1});
    const Field F = field_for(proto);
    BinomialSpec s = proto;
    s.a = valid_a(F, proto, gen);
    const auto w = witness_exponent(F, s);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->recipe, WitnessRecipe::outer_digits);
    EXPECT_EQ(w->cert.N, 6u + 6 * 49);
    EXPECT_FALSE(power_sum_direct(F, s, w->cert.N).is_zero());
    s.r = 1;
    EXPECT_FALSE(witness_exponent(F, s));
  }
  {
    const BinomialSpec proto = make(3, 2, 19, Elem{1});
    const Field F = field_for(proto);
    BinomialSpec s = proto;
    s.a = valid_a(F, proto, gen);
    const auto w = witness_exponent(F, s);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->recipe, WitnessRecipe::half_digits);
    EXPECT_TRUE(w->cert.agree());
  }
}

TEST(Witness, Candidates) {
  const auto odd = witness_candidates(7);
  ASSERT_EQ(odd.size(), 5u);
  EXPECT_EQ(odd[0].N, 300u);
  EXPECT_EQ(odd[1].N, 3 + 3 * 7 + 6 * 49u);
  EXPECT_EQ(odd[2].N, 55u * 6);
  EXPECT_EQ(odd[3].N, 43u * 6);
  EXPECT_EQ(odd[4].N, 48u * 6);
  EXPECT_EQ(witness_candidates(8).size(), 4u);
  EXPECT_THROW(witness_exponent_for(WitnessRecipe::half_digits, 8), std::invalid_argument);
  EXPECT_EQ(to_string(WitnessRecipe::multiple_q2_mq_p1), "multiple_q2-q+1");
}

TEST(Witness, FiringImpliesNotPermutation) {
  std::mt19937_64 gen(9);
  for (auto [p, m] : std::vector<Case>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {2, 2}, {2, 3}}) {
    const BinomialSpec proto = make(p, m, 1, Elem{1});
    const Field F = field_for(proto);
    const u64 q = proto.q();
    for (u64 r = 1; r <= q * q + q + 1; ++r) {
      BinomialSpec s = proto;
      s.r = r;
      s.a = valid_a(F, proto, gen);
      const auto w = witness_exponent(F, s);
      if (w) ASSERT_FALSE(brute_force_is_pp(F, s).is_pp) << q << " " << r;
      // odd q, coprime r != 1: a recipe always fires
      if (p != 2 && r != 1 && gcd(r, q - 1) == 1) ASSERT_TRUE(w) << q << " " << r;
    }
  }
}

TEST(Certificate, RoutesReported) {
  const BinomialSpec proto = make(7, 1, 5, Elem{1});
  const Field F = field_for(proto);
  BinomialSpec s = proto;
  std::mt19937_64 gen(10);
  s.a = valid_a(F, proto, gen);
  const auto cert = certify_power_sum(F, s, 300);
  ASSERT_TRUE(cert.value_direct);
  ASSERT_TRUE(cert.value_triple);
  EXPECT_TRUE(cert.agree());
  EXPECT_EQ(cert.decomp, (ExponentDecomp{300, 6, 0, 6}));
  EXPECT_EQ(cert.solutions.size(), 1u);
  EXPECT_FALSE(cert.n1_terms.empty());
}

}  // namespace
}  // namespace permbinom
