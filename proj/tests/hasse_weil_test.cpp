#include "permbinom/hasse_weil.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <random>

namespace permbinom {
namespace {

namespace mp = boost::multiprecision;
using Real = mp::cpp_bin_float_100;

// The bound quantities recomputed in 100-digit floating point.
struct FloatBound {
  mp::cpp_int lower;
  bool predicts;
  bool applicable;
  bool radicand_ok;
  bool lambda_check;
};

FloatBound float_bound(u64 q, unsigned e, u64 r) {
  const Real Q = mp::pow(Real(q), e);
  const Real d = Real(r + q - 2);
  const Real B = (d - 1) * (d - 2);
  const Real C0 = d * (d - 1) * (d - 1) / 2 + d + 2;
  const Real raw = Q - B * mp::sqrt(Q) - C0;
  Real fl = mp::floor(raw);
  // exact integers (perfect-square Q) must not be nudged below by rounding
  if (mp::abs(raw - mp::round(raw)) < Real("1e-60")) fl = mp::round(raw);
  FloatBound out;
  out.lower = static_cast<mp::cpp_int>(fl);
  out.predicts = raw - Real(q) > Real("1e-60");
  out.applicable = q >= 6 && r > 1 && Real(r) < mp::pow(Q, Real(0.25)) - Real(q) + 3 - Real("1e-60");
  const Real C = C0 + Real(q);
  const Real root = (B + mp::sqrt(B * B + 4 * C)) / 2;
  const Real T = (d - 1) * (d - 1);
  out.radicand_ok = root <= T + Real("1e-60");
  out.lambda_check = out.radicand_ok && T < mp::sqrt(Q) - Real("1e-60");
  return out;
}

mp::cpp_int to_cpp_int(i128 v) {
  const bool neg = v < 0;
  u128 mag = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  mp::cpp_int out = static_cast<u64>(mag >> 64);
  out <<= 64;
  out += static_cast<u64>(mag);
  return neg ? -out : out;
}

TEST(Threshold, SpecExamples) {
  const auto a = hw_threshold(7, 8, 10);
  EXPECT_EQ(a.d, 15u);
  EXPECT_EQ(a.bound_lower, 5326332);
  EXPECT_TRUE(a.predicts_nonpp);
  EXPECT_TRUE(a.applicable);
  EXPECT_EQ(a.gcd_r, 2u);
  EXPECT_TRUE(a.gcd_branch);
  EXPECT_TRUE(a.concludes_nonpp);

  const auto b = hw_threshold(7, 3, 5);
  EXPECT_FALSE(b.applicable);
  EXPECT_FALSE(b.gcd_branch);
  EXPECT_FALSE(b.concludes_nonpp);
  EXPECT_LT(b.bound_lower, 0);

  EXPECT_THROW(hw_threshold(6, 3, 5), std::invalid_argument);
  EXPECT_THROW(hw_threshold(7, 0, 5), std::invalid_argument);
  EXPECT_THROW(hw_threshold(7, 3, 0), std::invalid_argument);
}

TEST(Threshold, ApplicabilityEdge) {
  // (r + q - 3)^4 < 7^8 = 5764801 holds up to r + 4 = 48
  EXPECT_TRUE(hw_threshold(7, 8, 44).applicable);
  EXPECT_FALSE(hw_threshold(7, 8, 45).applicable);
  EXPECT_FALSE(hw_threshold(7, 8, 1).applicable);
  EXPECT_FALSE(hw_threshold(5, 12, 3).applicable);
}

TEST(Threshold, MatchesHighPrecision) {
  const std::vector<u64> qs{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49};
  std::mt19937_64 gen(17);
  for (int t = 0; t < 1000; ++t) {
    const u64 q = qs[gen() % qs.size()];
    const unsigned e = 1 + static_cast<unsigned>(gen() % 10);
    const u64 r = 1 + gen() % 400;
    const auto rep = hw_threshold(q, e, r);
    const auto fb = float_bound(q, e, r);
    ASSERT_EQ(to_cpp_int(rep.bound_lower), fb.lower) << q << " " << e << " " << r;
    ASSERT_EQ(rep.predicts_nonpp, fb.predicts) << q << " " << e << " " << r;
    ASSERT_EQ(rep.applicable, fb.applicable) << q << " " << e << " " << r;
    ASSERT_EQ(rep.radicand_ok, fb.radicand_ok) << q << " " << e << " " << r;
    ASSERT_EQ(rep.lambda_check, fb.lambda_check) << q << " " << e << " " << r;
    ASSERT_EQ(rep.gcd_branch, gcd(r, q - 1) > 1);
    ASSERT_EQ(rep.concludes_nonpp, rep.gcd_branch || (rep.applicable && rep.predicts_nonpp));
  }
}

TEST(Threshold, OverflowDetected) { EXPECT_THROW(hw_threshold(1000003, 12, 5), std::overflow_error); }

TEST(Threshold, BoundDecreasesInR) {
  for (u64 r = 2; r < 60; ++r) EXPECT_GT(hw_threshold(7, 8, r).bound_lower, hw_threshold(7, 8, r + 1).bound_lower);
}

Elem literal_F(const Field& F, const BinomialSpec& s, Elem x, Elem y) {
  auto term = [&](u64 n) {
    Elem acc = F.zero();
    for (u64 i = 0; i < n; ++i) acc = F.add(acc, F.mul(F.pow(x, i), F.pow(y, n - 1 - i)));
    return acc;
  };
  return F.add(term(s.r + s.q() - 1), F.mul(s.a, term(s.r)));
}

TEST(EvalF, QuotientAndDiagonal) {
  std::mt19937_64 gen(2);
  for (auto [p, m, e] : std::vector<std::tuple<u64, unsigned, unsigned>>{{7, 1, 3}, {2, 2, 3}, {3, 1, 3}, {5, 1, 2}}) {
    const BinomialSpec proto{p, m, e, 1, Elem{1}};
    const Field F = field_for(proto);
    for (int t = 0; t < 300; ++t) {
      BinomialSpec s = proto;
      s.r = 1 + gen() % 30;
      s.a = Elem{1 + gen() % (F.order() - 1)};
      const Elem x{gen() % F.order()}, y{gen() % F.order()};
      ASSERT_EQ(eval_F(F, s, x, y), literal_F(F, s, x, y));
      ASSERT_EQ(eval_F(F, s, x, x), literal_F(F, s, x, x));
      ASSERT_EQ(eval_F(F, s, x, y), eval_F(F, s, y, x));
      if (x != y) {
        const Elem quotient = F.mul(F.sub(eval_f(F, s, x), eval_f(F, s, y)), F.inv(F.sub(x, y)));
        ASSERT_EQ(eval_F(F, s, x, y), quotient);
      }
    }
  }
}

CurveCount pairwise_count(const Field& F, const BinomialSpec& s) {
  CurveCount c;
  for (u64 x = 0; x < F.order(); ++x) {
    for (u64 y = 0; y < F.order(); ++y) {
      if (!eval_F(F, s, Elem{x}, Elem{y}).is_zero()) continue;
      ++c.zero_count;
      ++(x == y ? c.diagonal_count : c.offdiag_count);
    }
  }
  return c;
}

TEST(CurveCount, MatchesPairwiseScan) {
  std::mt19937_64 gen(3);
  for (auto [p, m, e] : std::vector<std::tuple<u64, unsigned, unsigned>>{{2, 1, 6}, {3, 1, 3}, {2, 2, 3}, {5, 1, 3}}) {
    const BinomialSpec proto{p, m, e, 1, Elem{1}};
    const Field F = field_for(proto);
    const u64 q = proto.q();
    for (u64 r = 1; r <= q * q + q + 1; r += 1 + gen() % 3) {
      BinomialSpec s = proto;
      s.r = r;
      s.a = Elem{1 + gen() % (F.order() - 1)};
      const auto fast = count_curve_points(F, s);
      const auto slow = pairwise_count(F, s);
      ASSERT_EQ(fast.zero_count, slow.zero_count) << p << " " << r;
      ASSERT_EQ(fast.diagonal_count, slow.diagonal_count);
      ASSERT_EQ(fast.offdiag_count, slow.offdiag_count);
      ASSERT_LE(fast.diagonal_count, q);
      if (brute_force_is_pp(F, s).is_pp) ASSERT_EQ(fast.offdiag_count, 0u);
      else ASSERT_GT(fast.offdiag_count, 0u);
    }
  }
}

TEST(CurveCount, CapEnforced) {
  const BinomialSpec s{2, 13, 1, 3, Elem{1}};
  EXPECT_THROW(count_curve_points(field_for(s), s), capacity_error);
}

TEST(CurveCount, BoundHoldsWhenPositive) {
  std::mt19937_64 gen(4);
  const BinomialSpec proto{7, 1, 3, 1, Elem{1}};
  const Field F = field_for(proto);
  for (u64 r : {2, 3, 5, 7, 11}) {
    const auto hw = hw_threshold(7, 3, r);
    for (int t = 0; t < 4; ++t) {
      BinomialSpec s = proto;
      s.r = r;
      do s.a = Elem{1 + gen() % (F.order() - 1)};
      while (!has_unique_root(F, s));
      const auto c = count_curve_points(F, s);
      if (hw.bound_lower > 0) EXPECT_GE(static_cast<i128>(c.zero_count), hw.bound_lower);
      EXPECT_LE(c.zero_count, F.order() * F.order());
    }
  }
}

TEST(Scan, SoundOnDeskScale) {
  // q = 7, e = 4 has Q^(1/4) = 7, so no r is applicable; e = 8 is the first useful size
  const auto small = theorem2_scan(7, 4, {5, 11}, 2, 0, 2);
  ASSERT_EQ(small.rows.size(), 2u);
  for (const auto& row : small.rows) {
    EXPECT_FALSE(row.applicable);
    EXPECT_FALSE(row.a_exp);
    EXPECT_FALSE(row.confirmed);
  }
  EXPECT_TRUE(small.sound());

  const auto scan = theorem2_scan(8, 4, {3, 2}, 2, 1, 2);
  EXPECT_TRUE(scan.sound());
  for (const auto& row : scan.rows) EXPECT_EQ(row.q, 8u);
}

TEST(Scan, GcdRowsCarryNoSample) {
  const auto scan = theorem2_scan(7, 8, {10}, 3, 0, 1);
  ASSERT_EQ(scan.rows.size(), 1u);
  EXPECT_TRUE(scan.rows[0].gcd_branch);
  EXPECT_TRUE(scan.rows[0].concludes_nonpp);
  EXPECT_FALSE(scan.rows[0].a_exp);
  EXPECT_TRUE(scan.sound());
}

}  // namespace
}  // namespace permbinom
