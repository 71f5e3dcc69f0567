#ifndef PERMBINOM_HASSE_WEIL_HPP
#define PERMBINOM_HASSE_WEIL_HPP

#include <optional>
#include <vector>

#include "permbinom/perm_criteria.hpp"

namespace permbinom {

// Point-count bound for the curve F(X, Y) = (f(X) - f(Y)) / (X - Y) of degree
// d = r + q - 2 over F_{q^e}. Every comparison against a power q^(e/2) or
// q^(e/4) is settled in integers by squaring or raising to the 4th power.
struct HWReport {
  u64 q = 0;
  unsigned e = 0;
  u64 r = 0;
  u64 d = 0;
  // q >= 6 and 1 < r < q^(e/4) - q + 3.
  bool applicable = false;
  u64 gcd_r = 1;            // gcd(r, q - 1)
  bool gcd_branch = false;  // gcd_r > 1: not a permutation without the bound
  // floor(q^e - (d-1)(d-2) q^(e/2) - d(d-1)^2/2 - d - 2); exact for even e.
  i128 bound_lower = 0;
  // q^e - (d-1)(d-2) q^(e/2) - d(d-1)^2/2 - q - d - 2 > 0.
  bool predicts_nonpp = false;
  // The larger root of x^2 - (d-1)(d-2) x - d(d-1)^2/2 - d - q - 2 is at most (d-1)^2.
  bool radicand_ok = false;
  // radicand_ok and (d-1)^2 < q^(e/2).
  bool lambda_check = false;
  // gcd_branch, or applicable with predicts_nonpp.
  bool concludes_nonpp = false;
  std::optional<u64> a_exp;
  std::optional<bool> confirmed;  // oracle found f not a permutation
};

// std::invalid_argument for q not a prime power, e = 0 or r = 0;
// std::overflow_error when an intermediate leaves 128 bits.
HWReport hw_threshold(u64 q, unsigned e, u64 r);

// F(X, Y) by the telescoped sums  sum X^i Y^(n-1-i)  for n = r+q-1 and n = r;
// on the diagonal (r+q-1) X^(r+q-2) + a r X^(r-1).
Elem eval_F(const Field& field, const BinomialSpec& spec, Elem x, Elem y);

struct CurveCount {
  u64 zero_count = 0;
  u64 diagonal_count = 0;
  u64 offdiag_count = 0;
};

inline constexpr u64 kCurveCountCap = u64{1} << 12;

// Off-diagonal zeros are ordered collision pairs of f, counted from the
// multiset of values of f; the diagonal is scanned with the formula above.
CurveCount count_curve_points(const Field& field, const BinomialSpec& spec);

struct Theorem2Scan {
  std::vector<HWReport> rows;  // one per (r, a), ordered by (r, a exponent)
  // Every row that concludes not-PP was confirmed by the oracle.
  bool sound() const;
};

// Confirms each prediction with the subgroup criterion. Rows for r where the
// bound is inapplicable carry no a and no confirmation.
Theorem2Scan theorem2_scan(u64 q, unsigned e, const std::vector<u64>& r_list, std::size_t a_samples, u64 seed,
                           unsigned jobs);

}  // namespace permbinom

#endif  // PERMBINOM_HASSE_WEIL_HPP
