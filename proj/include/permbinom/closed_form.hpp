#ifndef PERMBINOM_CLOSED_FORM_HPP
#define PERMBINOM_CLOSED_FORM_HPP

#include <optional>
#include <string>
#include <vector>

#include "permbinom/perm_criteria.hpp"

// Closed-form evaluation of S(N) = sum_{x in F_{q^e}} f(x)^N for the binomial
// f(x) = x^r (x^(q-1) + a). Any nonzero S(N) with 1 <= N <= q^e - 2 proves f
// is not a permutation; a zero value proves nothing on its own.
namespace permbinom {

/// N = alpha + beta q + gamma q^2, digits in [0, q-1].
struct ExponentDecomp {
  u64 N = 0;
  u64 alpha = 0, beta = 0, gamma = 0;

  u64 digit_sum() const { return alpha + beta + gamma; }
  bool operator==(const ExponentDecomp&) const = default;
};

// Base-q digits of 1 <= N <= q^3 - 2; std::domain_error otherwise.
ExponentDecomp decompose_exponent(u64 N, u64 q);

/// A term (i, j, k) of the triple expansion whose x-exponent
/// rN + (q-1)i + (q^2-q)j + (1-q^2)k vanishes mod q^3 - 1.
struct CongruenceSolution {
  u64 i = 0, j = 0, k = 0;
  auto operator<=>(const CongruenceSolution&) const = default;
};

/// The reduced congruence  base + q i - (q+1) j + k = 0 (mod q^2+q+1),
/// base = q r s/(q-1) + r(q beta - gamma) with s = alpha + beta + gamma.
/// For s = 2(q-1) the base equals r(2 + alpha + beta + q beta).
/// min/max bound the left side over the box 0<=i<=alpha, 0<=j<=beta, 0<=k<=gamma.
struct CongruenceBounds {
  i128 base = 0;
  i128 min = 0;
  i128 max = 0;
  i128 spread() const { return max - min; }
};

// Requires (q-1) | r s; std::invalid_argument otherwise.
CongruenceBounds congruence_bounds(u64 q, u64 r, u64 alpha, u64 beta, u64 gamma);

// Every (i, j, k) in the box solving the congruence, ascending. Empty when
// (q-1) does not divide r (alpha + beta + gamma), since no term can survive.
std::vector<CongruenceSolution> solve_congruence_triple(u64 q, u64 r, u64 alpha, u64 beta, u64 gamma);

// Literal summation over the field (q^e <= 2^26).
Elem power_sum_direct(const Field& field, const BinomialSpec& spec, u64 N);

// -a^N sum C(alpha,i) C(beta,j) C(gamma,k) a^(-i-qj-q^2 k) over the solutions.
// Only for e = 3. Surviving terms are appended to `terms` when given.
Elem power_sum_triple(const Field& field, const BinomialSpec& spec, u64 N,
                      std::vector<CongruenceSolution>* terms = nullptr);

// -sum C(N, n1) a^(N - n1) over n1 in [0, N] with rN + (q-1) n1 = 0 mod q^e - 1.
// Valid for every r and e. n1 values with a nonzero binomial are appended to
// `terms` when given.
Elem power_sum_single(const Field& field, const BinomialSpec& spec, u64 N, std::vector<u64>* terms = nullptr);

// The n1 in [0, N] solving rN + (q-1) n1 = 0 mod q^e - 1 (an arithmetic
// progression of step (q^e-1)/gcd(q-1, q^e-1)), regardless of binomials.
std::vector<u64> single_index_candidates(u64 q, unsigned e, u64 r, u64 N);

/// S(N) computed by every applicable route.
struct PowerSumCert {
  u64 N = 0;
  std::optional<ExponentDecomp> decomp;  // e = 3
  std::optional<Elem> value_direct;      // small fields
  std::optional<Elem> value_triple;      // e = 3
  Elem value_single;
  std::vector<CongruenceSolution> solutions;
  std::vector<u64> n1_terms;

  bool agree() const;
  bool nonzero() const { return !value_single.is_zero(); }
};

inline constexpr u64 kDirectCertCap = u64{1} << 20;

PowerSumCert certify_power_sum(const Field& field, const BinomialSpec& spec, u64 N);

enum class WitnessRecipe {
  outer_digits,        // N = (q-1) + (q-1) q^2
  half_digits,         // alpha = beta = (q-1)/2, gamma = q-1; odd q only
  multiple_q2_q_m1,    // N = (q^2+q-1)(q-1)
  multiple_q2_mq_p1,   // N = (q^2-q+1)(q-1)
  multiple_q2_m1,      // N = (q^2-1)(q-1)
};
std::string to_string(WitnessRecipe r);

struct WitnessCandidate {
  WitnessRecipe recipe;
  u64 N;
};
// Recipes in trial order for the given q.
std::vector<WitnessCandidate> witness_candidates(u64 q);
u64 witness_exponent_for(WitnessRecipe recipe, u64 q);

struct WitnessResult {
  WitnessRecipe recipe;
  PowerSumCert cert;
};

// First recipe (in witness_candidates order) with a nonzero certified sum.
// Requires e = 3. std::logic_error if the evaluation routes disagree.
std::optional<WitnessResult> witness_exponent(const Field& field, const BinomialSpec& spec);

}  // namespace permbinom

#endif  // PERMBINOM_CLOSED_FORM_HPP
