#ifndef PERMBINOM_PERM_CRITERIA_HPP
#define PERMBINOM_PERM_CRITERIA_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>

#include "permbinom/ext_field.hpp"

namespace permbinom {

/// f(x) = x^r (x^(q-1) + a) over F_{q^e}, q = p^m.
struct BinomialSpec {
  u64 p = 2;
  unsigned m = 1;
  unsigned e = 1;
  u64 r = 1;
  Elem a{1};

  u64 q() const;
  u64 order() const;  // q^e
  // (q^e - 1) / (q - 1): the order of the subgroup the criterion of
  // x^r h(x^(q-1)) reduces to.
  u64 subgroup_order() const;
};

// The field F_{p^(m e)} the binomial lives in.
Field field_for(const BinomialSpec& spec, LogTables logs = LogTables::automatic);

// Throws std::invalid_argument unless spec matches field (characteristic,
// degree m*e, a nonzero element of it, r >= 1).
void check_spec(const Field& field, const BinomialSpec& spec);

Elem eval_f(const Field& field, const BinomialSpec& spec, Elem x);

// Number of roots of f: 1 + (q - 1) [(-a)^((q^e-1)/(q-1)) = 1].
u64 root_count(const Field& field, const BinomialSpec& spec);
// Same, by scanning every field element.
u64 root_count_scan(const Field& field, const BinomialSpec& spec);
// a lies outside the excluded class: f has a single root. For e = 3 this is
// a^(q^2+q+1) != -1.
bool has_unique_root(const Field& field, const BinomialSpec& spec);

enum class Method { brute, hermite, mu_d, closed_form };
std::string to_string(Method m);

struct CollisionWitness {
  Elem x1, x2;  // f(x1) = f(x2), x1 != x2
};
struct SubgroupCollisionWitness {
  Elem z1, z2;  // g(z1) = g(z2) on mu_d, g(z) = z^r (z + a)^(q-1)
};
struct HermiteWitness {
  u64 N = 0;  // sum over the field of f(x)^N
  Elem value;
};
struct GcdWitness {
  u64 r = 0;
  u64 gcd = 0;  // gcd(r, q - 1) > 1
};
struct RootCountWitness {
  u64 roots = 0;  // != 1
};

using Witness = std::variant<CollisionWitness, SubgroupCollisionWitness, HermiteWitness, GcdWitness, RootCountWitness>;

struct PermVerdict {
  bool is_pp = false;
  // False only for closed_form when no analytic certificate applies.
  bool conclusive = true;
  Method method = Method::brute;
  std::optional<Witness> witness;
  // Name of the closed-form rule or witness recipe that decided the verdict.
  std::string rule;
};

inline constexpr u64 kBruteForceCap = u64{1} << 26;
inline constexpr u64 kHermiteCap = u64{1} << 20;
inline constexpr u64 kSubgroupCap = u64{1} << 26;
inline constexpr u64 kGenericHermiteCap = u64{1} << 14;

// Exhaustive image scan over 0, omega^0, omega^1, ...; the first repeated
// image in that order is the witness.
PermVerdict brute_force_is_pp(const Field& field, const BinomialSpec& spec);

// Hermite's criterion: one root, and the power sum of f^N vanishes for every
// 1 <= N <= Q-2 with p not dividing N (ascending; first failure is reported).
// Power sums come from the closed-form single-index expansion.
PermVerdict hermite_is_pp(const Field& field, const BinomialSpec& spec);

// Hermite's criterion for an arbitrary map of the field, by direct summation.
PermVerdict hermite_is_pp(const Field& field, const std::function<Elem(Elem)>& f);

// gcd(r, q-1) = 1 and z -> z^r (z + a)^(q-1) injective on mu_d,
// d = (q^e - 1)/(q - 1).
PermVerdict mu_d_is_pp(const Field& field, const BinomialSpec& spec);

// Analytic rules only: root count, gcd, the r = 1 linearized case, and the
// fixed witness-exponent recipes (e = 3). Inconclusive when none applies.
PermVerdict closed_form_is_pp(const Field& field, const BinomialSpec& spec);

// Re-evaluates a witness; true when it genuinely refutes the permutation property.
bool witness_is_valid(const Field& field, const BinomialSpec& spec, const Witness& w);

}  // namespace permbinom

#endif  // PERMBINOM_PERM_CRITERIA_HPP
