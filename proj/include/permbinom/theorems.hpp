#ifndef PERMBINOM_THEOREMS_HPP
#define PERMBINOM_THEOREMS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "permbinom/closed_form.hpp"
#include "permbinom/perm_criteria.hpp"

// Drivers that test each claimed classification of x^r (x^(q-1) + a) over
// F_{q^3} against the exhaustive oracle, one (r, a) cell at a time.
namespace permbinom {

enum class ClaimId { lemma4, prop1, lemma5, lemma6, theorem1, remark_even_char, r1_linearized };

std::string to_string(ClaimId id);
// Accepts the JSON names plus the CLI spellings ("remark-even", "r1-linearized").
std::optional<ClaimId> parse_claim(std::string_view name);

struct Disagreement {
  u64 r = 0;
  u64 a_exp = 0;
  bool predicted_pp = false;
  bool observed_pp = false;
  std::string note;
};

struct ClaimReport {
  static constexpr std::size_t kMaxDisagreements = 100;

  ClaimId claim = ClaimId::theorem1;
  u64 p = 0;
  unsigned m = 0;
  unsigned e = 3;
  u64 cases_run = 0;
  u64 cases_agreeing = 0;
  // Cases whose predicted non-permutation carried an analytic certificate
  // (gcd or nonzero power sum) rather than only an oracle collision.
  u64 cases_certified = 0;
  std::vector<Disagreement> disagreements;  // first kMaxDisagreements
  // Cases where the claim's designated certificate did not behave as its
  // argument says (vanishing sum, extra congruence solutions) although the
  // verdict itself agreed. Capped like disagreements.
  std::vector<Disagreement> certificate_gaps;
  u64 certificate_gap_count = 0;
  // theorem1 only: "conjecture-consistent" or "counterexample".
  std::optional<std::string> conjecture;
  double wall_time_ms = 0;

  bool ok() const { return cases_agreeing == cases_run; }
};

struct DriverOptions {
  std::size_t a_samples = 10;
  bool full_sweep = false;
  u64 seed = 0;
  unsigned jobs = 1;
};

// omega-exponents i in [1, q^e - 2] for a = omega^i: every admissible one on a
// full sweep, otherwise a_samples distinct draws from a seeded mt19937_64.
// With only_unique_root, exponents where f acquires extra roots are skipped.
std::vector<u64> sample_a_exponents(const Field& field, const BinomialSpec& proto, const DriverOptions& opts,
                                    bool only_unique_root = true);

// Brute force up to 2^20 elements; above that the subgroup criterion, with a
// brute-force confirmation of any permutation it reports.
PermVerdict oracle_verdict(const Field& field, const BinomialSpec& spec);

// Every r in [1, q^2+q+1] not of the form r0 q + 1 (1 <= r0 <= q) is not a
// permutation, certified by N = (q-1) + (q-1) q^2; r = 1 is a permutation.
ClaimReport verify_lemma4(u64 p, unsigned m, const DriverOptions& opts);

// Odd characteristic, r = r0 q + 1: odd r0 has gcd(r, q-1) >= 2; even
// r0 <= q-1 whose (r0-2)/2 has base-p digits <= (p-1)/2 is certified by the
// half-digit exponent with the single solution ((q-1)/2, (r0-2)/2, r0/2 - 1).
ClaimReport verify_prop1(u64 p, unsigned m, const DriverOptions& opts);

// Odd characteristic, r = r0 q + 1 with r0 even and gcd(r0+1, q-1) = 1: the
// N = k(q-1) witness with k = q^2+q-1 (r0 <= (q-1)/2), q^2-q+1 (r0 > (q-1)/2)
// or q^2-1 (p | r0) is nonzero. Returns {lemma5 (p does not divide r0), lemma6 (p | r0)}.
std::vector<ClaimReport> verify_lemma5_6(u64 p, unsigned m, const DriverOptions& opts);

// Odd characteristic: over r in [1, q^2+q+1] the permutations are exactly r = 1.
ClaimReport verify_theorem1(u64 p, unsigned m, const DriverOptions& opts);

// Characteristic 2, r = q^2 + 1: a permutation iff a^(q^2+q+1) != 1. Every
// nonzero a is checked when the field has at most 2^16 elements.
ClaimReport verify_remark_even_char(u64 p, unsigned m, const DriverOptions& opts);

// r = 1, every nonzero a: x^q + a x permutes iff a^(q^2+q+1) != -1.
ClaimReport verify_r1_linearized(u64 p, unsigned m, const DriverOptions& opts);

inline constexpr u64 kLinearizedSweepCap = u64{1} << 14;

std::vector<ClaimReport> verify_claim(ClaimId id, u64 p, unsigned m, const DriverOptions& opts);

}  // namespace permbinom

#endif  // PERMBINOM_THEOREMS_HPP
