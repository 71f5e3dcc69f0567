#include "permbinom/closed_form.hpp"

#include <algorithm>
#include <stdexcept>

namespace permbinom {

ExponentDecomp decompose_exponent(u64 N, u64 q) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  const u128 cube = checked_pow(q, 3);
  if (N < 1 || N > cube - 2) throw std::domain_error("exponent out of range [1, q^3 - 2]");
  return ExponentDecomp{N, N % q, (N / q) % q, N / (q * q)};
}

CongruenceBounds congruence_bounds(u64 q, u64 r, u64 alpha, u64 beta, u64 gamma) {
  const i128 s = static_cast<i128>(alpha) + beta + gamma;
  const i128 rs = static_cast<i128>(r) * s;
  if (rs % (q - 1) != 0) throw std::invalid_argument("congruence needs (q-1) | r(alpha+beta+gamma)");
  CongruenceBounds b;
  b.base = static_cast<i128>(q) * (rs / (q - 1)) + static_cast<i128>(r) * (static_cast<i128>(q) * beta - gamma);
  b.min = b.base - static_cast<i128>(q + 1) * beta;
  b.max = b.base + static_cast<i128>(q) * alpha + gamma;
  return b;
}

std::vector<CongruenceSolution> solve_congruence_triple(u64 q, u64 r, u64 alpha, u64 beta, u64 gamma) {
  const u128 rs = static_cast<u128>(r) * (alpha + beta + gamma);
  if (rs % (q - 1) != 0) return {};
  const auto bounds = congruence_bounds(q, r, alpha, beta, gamma);
  const u64 D = q * q + q + 1;
  std::vector<CongruenceSolution> out;
  for (u64 i = 0; i <= alpha; ++i) {
    for (u64 j = 0; j <= beta; ++j) {
      // base + q i - (q+1) j + k = 0 fixes k mod D; gamma < D leaves at most one k.
      const i128 partial = bounds.base + static_cast<i128>(q) * i - static_cast<i128>(q + 1) * j;
      const u64 k = reduce_mod(-partial, D);
      if (k <= gamma) out.push_back({i, j, k});
    }
  }
  return out;
}

Elem power_sum_direct(const Field& field, const BinomialSpec& spec, u64 N) {
  check_spec(field, spec);
  if (field.order() > kBruteForceCap) throw capacity_error("direct power sum limited to fields of order <= 2^26");
  Elem sum = field.zero();
  for (u64 code = 0; code < field.order(); ++code) {
    sum = field.add(sum, field.pow(eval_f(field, spec, Elem{code}), N));
  }
  return sum;
}

Elem power_sum_triple(const Field& field, const BinomialSpec& spec, u64 N, std::vector<CongruenceSolution>* terms) {
  check_spec(field, spec);
  if (spec.e != 3) throw std::invalid_argument("triple expansion requires e = 3");
  const u64 q = spec.q();
  const u64 p = spec.p;
  const auto dec = decompose_exponent(N, q);
  const auto solutions = solve_congruence_triple(q, spec.r, dec.alpha, dec.beta, dec.gamma);
  Elem inner = field.zero();
  for (const auto& s : solutions) {
    u64 coeff = lucas_binom(dec.alpha, s.i, p).value;
    coeff = mul_mod(coeff, lucas_binom(dec.beta, s.j, p).value, p);
    coeff = mul_mod(coeff, lucas_binom(dec.gamma, s.k, p).value, p);
    if (coeff == 0) continue;
    const i128 exponent = -static_cast<i128>(s.i) - static_cast<i128>(q) * s.j - static_cast<i128>(q) * q * s.k;
    inner = field.add(inner, field.mul(field.scalar(coeff), field.pow(spec.a, exponent)));
    if (terms) terms->push_back(s);
  }
  return field.neg(field.mul(field.pow(spec.a, N), inner));
}

std::vector<u64> single_index_candidates(u64 q, unsigned e, u64 r, u64 N) {
  const u128 group = checked_pow(q, e) - 1;
  const u128 g = gcd(q - 1, group);
  const u128 target = (group - (static_cast<u128>(r) * N) % group) % group;  // -rN mod Q-1
  if (target % g != 0) return {};
  const u128 step = group / g;
  u128 start = 0;
  if (step > 1) {
    const u64 unit = static_cast<u64>(((q - 1) / g) % step);
    start = static_cast<u128>(mul_mod(static_cast<u64>((target / g) % step), inv_mod(unit, static_cast<u64>(step)),
                                      static_cast<u64>(step)));
  }
  std::vector<u64> out;
  for (u128 n1 = start; n1 <= N; n1 += step) out.push_back(static_cast<u64>(n1));
  return out;
}

Elem power_sum_single(const Field& field, const BinomialSpec& spec, u64 N, std::vector<u64>* terms) {
  check_spec(field, spec);
  Elem sum = field.zero();
  for (u64 n1 : single_index_candidates(spec.q(), spec.e, spec.r, N)) {
    const auto binom = lucas_binom(N, n1, spec.p);
    if (binom.is_zero()) continue;
    sum = field.add(sum, field.mul(field.scalar(binom.value), field.pow(spec.a, N - n1)));
    if (terms) terms->push_back(n1);
  }
  return field.neg(sum);
}

bool PowerSumCert::agree() const {
  if (value_direct && *value_direct != value_single) return false;
  if (value_triple && *value_triple != value_single) return false;
  return true;
}

PowerSumCert certify_power_sum(const Field& field, const BinomialSpec& spec, u64 N) {
  PowerSumCert cert;
  cert.N = N;
  cert.value_single = power_sum_single(field, spec, N, &cert.n1_terms);
  if (spec.e == 3) {
    cert.decomp = decompose_exponent(N, spec.q());
    cert.value_triple = power_sum_triple(field, spec, N, &cert.solutions);
  }
  if (field.order() <= kDirectCertCap) cert.value_direct = power_sum_direct(field, spec, N);
  return cert;
}

std::string to_string(WitnessRecipe r) {
  switch (r) {
    case WitnessRecipe::outer_digits: return "outer_digits";
    case WitnessRecipe::half_digits: return "half_digits";
    case WitnessRecipe::multiple_q2_q_m1: return "multiple_q2+q-1";
    case WitnessRecipe::multiple_q2_mq_p1: return "multiple_q2-q+1";
    case WitnessRecipe::multiple_q2_m1: return "multiple_q2-1";
  }
  return "unknown";
}

u64 witness_exponent_for(WitnessRecipe recipe, u64 q) {
  switch (recipe) {
    case WitnessRecipe::outer_digits: return (q - 1) + (q - 1) * q * q;
    case WitnessRecipe::half_digits: {
      if (q % 2 == 0) throw std::invalid_argument("half_digits recipe needs odd q");
      const u64 h = (q - 1) / 2;
      return h + h * q + (q - 1) * q * q;
    }
    case WitnessRecipe::multiple_q2_q_m1: return (q * q + q - 1) * (q - 1);
    case WitnessRecipe::multiple_q2_mq_p1: return (q * q - q + 1) * (q - 1);
    case WitnessRecipe::multiple_q2_m1: return (q * q - 1) * (q - 1);
  }
  throw std::invalid_argument("unknown witness recipe");
}

std::vector<WitnessCandidate> witness_candidates(u64 q) {
  std::vector<WitnessCandidate> out;
  const u64 top = q * q * q - 2;
  for (auto recipe : {WitnessRecipe::outer_digits, WitnessRecipe::half_digits, WitnessRecipe::multiple_q2_q_m1,
                      WitnessRecipe::multiple_q2_mq_p1, WitnessRecipe::multiple_q2_m1}) {
    if (recipe == WitnessRecipe::half_digits && q % 2 == 0) continue;
    const u64 N = witness_exponent_for(recipe, q);
    if (N >= 1 && N <= top) out.push_back({recipe, N});
  }
  return out;
}

std::optional<WitnessResult> witness_exponent(const Field& field, const BinomialSpec& spec) {
  check_spec(field, spec);
  if (spec.e != 3) throw std::invalid_argument("witness recipes require e = 3");
  for (const auto& cand : witness_candidates(spec.q())) {
    auto cert = certify_power_sum(field, spec, cand.N);
    if (!cert.agree()) throw std::logic_error("power-sum routes disagree at N = " + std::to_string(cand.N));
    if (cert.nonzero()) return WitnessResult{cand.recipe, std::move(cert)};
  }
  return std::nullopt;
}

}  // namespace permbinom
