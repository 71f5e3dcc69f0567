#include "permbinom/perm_criteria.hpp"

#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "permbinom/closed_form.hpp"

namespace permbinom {

u64 BinomialSpec::q() const { return static_cast<u64>(checked_pow(p, m)); }

u64 BinomialSpec::order() const {
  const u128 order = checked_pow(q(), e);
  if (order > Field::kMaxOrder) throw capacity_error("field order exceeds 2^40");
  return static_cast<u64>(order);
}

u64 BinomialSpec::subgroup_order() const { return (order() - 1) / (q() - 1); }

Field field_for(const BinomialSpec& spec, LogTables logs) {
  if (spec.m < 1 || spec.e < 1) throw std::invalid_argument("m and e must be at least 1");
  spec.order();  // range check before construction
  return Field(spec.p, spec.m * spec.e, std::nullopt, logs);
}

void check_spec(const Field& field, const BinomialSpec& spec) {
  if (spec.m < 1 || spec.e < 1) throw std::invalid_argument("m and e must be at least 1");
  if (field.characteristic() != spec.p || field.degree() != spec.m * spec.e) {
    throw std::invalid_argument("binomial parameters do not match the field");
  }
  if (spec.r < 1) throw std::invalid_argument("r must be at least 1");
  if (spec.a.is_zero() || spec.a.code >= field.order()) throw std::invalid_argument("a must be a nonzero field element");
}

Elem eval_f(const Field& field, const BinomialSpec& spec, Elem x) {
  if (x.is_zero()) return field.zero();
  const Elem inner = field.add(field.pow(x, spec.q() - 1), spec.a);
  return field.mul(field.pow(x, spec.r), inner);
}

u64 root_count(const Field& field, const BinomialSpec& spec) {
  check_spec(field, spec);
  const Elem t = field.pow(field.neg(spec.a), spec.subgroup_order());
  return t == field.one() ? spec.q() : 1;
}

u64 root_count_scan(const Field& field, const BinomialSpec& spec) {
  check_spec(field, spec);
  if (field.order() > kBruteForceCap) throw capacity_error("root scan limited to fields of order <= 2^26");
  u64 roots = 0;
  for (u64 code = 0; code < field.order(); ++code) {
    if (eval_f(field, spec, Elem{code}).is_zero()) ++roots;
  }
  return roots;
}

bool has_unique_root(const Field& field, const BinomialSpec& spec) { return root_count(field, spec) == 1; }

std::string to_string(Method m) {
  switch (m) {
    case Method::brute: return "brute";
    case Method::hermite: return "hermite";
    case Method::mu_d: return "mu";
    case Method::closed_form: return "closed";
  }
  return "unknown";
}

PermVerdict brute_force_is_pp(const Field& field, const BinomialSpec& spec) {
  check_spec(field, spec);
  const u64 Q = field.order();
  if (Q > kBruteForceCap) throw capacity_error("brute force limited to fields of order <= 2^26");
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> first(Q, kUnseen);

  PermVerdict v{.is_pp = true, .conclusive = true, .method = Method::brute, .witness = std::nullopt, .rule = "image_scan"};
  auto element_at = [&](std::uint32_t pos) { return pos == 0 ? field.zero() : field.elem_exp(pos - 1); };

  first[0] = 0;  // f(0) = 0
  const Elem omega = field.primitive();
  const Elem omega_r = field.pow(omega, spec.r);
  const Elem omega_q1 = field.pow(omega, spec.q() - 1);
  Elem x = field.one(), xr = field.one(), xq1 = field.one();
  for (u64 k = 0; k + 1 < Q; ++k) {
    const Elem image = field.mul(xr, field.add(xq1, spec.a));
    const std::uint32_t pos = static_cast<std::uint32_t>(k + 1);
    if (first[image.code] != kUnseen) {
      v.is_pp = false;
      v.witness = CollisionWitness{element_at(first[image.code]), x};
      return v;
    }
    first[image.code] = pos;
    x = field.mul(x, omega);
    xr = field.mul(xr, omega_r);
    xq1 = field.mul(xq1, omega_q1);
  }
  return v;
}

PermVerdict hermite_is_pp(const Field& field, const BinomialSpec& spec) {
  check_spec(field, spec);
  const u64 Q = field.order();
  if (Q > kHermiteCap) throw capacity_error("Hermite test limited to fields of order <= 2^20");
  PermVerdict v{.is_pp = false, .conclusive = true, .method = Method::hermite, .witness = std::nullopt, .rule = "hermite"};
  const u64 roots = root_count_scan(field, spec);
  if (roots != 1) {
    v.witness = RootCountWitness{roots};
    return v;
  }
  for (u64 N = 1; N + 2 <= Q; ++N) {
    if (N % spec.p == 0) continue;
    const Elem s = power_sum_single(field, spec, N);
    if (!s.is_zero()) {
      v.witness = HermiteWitness{N, s};
      return v;
    }
  }
  v.is_pp = true;
  return v;
}

PermVerdict hermite_is_pp(const Field& field, const std::function<Elem(Elem)>& f) {
  const u64 Q = field.order();
  if (Q > kGenericHermiteCap) throw capacity_error("generic Hermite test limited to fields of order <= 2^14");
  PermVerdict v{.is_pp = false, .conclusive = true, .method = Method::hermite, .witness = std::nullopt, .rule = "hermite"};
  std::vector<Elem> values(Q), powers(Q);
  u64 roots = 0;
  for (u64 code = 0; code < Q; ++code) {
    values[code] = powers[code] = f(Elem{code});
    if (values[code].is_zero()) ++roots;
  }
  if (roots != 1) {
    v.witness = RootCountWitness{roots};
    return v;
  }
  for (u64 N = 1; N + 2 <= Q; ++N) {
    if (N % field.characteristic() != 0) {
      Elem sum = field.zero();
      for (const Elem y : powers) sum = field.add(sum, y);
      if (!sum.is_zero()) {
        v.witness = HermiteWitness{N, sum};
        return v;
      }
    }
    for (u64 code = 0; code < Q; ++code) powers[code] = field.mul(powers[code], values[code]);
  }
  v.is_pp = true;
  return v;
}

PermVerdict mu_d_is_pp(const Field& field, const BinomialSpec& spec) {
  check_spec(field, spec);
  PermVerdict v{.is_pp = false, .conclusive = true, .method = Method::mu_d, .witness = std::nullopt, .rule = "mu_d"};
  const u64 q = spec.q();
  const u64 g = static_cast<u64>(gcd(spec.r, q - 1));
  if (g != 1) {
    v.witness = GcdWitness{spec.r, g};
    return v;
  }
  const u64 d = spec.subgroup_order();
  if (d > kSubgroupCap) throw capacity_error("subgroup criterion limited to d <= 2^26");
  // -a in mu_d sends some z to 0, outside the subgroup
  if (const u64 roots = root_count(field, spec); roots != 1) {
    v.witness = RootCountWitness{roots};
    return v;
  }

  const Subgroup mu = field.mu_subgroup(d);
  const Elem step_r = field.pow(mu.generator(), spec.r);
  auto image_at = [&](Elem z, Elem zr) { return field.mul(zr, field.pow(field.add(z, spec.a), q - 1)); };

  // index of the first z (as a power of the generator) hitting each image
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  const bool dense = field.order() <= (u64{1} << 27);
  std::vector<std::uint32_t> first_dense;
  std::unordered_map<u64, std::uint32_t> first_sparse;
  if (dense) {
    first_dense.assign(field.order(), kUnseen);
  } else {
    first_sparse.reserve(d);
  }

  Elem zr = field.one();
  std::uint32_t k = 0;
  for (const Elem z : mu) {
    const Elem image = image_at(z, zr);
    std::uint32_t prior = kUnseen;
    if (dense) {
      prior = first_dense[image.code];
      if (prior == kUnseen) first_dense[image.code] = k;
    } else if (auto [it, inserted] = first_sparse.emplace(image.code, k); !inserted) {
      prior = it->second;
    }
    if (prior != kUnseen) {
      v.witness = SubgroupCollisionWitness{field.pow(mu.generator(), prior), z};
      return v;
    }
    zr = field.mul(zr, step_r);
    ++k;
  }
  v.is_pp = true;
  return v;
}

PermVerdict closed_form_is_pp(const Field& field, const BinomialSpec& spec) {
  check_spec(field, spec);
  PermVerdict v{.is_pp = false, .conclusive = true, .method = Method::closed_form, .witness = std::nullopt, .rule = ""};
  const u64 roots = root_count(field, spec);
  if (roots != 1) {
    v.rule = "root_count";
    v.witness = RootCountWitness{roots};
    return v;
  }
  const u64 q = spec.q();
  const u64 g = static_cast<u64>(gcd(spec.r, q - 1));
  if (g != 1) {
    v.rule = "gcd";
    v.witness = GcdWitness{spec.r, g};
    return v;
  }
  if (spec.r == 1) {
    // x^q + a x is additive; a single root means a trivial kernel.
    v.rule = "linearized";
    v.is_pp = true;
    return v;
  }
  if (spec.e == 3) {
    if (auto w = witness_exponent(field, spec)) {
      v.rule = to_string(w->recipe);
      v.witness = HermiteWitness{w->cert.N, w->cert.value_single};
      return v;
    }
  }
  v.rule = "none";
  v.conclusive = false;
  return v;
}

bool witness_is_valid(const Field& field, const BinomialSpec& spec, const Witness& w) {
  check_spec(field, spec);
  const u64 q = spec.q();
  if (const auto* c = std::get_if<CollisionWitness>(&w)) {
    return c->x1 != c->x2 && eval_f(field, spec, c->x1) == eval_f(field, spec, c->x2);
  }
  if (const auto* c = std::get_if<SubgroupCollisionWitness>(&w)) {
    const u64 d = spec.subgroup_order();
    auto g = [&](Elem z) { return field.mul(field.pow(z, spec.r), field.pow(field.add(z, spec.a), q - 1)); };
    return c->z1 != c->z2 && field.pow(c->z1, d) == field.one() && field.pow(c->z2, d) == field.one() &&
           g(c->z1) == g(c->z2);
  }
  if (const auto* h = std::get_if<HermiteWitness>(&w)) {
    if (h->N < 1 || h->N + 2 > field.order() || h->value.is_zero()) return false;
    const Elem recomputed =
        field.order() <= kDirectCertCap ? power_sum_direct(field, spec, h->N) : power_sum_single(field, spec, h->N);
    return recomputed == h->value;
  }
  if (const auto* g = std::get_if<GcdWitness>(&w)) {
    return g->r == spec.r && g->gcd > 1 && gcd(spec.r, q - 1) == g->gcd;
  }
  if (const auto* rc = std::get_if<RootCountWitness>(&w)) {
    const u64 roots = field.order() <= kBruteForceCap ? root_count_scan(field, spec) : root_count(field, spec);
    return rc->roots != 1 && roots == rc->roots;
  }
  return false;
}

}  // namespace permbinom
