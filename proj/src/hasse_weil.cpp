#include "permbinom/hasse_weil.hpp"

#include <limits>
#include <stdexcept>

#include "permbinom/parallel.hpp"
#include "permbinom/theorems.hpp"

namespace permbinom {

namespace {

i128 to_signed(u128 v) {
  if (v > static_cast<u128>(std::numeric_limits<i128>::max())) throw std::overflow_error("value exceeds 127 bits");
  return static_cast<i128>(v);
}

// sum_{i<n} x^i y^(n-1-i)
Elem telescoped(const Field& field, Elem x, Elem y, u64 n) {
  Elem sum = field.zero();
  Elem xi = field.one();
  Elem yi = field.pow(y, static_cast<i128>(n - 1));
  const bool y_zero = y.is_zero();
  const Elem y_inv = y_zero ? field.zero() : field.inv(y);
  for (u64 i = 0; i < n; ++i) {
    if (y_zero) {
      // only the i = n-1 term survives
      if (i + 1 == n) sum = field.add(sum, xi);
    } else {
      sum = field.add(sum, field.mul(xi, yi));
      yi = field.mul(yi, y_inv);
    }
    xi = field.mul(xi, x);
  }
  return sum;
}

}  // namespace

HWReport hw_threshold(u64 q, unsigned e, u64 r) {
  if (!prime_power(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
  if (e == 0) throw std::invalid_argument("e must be at least 1");
  if (r == 0) throw std::invalid_argument("r must be at least 1");

  HWReport h;
  h.q = q;
  h.e = e;
  h.r = r;
  h.d = static_cast<u64>(checked_add(r, q - 2));
  h.gcd_r = static_cast<u64>(gcd(r, q - 1));
  h.gcd_branch = h.gcd_r > 1;

  const u128 Q = checked_pow(q, e);
  const u128 d = h.d;
  const u128 B = checked_mul(d - 1, d >= 2 ? d - 2 : 0);
  // d (d-1)^2 is even, so the constant term is an integer
  const u128 C0 = checked_add(checked_mul(d, checked_mul(d - 1, d - 1)) / 2, d + 2);
  const u128 B2Q = checked_mul(checked_mul(B, B), Q);

  const i128 A = to_signed(Q) - to_signed(C0);
  h.bound_lower = A - to_signed(ceil_sqrt(B2Q));
  // A - q > B sqrt(Q)  <=>  A - q > floor(B sqrt(Q)) for integer A - q
  h.predicts_nonpp = A - static_cast<i128>(q) > to_signed(isqrt(B2Q));

  const u128 shifted = checked_add(r, q) - 3;
  h.applicable = q >= 6 && r > 1 && checked_pow(shifted, 4) < Q;

  // lambda <= T with T = (d-1)^2 >= B/2: T^2 - B T - C >= 0
  const i128 T = to_signed(checked_mul(d - 1, d - 1));
  const i128 C = to_signed(checked_add(C0, q));
  const i128 value = to_signed(checked_mul(static_cast<u128>(T), static_cast<u128>(T))) -
                     to_signed(checked_mul(B, static_cast<u128>(T))) - C;
  h.radicand_ok = value >= 0 && 2 * T >= to_signed(B);
  h.lambda_check = h.radicand_ok && checked_mul(static_cast<u128>(T), static_cast<u128>(T)) < Q;
  h.concludes_nonpp = h.gcd_branch || (h.applicable && h.predicts_nonpp);
  return h;
}

Elem eval_F(const Field& field, const BinomialSpec& spec, Elem x, Elem y) {
  check_spec(field, spec);
  const u64 p = field.characteristic();
  const u64 n = spec.r + spec.q() - 1;
  if (x == y) {
    const Elem lead = field.mul(field.scalar(static_cast<i128>(n % p)), field.pow(x, static_cast<i128>(n - 1)));
    const Elem tail = field.mul(field.mul(spec.a, field.scalar(static_cast<i128>(spec.r % p))),
                                field.pow(x, static_cast<i128>(spec.r - 1)));
    return field.add(lead, tail);
  }
  return field.add(telescoped(field, x, y, n), field.mul(spec.a, telescoped(field, x, y, spec.r)));
}

CurveCount count_curve_points(const Field& field, const BinomialSpec& spec) {
  check_spec(field, spec);
  const u64 Q = field.order();
  if (Q > kCurveCountCap) throw capacity_error("curve point count limited to fields of order <= 2^12");
  std::vector<u64> preimages(Q, 0);
  CurveCount c;
  for (u64 code = 0; code < Q; ++code) {
    const Elem x{code};
    ++preimages[eval_f(field, spec, x).code];
    if (eval_F(field, spec, x, x).is_zero()) ++c.diagonal_count;
  }
  for (u64 n : preimages) c.offdiag_count += n * (n == 0 ? 0 : n - 1);
  c.zero_count = c.diagonal_count + c.offdiag_count;
  return c;
}

bool Theorem2Scan::sound() const {
  for (const auto& row : rows) {
    if (row.concludes_nonpp && row.confirmed && !*row.confirmed) return false;
  }
  return true;
}

Theorem2Scan theorem2_scan(u64 q, unsigned e, const std::vector<u64>& r_list, std::size_t a_samples, u64 seed,
                           unsigned jobs) {
  const auto pm = prime_power(q);
  if (!pm) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
  const BinomialSpec proto{pm->first, pm->second, e, 1, Elem{1}};
  const Field field = field_for(proto);
  DriverOptions opts;
  opts.a_samples = a_samples;
  opts.seed = seed;
  const auto exps = sample_a_exponents(field, proto, opts);

  struct Cell {
    HWReport base;
    std::optional<u64> a_exp;
  };
  std::vector<Cell> cells;
  for (u64 r : r_list) {
    const HWReport h = hw_threshold(q, e, r);
    if (h.applicable && !h.gcd_branch) {
      for (u64 i : exps) cells.push_back({h, i});
    } else {
      cells.push_back({h, std::nullopt});
    }
  }

  Theorem2Scan scan;
  scan.rows = parallel_map(cells.size(), jobs, [&](std::size_t idx) {
    HWReport row = cells[idx].base;
    if (const auto i = cells[idx].a_exp) {
      BinomialSpec s = proto;
      s.r = row.r;
      s.a = field.elem_exp(*i);
      row.a_exp = *i;
      row.confirmed = !mu_d_is_pp(field, s).is_pp;
    }
    return row;
  });
  return scan;
}

}  // namespace permbinom
