#include "permbinom/polynomial.hpp"

#include <stdexcept>

#include "permbinom/ext_field.hpp"

namespace permbinom::poly {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) {
  for (std::size_t i = a.size(); i > 0; --i) {
    if (a[i - 1] != 0) return static_cast<int>(i - 1);
  }
  return -1;
}

Poly sub(const Poly& a, const Poly& b, u64 p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const u64 x = i < a.size() ? a[i] : 0;
    const u64 y = i < b.size() ? b[i] : 0;
    out[i] = x >= y ? x - y : x + (p - y);
  }
  trim(out);
  return out;
}

Poly mul(const Poly& a, const Poly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = (out[i + j] + mul_mod(a[i], b[j], p)) % p;
    }
  }
  trim(out);
  return out;
}

Poly rem(Poly a, const Poly& divisor, u64 p) {
  const int dd = degree(divisor);
  if (dd < 0) throw std::domain_error("polynomial division by zero");
  const u64 lead_inv = inv_mod(divisor[dd], p);
  trim(a);
  while (degree(a) >= dd) {
    const int da = degree(a);
    const u64 c = mul_mod(a[da], lead_inv, p);
    const int shift = da - dd;
    for (int i = 0; i <= dd; ++i) {
      const u64 t = mul_mod(c, divisor[i], p);
      u64& slot = a[shift + i];
      slot = slot >= t ? slot - t : slot + (p - t);
    }
    trim(a);
  }
  return a;
}

Poly gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const u64 inv = inv_mod(a.back(), p);
    for (auto& c : a) c = mul_mod(c, inv, p);
  }
  return a;
}

Poly pow_mod(Poly base, u128 exp, const Poly& modulus, u64 p) {
  Poly result{1 % p};
  trim(result);
  base = rem(std::move(base), modulus, p);
  while (exp != 0) {
    if (exp & 1) result = rem(mul(result, base, p), modulus, p);
    exp >>= 1;
    if (exp != 0) base = rem(mul(base, base, p), modulus, p);
  }
  return result;
}

bool is_irreducible(std::span<const u64> monic, u64 p) {
  Poly f(monic.begin(), monic.end());
  trim(f);
  const int n = degree(f);
  if (n < 1 || f[n] != 1) throw std::invalid_argument("modulus must be monic of positive degree");
  if (n == 1) return true;
  const Poly x{0, 1};
  Poly x_pow = x;  // x^(p^i) mod f
  for (int i = 1; i <= n / 2; ++i) {
    x_pow = pow_mod(x_pow, p, f, p);
    if (degree(gcd(sub(x_pow, x, p), f, p)) != 0) return false;
  }
  return true;
}

Poly find_irreducible(u64 p, unsigned n) {
  if (n < 1) throw std::invalid_argument("extension degree must be at least 1");
  if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
  const u128 count = checked_pow(p, n);
  if (count > Field::kMaxOrder) throw capacity_error("field order exceeds 2^40");
  for (u128 tail = 0; tail < count; ++tail) {
    Poly f = p_digits(tail, p, n).digits;
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace permbinom::poly
