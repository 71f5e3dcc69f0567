#include "permbinom/prime_field.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace permbinom {

namespace {

constexpr u128 kU128Max = ~static_cast<u128>(0);

void require_modulus(u64 p) {
  if (p < 2) throw std::invalid_argument("modulus must be at least 2");
}

}  // namespace

PDigits p_digits(u128 n, u64 p, std::optional<std::size_t> width) {
  require_modulus(p);
  PDigits out;
  out.p = p;
  if (n == 0) out.digits.push_back(0);
  while (n != 0) {
    out.digits.push_back(static_cast<u64>(n % p));
    n /= p;
  }
  if (width) {
    if (out.digits.size() > *width) {
      // n == 0 with width 0 is the one case where the single zero digit is spurious.
      if (!(*width == 0 && out.digits.size() == 1 && out.digits[0] == 0)) {
        throw std::domain_error("digit overflow");
      }
    }
    out.digits.resize(*width, 0);
  }
  return out;
}

u128 from_digits(const PDigits& d) {
  u128 value = 0;
  for (auto it = d.digits.rbegin(); it != d.digits.rend(); ++it) {
    value = checked_add(checked_mul(value, d.p), *it);
  }
  return value;
}

Residue small_binom(u64 a, i128 b, u64 p) {
  require_modulus(p);
  if (a >= p) throw std::invalid_argument("small_binom: top digit must be below p");
  if (b < 0 || b > static_cast<i128>(a)) return {0, p};
  u64 k = static_cast<u64>(b);
  k = std::min(k, a - k);
  u64 num = 1 % p;
  u64 den = 1 % p;
  for (u64 i = 1; i <= k; ++i) {
    num = mul_mod(num, (a - k + i) % p, p);
    den = mul_mod(den, i % p, p);
  }
  // den is a product of values in [1, p), hence invertible.
  return {mul_mod(num, inv_mod(den, p), p), p};
}

Residue lucas_binom(u128 n, u128 k, u64 p) {
  require_modulus(p);
  if (k > n) return {0, p};
  u64 acc = 1 % p;
  while (k != 0) {
    const u64 nd = static_cast<u64>(n % p);
    const u64 kd = static_cast<u64>(k % p);
    if (kd > nd) return {0, p};
    acc = mul_mod(acc, small_binom(nd, kd, p).value, p);
    if (acc == 0) return {0, p};
    n /= p;
    k /= p;
  }
  return {acc, p};
}

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u128 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 inv_mod(u64 a, u64 m) {
  i128 old_r = a % m, r = m;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    const i128 quot = old_r / r;
    i128 t = old_r - quot * r;
    old_r = r;
    r = t;
    t = old_s - quot * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw std::domain_error("inv_mod: value is not invertible");
  return reduce_mod(old_s, m);
}

u64 reduce_mod(i128 x, u64 m) {
  i128 r = x % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

u128 gcd(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u128 checked_add(u128 a, u128 b) {
  if (a > kU128Max - b) throw std::overflow_error("integer range exceeded (128-bit)");
  return a + b;
}

u128 checked_mul(u128 a, u128 b) {
  if (a != 0 && b > kU128Max / a) throw std::overflow_error("integer range exceeded (128-bit)");
  return a * b;
}

u128 checked_pow(u128 base, unsigned exp) {
  u128 result = 1;
  for (unsigned i = 0; i < exp; ++i) result = checked_mul(result, base);
  return result;
}

u128 isqrt(u128 n) {
  if (n < 2) return n;
  // Newton iteration from an over-estimate: 2^ceil(bits/2).
  int bits = 0;
  for (u128 t = n; t != 0; t >>= 1) ++bits;
  u128 x = static_cast<u128>(1) << ((bits + 1) / 2);
  while (true) {
    const u128 y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

u128 ceil_sqrt(u128 n) {
  const u128 s = isqrt(n);
  return s * s == n ? s : s + 1;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::optional<std::pair<u64, unsigned>> prime_power(u64 q) {
  if (q < 2) return std::nullopt;
  const auto factors = factorize(q);
  if (factors.size() != 1) return std::nullopt;
  return factors.front();
}

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  if (n < 2) return out;
  auto strip = [&](u64 f) {
    unsigned e = 0;
    while (n % f == 0) {
      n /= f;
      ++e;
    }
    if (e) out.emplace_back(f, e);
  };
  strip(2);
  for (u64 f = 3; f <= n / f; f += 2) strip(f);
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string to_string(i128 v) {
  if (v < 0) return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
  return to_string(static_cast<u128>(v));
}

}  // namespace permbinom
