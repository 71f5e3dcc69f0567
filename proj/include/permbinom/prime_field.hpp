#ifndef PERMBINOM_PRIME_FIELD_HPP
#define PERMBINOM_PRIME_FIELD_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#if !defined(__SIZEOF_INT128__)
#error "permbinom requires compiler support for __int128 (GCC/Clang)."
#endif

namespace permbinom {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// Base-p expansion, least-significant digit first.
struct PDigits {
  std::vector<u64> digits;
  u64 p = 2;

  /// Digit i, reading zero past the stored length.
  u64 at(std::size_t i) const { return i < digits.size() ? digits[i] : 0; }
  bool operator==(const PDigits&) const = default;
};

/// A residue in [0, p).
struct Residue {
  u64 value = 0;
  u64 p = 2;

  bool is_zero() const { return value == 0; }
  bool operator==(const Residue&) const = default;
};

// Expansion of n in base p. With a width the result is zero-padded to exactly
// that many digits; std::domain_error("digit overflow") if n >= p^width.
PDigits p_digits(u128 n, u64 p, std::optional<std::size_t> width = std::nullopt);

// Inverse of p_digits. Throws std::overflow_error past 128 bits.
u128 from_digits(const PDigits& d);

// C(a, b) mod p for a single digit 0 <= a < p; zero when b < 0 or b > a.
Residue small_binom(u64 a, i128 b, u64 p);

// C(n, k) mod p as the digit-wise product of small binomials (Lucas).
Residue lucas_binom(u128 n, u128 k, u64 p);

// --- modular and integer helpers shared by the other modules ---------------

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u128 exp, u64 m);
// Inverse of a mod m; std::domain_error when gcd(a, m) != 1.
u64 inv_mod(u64 a, u64 m);
// Reduce a signed value into [0, m).
u64 reduce_mod(i128 x, u64 m);

u128 gcd(u128 a, u128 b);

// Checked arithmetic; std::overflow_error on wraparound.
u128 checked_add(u128 a, u128 b);
u128 checked_mul(u128 a, u128 b);
u128 checked_pow(u128 base, unsigned exp);

// Floor and ceiling of the square root of a 128-bit integer.
u128 isqrt(u128 n);
u128 ceil_sqrt(u128 n);

bool is_prime(u64 n);
// (p, m) with q = p^m, or nullopt when q is not a prime power.
std::optional<std::pair<u64, unsigned>> prime_power(u64 q);
// Trial-division factorization, primes ascending with multiplicity.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

std::string to_string(u128 v);
std::string to_string(i128 v);

}  // namespace permbinom

#endif  // PERMBINOM_PRIME_FIELD_HPP
