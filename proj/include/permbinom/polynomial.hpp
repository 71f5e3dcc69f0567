#ifndef PERMBINOM_POLYNOMIAL_HPP
#define PERMBINOM_POLYNOMIAL_HPP

#include <span>
#include <vector>

#include "permbinom/prime_field.hpp"

// Dense univariate polynomials over F_p, coefficients constant term first.
// Only what field construction needs.
namespace permbinom::poly {

using Poly = std::vector<u64>;

// Drop leading zero coefficients. The zero polynomial is the empty vector.
void trim(Poly& a);
int degree(const Poly& a);

Poly sub(const Poly& a, const Poly& b, u64 p);
Poly mul(const Poly& a, const Poly& b, u64 p);
// Remainder of a modulo a nonzero divisor.
Poly rem(Poly a, const Poly& divisor, u64 p);
Poly gcd(Poly a, Poly b, u64 p);
Poly pow_mod(Poly base, u128 exp, const Poly& modulus, u64 p);

// Rabin/Ben-Or test: a monic f of degree n is irreducible iff
// gcd(x^(p^i) - x, f) = 1 for every 1 <= i <= n/2.
bool is_irreducible(std::span<const u64> monic, u64 p);

// Smallest monic irreducible of degree n, candidates ordered by their lower
// coefficients read as a base-p numeral with c_{n-1} most significant.
Poly find_irreducible(u64 p, unsigned n);

}  // namespace permbinom::poly

#endif  // PERMBINOM_POLYNOMIAL_HPP
