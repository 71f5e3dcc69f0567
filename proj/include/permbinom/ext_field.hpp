#ifndef PERMBINOM_EXT_FIELD_HPP
#define PERMBINOM_EXT_FIELD_HPP

#include <compare>
#include <cstdint>
#include <iterator>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permbinom/errors.hpp"
#include "permbinom/prime_field.hpp"

namespace permbinom {

/// An element of F_{p^n} in the polynomial basis.
///
/// The coefficient vector (c_0, ..., c_{n-1}) is packed as the base-p numeral
/// code = c_0 + c_1 p + ... + c_{n-1} p^{n-1}, so comparing codes is the
/// lexicographic order on (c_{n-1}, ..., c_0). Field::coeffs() unpacks it.
struct Elem {
  u64 code = 0;

  bool is_zero() const { return code == 0; }
  auto operator<=>(const Elem&) const = default;
};

enum class LogTables { automatic, on, off };

class Subgroup;

/// The field F_{p^n} = F_p[x] / (modulus).
///
/// Immutable after construction; copies share the discrete-log tables and a
/// single instance may be used from any number of threads.
class Field {
 public:
  static constexpr u64 kMaxOrder = u64{1} << 40;
  static constexpr u64 kMaxLogOrder = u64{1} << 24;

  // Without an explicit modulus the smallest irreducible of degree n is used.
  // A supplied modulus must be monic of degree n and irreducible.
  // LogTables::automatic builds tables when p^n <= 2^24.
  Field(u64 p, unsigned n, std::optional<std::vector<u64>> modulus = std::nullopt,
        LogTables logs = LogTables::automatic);

  u64 characteristic() const { return p_; }
  unsigned degree() const { return n_; }
  u64 order() const { return order_; }
  const std::vector<u64>& modulus() const { return modulus_; }
  bool has_log_tables() const { return static_cast<bool>(tables_); }

  Elem zero() const { return Elem{0}; }
  Elem one() const { return Elem{1}; }
  // The integer c mapped into the prime subfield.
  Elem scalar(i128 c) const { return Elem{reduce_mod(c, p_)}; }
  // The canonical generator of the multiplicative group (see find_primitive).
  Elem primitive() const { return primitive_; }

  Elem element(u64 code) const;
  Elem from_coeffs(std::span<const u64> coeffs) const;
  std::vector<u64> coeffs(Elem x) const;

  Elem add(Elem x, Elem y) const;
  Elem sub(Elem x, Elem y) const;
  Elem neg(Elem x) const;
  Elem mul(Elem x, Elem y) const;
  // std::domain_error on zero.
  Elem inv(Elem x) const;
  // Negative exponents are allowed for nonzero bases; exponents of nonzero
  // bases are reduced mod p^n - 1.
  Elem pow(Elem x, i128 e) const;
  // x^q for q = p^m with m | n.
  Elem frobenius(Elem x, u64 q) const;

  // omega^k for the canonical primitive element omega, k reduced mod p^n - 1.
  Elem elem_exp(i128 k) const;
  // The k in [0, p^n - 2] with omega^k = x; table lookup when available,
  // baby-step giant-step otherwise. std::domain_error on zero.
  u64 elem_log(Elem x) const;

  // The subgroup of d-th roots of unity; d must divide p^n - 1.
  Subgroup mu_subgroup(u64 d) const;

  // "p=3 n=6 mod=c0,c1,...,c6"
  std::string describe() const;
  static Field parse(std::string_view text, LogTables logs = LogTables::automatic);
  // "c0,c1,...,c{n-1}"
  std::string format(Elem x) const;
  Elem parse_elem(std::string_view text) const;

 private:
  struct Tables {
    std::vector<std::uint32_t> exp;   // exp[k] = code of omega^k, k < Q-1
    std::vector<std::uint32_t> log;   // log[code], log[0] unused
    std::vector<std::uint32_t> zech;  // zech[k] = log(1 + omega^k), kNoLog if zero
  };
  static constexpr std::uint32_t kNoLog = 0xffffffffu;

  Elem mul_poly(Elem x, Elem y) const;
  Elem add_digits(Elem x, Elem y, bool subtract) const;
  Elem pow_poly(Elem x, u128 e) const;
  u64 log_bsgs(Elem x) const;
  void build_tables();

  u64 p_ = 2;
  unsigned n_ = 1;
  u64 order_ = 2;
  std::vector<u64> modulus_;
  std::vector<u64> place_;  // place_[i] = p^i
  u64 modulus_bits_ = 0;    // characteristic 2 only: modulus as a bit mask
  Elem primitive_{1};
  std::shared_ptr<const Tables> tables_;
};

/// Iterates mu_d = <omega^((p^n - 1) / d)>: 1, g, g^2, ..., g^(d-1).
class Subgroup {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Elem;
    using difference_type = std::ptrdiff_t;
    using pointer = const Elem*;
    using reference = Elem;

    iterator() = default;
    Elem operator*() const { return current_; }
    iterator& operator++() {
      current_ = field_->mul(current_, generator_);
      ++index_;
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(const iterator& other) const { return index_ == other.index_; }

   private:
    friend class Subgroup;
    iterator(const Field* f, Elem g, u64 index) : field_(f), generator_(g), current_(f->one()), index_(index) {}
    const Field* field_ = nullptr;
    Elem generator_{};
    Elem current_{};
    u64 index_ = 0;
  };

  Subgroup(const Field& field, u64 d);

  u64 size() const { return d_; }
  Elem generator() const { return generator_; }
  iterator begin() const { return iterator(field_, generator_, 0); }
  iterator end() const { return iterator(field_, generator_, d_); }

 private:
  const Field* field_;
  u64 d_;
  Elem generator_;
};

// Smallest element (by code) of multiplicative order p^n - 1.
Elem find_primitive(const Field& field);
u64 multiplicative_order(const Field& field, Elem x);

}  // namespace permbinom

#endif  // PERMBINOM_EXT_FIELD_HPP
