#include "permbinom/ext_field.hpp"

#include <array>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "permbinom/polynomial.hpp"

namespace permbinom {

namespace {

constexpr unsigned kMaxDegree = 40;  // p^n <= 2^40 forces n <= 40
using Digits = std::array<u64, 2 * kMaxDegree>;

std::vector<u64> parse_u64_list(std::string_view text) {
  std::vector<u64> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    u64 v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
      throw std::invalid_argument("malformed integer list: " + std::string(text));
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (text.empty()) throw std::invalid_argument("trailing comma in integer list");
  }
  return out;
}

std::string join(const std::vector<u64>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s.push_back(',');
    s += std::to_string(values[i]);
  }
  return s;
}

}  // namespace

Field::Field(u64 p, unsigned n, std::optional<std::vector<u64>> modulus, LogTables logs) : p_(p), n_(n) {
  if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  if (n < 1) throw std::invalid_argument("extension degree must be at least 1");
  u128 order = 1;
  for (unsigned i = 0; i < n; ++i) {
    order *= p;
    if (order > kMaxOrder) throw capacity_error("field order exceeds 2^40");
  }
  order_ = static_cast<u64>(order);

  if (modulus) {
    poly::Poly f = *modulus;
    if (f.size() != n + 1 || f.back() != 1) {
      throw std::invalid_argument("modulus must be monic of degree " + std::to_string(n));
    }
    for (u64 c : f) {
      if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
    }
    if (!poly::is_irreducible(f, p)) throw std::invalid_argument("modulus is reducible");
    modulus_ = std::move(f);
  } else {
    modulus_ = poly::find_irreducible(p, n);
  }

  place_.resize(n + 1);
  place_[0] = 1;
  for (unsigned i = 1; i <= n; ++i) place_[i] = place_[i - 1] * p;
  if (p == 2) {
    for (unsigned i = 0; i < n; ++i) modulus_bits_ |= modulus_[i] << i;
  }

  primitive_ = find_primitive(*this);

  const bool want_tables = logs == LogTables::on || (logs == LogTables::automatic && order_ <= kMaxLogOrder);
  if (want_tables) {
    if (order_ > kMaxLogOrder) throw capacity_error("log tables are limited to fields of order <= 2^24");
    build_tables();
  }
}

void Field::build_tables() {
  auto t = std::make_shared<Tables>();
  const u64 group = order_ - 1;
  t->exp.resize(group);
  t->log.assign(order_, 0);
  t->zech.resize(group);
  Elem cur = one();
  for (u64 k = 0; k < group; ++k) {
    t->exp[k] = static_cast<std::uint32_t>(cur.code);
    t->log[cur.code] = static_cast<std::uint32_t>(k);
    cur = mul_poly(cur, primitive_);
  }
  for (u64 k = 0; k < group; ++k) {
    // 1 + omega^k: bump the constant coefficient.
    const u64 code = t->exp[k];
    const u64 c0 = code % p_;
    const u64 bumped = code - c0 + (c0 + 1) % p_;
    t->zech[k] = bumped == 0 ? kNoLog : t->log[bumped];
  }
  tables_ = std::move(t);
}

Elem Field::element(u64 code) const {
  if (code >= order_) throw std::invalid_argument("element code out of range");
  return Elem{code};
}

Elem Field::from_coeffs(std::span<const u64> coeffs) const {
  if (coeffs.size() != n_) throw std::invalid_argument("element needs exactly n coefficients");
  u64 code = 0;
  for (std::size_t i = coeffs.size(); i > 0; --i) {
    if (coeffs[i - 1] >= p_) throw std::invalid_argument("coefficient out of range");
    code = code * p_ + coeffs[i - 1];
  }
  return Elem{code};
}

std::vector<u64> Field::coeffs(Elem x) const {
  std::vector<u64> out(n_);
  for (unsigned i = 0; i < n_; ++i) {
    out[i] = x.code % p_;
    x.code /= p_;
  }
  return out;
}

Elem Field::add_digits(Elem x, Elem y, bool subtract) const {
  if (p_ == 2) return Elem{x.code ^ y.code};
  u64 code = 0;
  for (unsigned i = 0; i < n_; ++i) {
    const u64 a = x.code % p_;
    const u64 b = y.code % p_;
    x.code /= p_;
    y.code /= p_;
    u64 c;
    if (subtract) {
      c = a >= b ? a - b : a + (p_ - b);
    } else {
      c = a + b;
      if (c >= p_) c -= p_;
    }
    code += c * place_[i];
  }
  return Elem{code};
}

Elem Field::add(Elem x, Elem y) const {
  if (p_ == 2) return Elem{x.code ^ y.code};
  if (!tables_) return add_digits(x, y, false);
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const u64 group = order_ - 1;
  const u64 lx = tables_->log[x.code];
  const u64 ly = tables_->log[y.code];
  const u64 diff = ly >= lx ? ly - lx : ly + group - lx;
  const std::uint32_t z = tables_->zech[diff];
  if (z == kNoLog) return zero();
  u64 s = lx + z;
  if (s >= group) s -= group;
  return Elem{tables_->exp[s]};
}

Elem Field::neg(Elem x) const {
  if (p_ == 2 || x.is_zero()) return x;
  return add_digits(zero(), x, true);
}

Elem Field::sub(Elem x, Elem y) const {
  if (p_ == 2) return Elem{x.code ^ y.code};
  if (!tables_) return add_digits(x, y, true);
  return add(x, neg(y));
}

Elem Field::mul_poly(Elem x, Elem y) const {
  if (x.is_zero() || y.is_zero()) return zero();
  if (p_ == 2) {
    // Carry-less product, then reduce bits n..2n-2 against the modulus.
    u128 prod = 0;
    const u128 a = x.code;
    for (u64 b = y.code, shift = 0; b != 0; b >>= 1, ++shift) {
      if (b & 1) prod ^= a << shift;
    }
    const u128 low_mod = modulus_bits_;
    for (int bit = 2 * static_cast<int>(n_) - 2; bit >= static_cast<int>(n_); --bit) {
      if ((prod >> bit) & 1) {
        prod ^= static_cast<u128>(1) << bit;
        prod ^= low_mod << (bit - n_);
      }
    }
    return Elem{static_cast<u64>(prod)};
  }

  Digits a{}, b{}, c{};
  for (unsigned i = 0; i < n_; ++i) {
    a[i] = x.code % p_;
    x.code /= p_;
    b[i] = y.code % p_;
    y.code /= p_;
  }
  const unsigned top = 2 * n_ - 1;
  if (p_ < (u64{1} << 26)) {
    // Sums of at most 2n products below 2^52 stay inside 64 bits.
    for (unsigned i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      for (unsigned j = 0; j < n_; ++j) c[i + j] += a[i] * b[j];
    }
    for (unsigned d = top - 1; d >= n_; --d) {
      const u64 lead = c[d] % p_;
      c[d] = 0;
      if (lead != 0) {
        for (unsigned i = 0; i < n_; ++i) c[d - n_ + i] += lead * (p_ - modulus_[i]);
      }
      if (d == n_) break;
    }
    for (unsigned i = 0; i < n_; ++i) c[i] %= p_;
  } else {
    for (unsigned i = 0; i < n_; ++i) {
      for (unsigned j = 0; j < n_; ++j) c[i + j] = (c[i + j] + mul_mod(a[i], b[j], p_)) % p_;
    }
    for (unsigned d = top - 1; d >= n_; --d) {
      const u64 lead = c[d];
      c[d] = 0;
      if (lead != 0) {
        for (unsigned i = 0; i < n_; ++i) {
          c[d - n_ + i] = (c[d - n_ + i] + mul_mod(lead, (p_ - modulus_[i]) % p_, p_)) % p_;
        }
      }
      if (d == n_) break;
    }
  }
  u64 code = 0;
  for (unsigned i = n_; i > 0; --i) code = code * p_ + c[i - 1];
  return Elem{code};
}

Elem Field::mul(Elem x, Elem y) const {
  if (!tables_) return mul_poly(x, y);
  if (x.is_zero() || y.is_zero()) return zero();
  u64 s = u64{tables_->log[x.code]} + tables_->log[y.code];
  if (s >= order_ - 1) s -= order_ - 1;
  return Elem{tables_->exp[s]};
}

Elem Field::pow_poly(Elem x, u128 e) const {
  Elem result = one();
  while (e != 0) {
    if (e & 1) result = mul_poly(result, x);
    e >>= 1;
    if (e != 0) x = mul_poly(x, x);
  }
  return result;
}

Elem Field::pow(Elem x, i128 e) const {
  if (x.is_zero()) {
    if (e < 0) throw std::domain_error("negative power of zero");
    return e == 0 ? one() : zero();
  }
  const u64 reduced = reduce_mod(e, order_ - 1);
  if (tables_) {
    const u64 k = mul_mod(tables_->log[x.code], reduced, order_ - 1);
    return Elem{tables_->exp[k]};
  }
  return pow_poly(x, reduced);
}

Elem Field::inv(Elem x) const {
  if (x.is_zero()) throw std::domain_error("inversion of zero");
  if (tables_) {
    const u64 l = tables_->log[x.code];
    return Elem{tables_->exp[l == 0 ? 0 : order_ - 1 - l]};
  }
  return pow_poly(x, order_ - 2);
}

Elem Field::frobenius(Elem x, u64 q) const {
  const auto pp = prime_power(q);
  if (!pp || pp->first != p_) throw std::invalid_argument("frobenius: q is not a power of the characteristic");
  if (n_ % pp->second != 0) throw std::invalid_argument("frobenius: F_q is not a subfield");
  if (x.is_zero()) return x;
  return pow(x, q);
}

Elem Field::elem_exp(i128 k) const {
  const u64 reduced = reduce_mod(k, order_ - 1);
  if (tables_) return Elem{tables_->exp[reduced]};
  return pow_poly(primitive_, reduced);
}

u64 Field::elem_log(Elem x) const {
  if (x.is_zero()) throw std::domain_error("logarithm of zero");
  if (tables_) return tables_->log[x.code];
  return log_bsgs(x);
}

u64 Field::log_bsgs(Elem x) const {
  const u64 group = order_ - 1;
  const u64 step = static_cast<u64>(ceil_sqrt(group));
  std::unordered_map<u64, u64> baby;
  baby.reserve(step);
  Elem cur = one();
  for (u64 j = 0; j < step; ++j) {
    baby.emplace(cur.code, j);
    cur = mul_poly(cur, primitive_);
  }
  const Elem giant = pow_poly(primitive_, (group - (step % group)) % group);  // omega^-step
  Elem y = x;
  for (u64 i = 0; i <= step; ++i) {
    if (auto it = baby.find(y.code); it != baby.end()) return (i * step + it->second) % group;
    y = mul_poly(y, giant);
  }
  throw std::logic_error("discrete log not found; primitive element is wrong");
}

Subgroup Field::mu_subgroup(u64 d) const { return Subgroup(*this, d); }

std::string Field::describe() const {
  std::ostringstream os;
  os << "p=" << p_ << " n=" << n_ << " mod=" << join(modulus_);
  return os.str();
}

Field Field::parse(std::string_view text, LogTables logs) {
  std::optional<u64> p;
  std::optional<u64> n;
  std::optional<std::vector<u64>> modulus;
  std::istringstream is{std::string(text)};
  std::string token;
  while (is >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("malformed field description: " + token);
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "p" || key == "n") {
      const auto list = parse_u64_list(value);
      if (list.size() != 1) throw std::invalid_argument("malformed field description: " + token);
      (key == "p" ? p : n) = list[0];
    } else if (key == "mod") {
      modulus = parse_u64_list(value);
    } else {
      throw std::invalid_argument("unknown field description key: " + key);
    }
  }
  if (!p || !n) throw std::invalid_argument("field description needs p= and n=");
  return Field(*p, static_cast<unsigned>(*n), std::move(modulus), logs);
}

std::string Field::format(Elem x) const { return join(coeffs(x)); }

Elem Field::parse_elem(std::string_view text) const { return from_coeffs(parse_u64_list(text)); }

Subgroup::Subgroup(const Field& field, u64 d) : field_(&field), d_(d) {
  const u64 group = field.order() - 1;
  if (d == 0 || group % d != 0) {
    throw std::invalid_argument("subgroup order " + std::to_string(d) + " does not divide " + std::to_string(group));
  }
  generator_ = field.elem_exp(group / d);
}

Elem find_primitive(const Field& field) {
  const u64 group = field.order() - 1;
  const auto factors = factorize(group);
  for (u64 code = 1; code < field.order(); ++code) {
    const Elem x{code};
    bool generates = true;
    for (const auto& [prime, mult] : factors) {
      if (field.pow(x, group / prime) == field.one()) {
        generates = false;
        break;
      }
    }
    if (generates) return x;
  }
  throw std::logic_error("multiplicative group has no generator");
}

u64 multiplicative_order(const Field& field, Elem x) {
  if (x.is_zero()) throw std::domain_error("zero has no multiplicative order");
  u64 order = field.order() - 1;
  for (const auto& [prime, mult] : factorize(order)) {
    for (unsigned i = 0; i < mult; ++i) {
      if (field.pow(x, order / prime) != field.one()) break;
      order /= prime;
    }
  }
  return order;
}

}  // namespace permbinom
