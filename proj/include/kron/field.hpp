#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include "kron/errors.hpp"

namespace kron {

/// Exact scalar arithmetic is expressed through small field objects: a field
/// supplies the value type plus total, exact operations on it.  Matrices and
/// all higher layers are templated on such a field object, so the rationals
/// and the prime fields share every algorithm.
template <class F>
concept field = requires(const F f, const typename F::value_type v,
                         std::string_view sv) {
  typename F::value_type;
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.add(v, v) } -> std::same_as<typename F::value_type>;
  { f.sub(v, v) } -> std::same_as<typename F::value_type>;
  { f.mul(v, v) } -> std::same_as<typename F::value_type>;
  { f.neg(v) } -> std::same_as<typename F::value_type>;
  { f.inv(v) } -> std::same_as<typename F::value_type>;
  { f.is_zero(v) } -> std::convertible_to<bool>;
  { f.eq(v, v) } -> std::convertible_to<bool>;
  { f.from_int(std::int64_t{}) } -> std::same_as<typename F::value_type>;
  { f.to_string(v) } -> std::convertible_to<std::string>;
  { f.parse(sv) } -> std::same_as<typename F::value_type>;
  { f == f } -> std::convertible_to<bool>;
  { f.name() } -> std::convertible_to<std::string>;
};

using Rational = boost::multiprecision::mpq_rational;

/// The field of rational numbers with arbitrary-precision integers.  Values
/// are kept in lowest terms with positive denominator (the representation
/// maintained by the underlying arbitrary-precision type), so string output
/// is canonical: "num" for integers, "num/den" otherwise.
class RationalField {
 public:
  using value_type = Rational;

  value_type zero() const { return Rational(0); }
  value_type one() const { return Rational(1); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (a.is_zero()) throw SingularMatrix("division by zero in the rationals");
    return Rational(1) / a;
  }
  value_type div(const value_type& a, const value_type& b) const {
    return mul(a, inv(b));
  }
  bool is_zero(const value_type& a) const { return a.is_zero(); }
  bool eq(const value_type& a, const value_type& b) const { return a == b; }
  value_type from_int(std::int64_t x) const { return Rational(x); }

  std::string to_string(const value_type& a) const { return a.str(); }

  /// Accepts "num" or "num/den" in base 10 (optional leading '-').
  value_type parse(std::string_view text) const;

  bool operator==(const RationalField&) const { return true; }
  std::string name() const { return "Q"; }
};

/// Returns true iff v is a prime number (deterministic trial division; the
/// moduli accepted by PrimeField are small enough for this to be instant).
bool is_prime_u64(std::uint64_t v);

/// The prime field GF(p) for a prime 2 <= p < 2^31.  Values are canonical
/// residues in [0, p); the modulus bound keeps every product inside 64 bits.
class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return p_ == 0 ? 0 : 1 % p_; }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const;
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  bool is_zero(value_type a) const { return a == 0; }
  bool eq(value_type a, value_type b) const { return a == b; }
  value_type from_int(std::int64_t x) const {
    std::int64_t m = static_cast<std::int64_t>(p_);
    std::int64_t r = x % m;
    if (r < 0) r += m;
    return static_cast<value_type>(r);
  }

  std::string to_string(value_type a) const { return std::to_string(a); }

  /// Accepts a base-10 integer (optional leading '-'); reduces mod p.
  value_type parse(std::string_view text) const;

  bool operator==(const PrimeField& other) const { return p_ == other.p_; }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

 private:
  std::uint64_t p_;
};

static_assert(field<RationalField>);
static_assert(field<PrimeField>);

/// Runtime tag naming one of the supported coefficient fields; used by the
/// serialization layer to dispatch into the templated core.
struct FieldSpec {
  enum class Kind { Rationals, Prime };
  Kind kind = Kind::Rationals;
  std::uint64_t p = 0;  // modulus when kind == Prime

  bool operator==(const FieldSpec&) const = default;
};

/// Parses "Q" or "GF(p)" (p a prime below 2^31); throws ParseError otherwise.
FieldSpec parse_field_spec(std::string_view text);
std::string to_string(const FieldSpec& spec);

}  // namespace kron
