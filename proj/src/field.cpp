#include "kron/field.hpp"

#include <cctype>
#include <charconv>

namespace kron {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

/// Validates an optionally signed base-10 integer literal.
bool valid_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return all_digits(s);
}

}  // namespace

Rational RationalField::parse(std::string_view text) const {
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!valid_integer(num)) {
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  }
  if (slash == std::string_view::npos) {
    return Rational(std::string(num));
  }
  std::string_view den = text.substr(slash + 1);
  if (!all_digits(den)) {
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  }
  boost::multiprecision::mpz_int d{std::string(den)};
  if (d.is_zero()) {
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  // Divide rather than construct from "p/q": division reduces to lowest
  // terms, while string construction stores the fraction verbatim.
  return Rational(boost::multiprecision::mpz_int{std::string(num)}) /
         Rational(d);
}

bool is_prime_u64(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p >= (std::uint64_t{1} << 31)) {
    throw InvalidShape("prime field modulus must be below 2^31, got " +
                       std::to_string(p));
  }
  if (!is_prime_u64(p)) {
    throw InvalidShape("prime field modulus must be prime, got " +
                       std::to_string(p));
  }
}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a == 0) throw SingularMatrix("division by zero in " + name());
  // Extended Euclid on (a, p): returns x with a*x = 1 (mod p).
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p_);
  std::int64_t new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p_);
  return static_cast<value_type>(t);
}

PrimeField::value_type PrimeField::parse(std::string_view text) const {
  if (!valid_integer(text)) {
    throw ParseError("not an integer residue: '" + std::string(text) + "'");
  }
  // Reduce digit by digit so arbitrarily long literals stay exact.
  bool negative = false;
  std::string_view digits = text;
  if (digits.front() == '-' || digits.front() == '+') {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  std::uint64_t r = 0;
  for (char c : digits) {
    r = (r * 10 + static_cast<std::uint64_t>(c - '0')) % p_;
  }
  return negative ? neg(r) : r;
}

FieldSpec parse_field_spec(std::string_view text) {
  if (text == "Q") return FieldSpec{FieldSpec::Kind::Rationals, 0};
  if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')') {
    std::string_view inner = text.substr(3, text.size() - 4);
    std::uint64_t p = 0;
    auto [ptr, ec] =
        std::from_chars(inner.data(), inner.data() + inner.size(), p);
    if (ec == std::errc{} && ptr == inner.data() + inner.size() &&
        p < (std::uint64_t{1} << 31) && is_prime_u64(p)) {
      return FieldSpec{FieldSpec::Kind::Prime, p};
    }
  }
  throw ParseError("unknown field '" + std::string(text) +
                   "' (expected \"Q\" or \"GF(p)\" with p prime, p < 2^31)");
}

std::string to_string(const FieldSpec& spec) {
  return spec.kind == FieldSpec::Kind::Rationals
             ? "Q"
             : "GF(" + std::to_string(spec.p) + ")";
}

}  // namespace kron
