#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rta {

using BigInt = mpz_class;

/// Thrown when an argument lies outside an operation's domain
/// (non-Heegner d, non-prime p, mismatched indices, ...).
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a claimed identity or invariant does not hold for the
/// supplied data (e.g. a witness that does not evaluate to the target).
class verification_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

inline BigInt big_u(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

/// Parses an optionally signed decimal string; rejects anything else,
/// including empty strings, whitespace and leading '+'.
inline BigInt parse_decimal(std::string_view text) {
  std::size_t i = 0;
  if (!text.empty() && text[0] == '-') i = 1;
  if (i == text.size()) throw domain_error("empty decimal integer");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (text[j] < '0' || text[j] > '9') {
      throw domain_error("malformed decimal integer: '" + std::string(text) + "'");
    }
  }
  return BigInt(std::string(text), 10);
}

inline std::string to_decimal(const BigInt& v) { return v.get_str(10); }

inline bool fits_u64(const BigInt& v) {
  return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& v) {
  std::uint64_t out = 0;
  std::size_t count = 0;
  mpz_export(&out, &count, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return count == 0 ? 0 : out;
}

inline std::size_t bit_length(const BigInt& v) {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline BigInt pow_ui(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline BigInt pow2(unsigned long exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, exp);
  return r;
}

}  // namespace rta
