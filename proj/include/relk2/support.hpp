#pragma once

// Shared scalar types, error hierarchy and modular helpers.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace relk2 {

using BigInt = boost::multiprecision::cpp_int;

// Coefficient vector over Z/p, entries kept in [0, p).
using ModVec = std::vector<std::uint32_t>;

/// Raised when inputs disagree on spec, modulus or algebra.
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A theorem hypothesis (|G| > 2, r > 1, b_i J in I, ...) does not hold.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A size budget (oracle pairs, table size) would be exceeded.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input lies outside the supported family (e.g. odd p for lattices).
class ScopeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by internal consistency assertions; indicates an arithmetic bug.
class ArithmeticError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline BigInt floor_mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

inline std::uint32_t mod_add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = static_cast<std::uint64_t>(a) + b;
  return static_cast<std::uint32_t>(s >= p ? s - p : s);
}

inline std::uint32_t mod_sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) + p - b);
}

inline std::uint32_t mod_pow(std::uint32_t base, std::uint64_t e, std::uint32_t p) {
  std::uint32_t result = 1 % p;
  while (e) {
    if (e & 1) result = mod_mul(result, base, p);
    base = mod_mul(base, base, p);
    e >>= 1;
  }
  return result;
}

// p must be prime and a nonzero mod p.
inline std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw ArithmeticError("mod_inverse: zero has no inverse");
  return mod_pow(a % p, p - 2, p);
}

inline std::uint32_t reduce_signed(std::int64_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(floor_mod(a, static_cast<std::int64_t>(p)));
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t checked_pow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (base != 0 && r > UINT64_MAX / base) throw BudgetError("integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace relk2
