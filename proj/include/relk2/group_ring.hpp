#pragma once

// Exact arithmetic in Z/m[G] for G = C_{p^n1} x ... x C_{p^nr}.
//
// Elements are dense coefficient vectors over the monomial basis
// g1^e1 * ... * gr^er, ordered lexicographically on (e1, ..., er) with e1
// most significant. m = 0 means integer coefficients.

#include "relk2/support.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace relk2 {

class GroupSpec {
 public:
  static constexpr std::uint64_t max_order = std::uint64_t{1} << 16;

  GroupSpec(std::uint32_t p, std::vector<unsigned> exponents)
      : p_(p), exponents_(std::move(exponents)) {
    if (!is_prime(p_)) throw std::invalid_argument("GroupSpec: p = " + std::to_string(p_) + " is not prime");
    if (exponents_.empty()) throw std::invalid_argument("GroupSpec: need at least one cyclic factor");
    order_ = 1;
    for (unsigned n : exponents_) {
      if (n == 0) throw std::invalid_argument("GroupSpec: exponents must be positive");
      std::uint64_t q = checked_pow(p_, n);
      radices_.push_back(q);
      if (order_ > max_order / q) throw BudgetError("GroupSpec: |G| exceeds " + std::to_string(max_order));
      order_ *= q;
    }
    strides_.assign(rank(), 1);
    for (std::size_t i = rank() - 1; i-- > 0;) strides_[i] = strides_[i + 1] * radices_[i + 1];
  }

  std::uint32_t p() const { return p_; }
  const std::vector<unsigned>& exponents() const { return exponents_; }
  std::size_t rank() const { return exponents_.size(); }
  std::uint64_t order() const { return order_; }
  /// p^{n_i}, the order of generator g_i (0-based i).
  std::uint64_t cyclic_order(std::size_t i) const { return radices_.at(i); }

  bool is_elementary() const {
    return std::all_of(exponents_.begin(), exponents_.end(), [](unsigned n) { return n == 1; });
  }

  std::size_t index_of(std::span<const std::uint64_t> exps) const {
    if (exps.size() != rank()) throw std::invalid_argument("monomial has wrong number of exponents");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (exps[i] >= radices_[i]) throw std::out_of_range("monomial exponent out of range");
      idx += exps[i] * strides_[i];
    }
    return idx;
  }

  std::vector<std::uint64_t> exponents_of(std::size_t index) const {
    std::vector<std::uint64_t> e(rank());
    for (std::size_t i = 0; i < rank(); ++i) e[i] = (index / strides_[i]) % radices_[i];
    return e;
  }

  /// Index of the product of two basis monomials.
  std::size_t product_index(std::size_t a, std::size_t b) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      std::uint64_t e = (a / strides_[i]) % radices_[i] + (b / strides_[i]) % radices_[i];
      if (e >= radices_[i]) e -= radices_[i];
      idx += e * strides_[i];
    }
    return idx;
  }

  std::size_t generator_index(std::size_t i) const { return strides_.at(i); }

  std::string name() const {
    std::string s;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (i) s += " x ";
      s += "C" + std::to_string(radices_[i]);
    }
    return s;
  }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.p_ == b.p_ && a.exponents_ == b.exponents_;
  }

 private:
  std::uint32_t p_;
  std::vector<unsigned> exponents_;
  std::vector<std::uint64_t> radices_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t order_ = 1;
};

namespace detail {

inline std::string monomial_text(const GroupSpec& spec, std::size_t index) {
  auto e = spec.exponents_of(index);
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "g" + std::to_string(i + 1);
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace detail

class RingElement {
 public:
  RingElement(GroupSpec spec, BigInt modulus)
      : spec_(std::move(spec)), modulus_(std::move(modulus)), coeffs_(spec_.order()) {
    if (modulus_ < 0) throw std::invalid_argument("RingElement: modulus must be nonnegative");
  }

  static RingElement from_coeffs(GroupSpec spec, BigInt modulus, std::vector<BigInt> coeffs) {
    RingElement r(std::move(spec), std::move(modulus));
    if (coeffs.size() != r.coeffs_.size()) throw std::invalid_argument("RingElement: coefficient count must equal |G|");
    r.coeffs_ = std::move(coeffs);
    r.normalize();
    return r;
  }

  static RingElement monomial(GroupSpec spec, BigInt modulus, std::span<const std::uint64_t> exps, BigInt c = 1) {
    RingElement r(std::move(spec), std::move(modulus));
    r.coeffs_[r.spec_.index_of(exps)] = std::move(c);
    r.normalize();
    return r;
  }

  static RingElement one(GroupSpec spec, BigInt modulus) {
    RingElement r(std::move(spec), std::move(modulus));
    r.coeffs_[0] = 1;
    r.normalize();
    return r;
  }

  const GroupSpec& spec() const { return spec_; }
  const BigInt& modulus() const { return modulus_; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  const BigInt& coeff(std::size_t monomial_index) const { return coeffs_.at(monomial_index); }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c == 0; });
  }

  RingElement& operator+=(const RingElement& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
  }
  RingElement& operator-=(const RingElement& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
  }
  RingElement operator-() const {
    RingElement r = *this;
    for (auto& c : r.coeffs_) c = -c;
    r.normalize();
    return r;
  }
  RingElement scaled(const BigInt& s) const {
    RingElement r = *this;
    for (auto& c : r.coeffs_) c *= s;
    r.normalize();
    return r;
  }

  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  friend bool operator==(const RingElement& a, const RingElement& b) {
    return a.spec_ == b.spec_ && a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
  }

  void check_compatible(const RingElement& o) const {
    if (!(spec_ == o.spec_)) throw MismatchError("group ring elements over different groups");
    if (modulus_ != o.modulus_) throw MismatchError("group ring elements with different moduli");
  }

  /// Canonical text: terms in monomial order, e.g. "1 + g1 + 2*g1*g2^3".
  std::string to_text() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const BigInt& c = coeffs_[i];
      if (c == 0) continue;
      BigInt mag = c < 0 ? BigInt(-c) : c;
      if (out.empty()) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      std::string mono = detail::monomial_text(spec_, i);
      if (mono.empty()) {
        out += mag.str();
      } else {
        if (mag != 1) out += mag.str() + "*";
        out += mono;
      }
    }
    return out.empty() ? "0" : out;
  }

  /// Parses sums of terms `c*g1^e1*...`; coefficients and exponents optional.
  static RingElement parse(const GroupSpec& spec, const BigInt& modulus, std::string_view text) {
    RingElement result(spec, modulus);
    std::string s(detail::trim(text));
    if (s.empty()) throw std::invalid_argument("empty element text");
    std::size_t pos = 0;
    bool first = true;
    while (pos < s.size()) {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos >= s.size()) break;
      int sign = 1;
      if (s[pos] == '+' || s[pos] == '-') {
        if (s[pos] == '-') sign = -1;
        ++pos;
      } else if (!first) {
        throw std::invalid_argument("expected '+' or '-' in element text: " + s);
      }
      std::size_t end = pos;
      while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
      std::string_view term = detail::trim(std::string_view(s).substr(pos, end - pos));
      if (term.empty()) throw std::invalid_argument("empty term in element text: " + s);
      BigInt coeff = sign;
      std::vector<std::uint64_t> exps(spec.rank(), 0);
      std::size_t fpos = 0;
      while (fpos <= term.size()) {
        std::size_t star = term.find('*', fpos);
        if (star == std::string_view::npos) star = term.size();
        std::string_view factor = detail::trim(term.substr(fpos, star - fpos));
        if (factor.empty()) throw std::invalid_argument("empty factor in element text: " + s);
        if (factor[0] == 'g') {
          std::size_t caret = factor.find('^');
          std::string gi(factor.substr(1, caret == std::string_view::npos ? std::string_view::npos : caret - 1));
          std::size_t idx = std::stoul(gi);
          if (idx < 1 || idx > spec.rank()) throw std::out_of_range("generator index out of range: g" + gi);
          std::uint64_t e = 1;
          if (caret != std::string_view::npos) e = std::stoull(std::string(factor.substr(caret + 1)));
          exps[idx - 1] = (exps[idx - 1] + e) % spec.cyclic_order(idx - 1);
        } else {
          for (char ch : factor)
            if (!std::isdigit(static_cast<unsigned char>(ch)))
              throw std::invalid_argument("bad factor '" + std::string(factor) + "' in element text");
          coeff *= BigInt(std::string(factor));
        }
        fpos = star + 1;
      }
      result.coeffs_[spec.index_of(exps)] += coeff;
      pos = end;
      first = false;
    }
    result.normalize();
    return result;
  }

 private:
  void normalize() {
    if (modulus_ == 0) return;
    for (auto& c : coeffs_) c = floor_mod(c, modulus_);
  }

  GroupSpec spec_;
  BigInt modulus_;
  std::vector<BigInt> coeffs_;
};

inline RingElement operator*(const RingElement& a, const RingElement& b) {
  a.check_compatible(b);
  const GroupSpec& spec = a.spec_;
  RingElement r(spec, a.modulus_);
  const std::size_t n = a.coeffs_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b.coeffs_[j] == 0) continue;
      r.coeffs_[spec.product_index(i, j)] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  r.normalize();
  return r;
}

inline RingElement ring_mul(const RingElement& a, const RingElement& b) { return a * b; }

inline RingElement pow(RingElement base, std::uint64_t e) {
  RingElement result = RingElement::one(base.spec(), base.modulus());
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

/// The sum of all group elements.
inline RingElement gtilde(const GroupSpec& spec, const BigInt& modulus) {
  std::vector<BigInt> c(spec.order(), BigInt(1));
  return RingElement::from_coeffs(spec, modulus, std::move(c));
}

/// x_i = g_i - 1 for 1 <= i <= r.
inline RingElement x_element(const GroupSpec& spec, const BigInt& modulus, std::size_t i) {
  if (i < 1 || i > spec.rank()) throw std::out_of_range("x_element: index " + std::to_string(i) + " outside 1.." + std::to_string(spec.rank()));
  std::vector<BigInt> c(spec.order());
  c[spec.generator_index(i - 1)] = 1;
  c[0] = -1;
  return RingElement::from_coeffs(spec, modulus, std::move(c));
}

inline BigInt augmentation(const RingElement& a) {
  BigInt s = std::accumulate(a.coeffs().begin(), a.coeffs().end(), BigInt(0));
  return a.modulus() == 0 ? s : floor_mod(s, a.modulus());
}

/// prod_j x_j^{p^{n_j} - 1}, the product form of G~ over F_p.
inline RingElement gtilde_product_form(const GroupSpec& spec) {
  RingElement prod = RingElement::one(spec, spec.p());
  for (std::size_t j = 0; j < spec.rank(); ++j)
    prod = prod * pow(x_element(spec, spec.p(), j + 1), spec.cyclic_order(j) - 1);
  return prod;
}

/// Whether G~ = prod_j x_j^{p^{n_j} - 1} holds exactly in F_p[G].
inline bool gtilde_factorization_check(const GroupSpec& spec) {
  return gtilde_product_form(spec) == gtilde(spec, spec.p());
}

}  // namespace relk2
