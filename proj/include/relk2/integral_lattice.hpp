#pragma once

// Z[G] inside its maximal order for G elementary abelian of exponent 2.
// Every character is rational there, so the maximal order is Z^|G| in
// character coordinates and multiplication is componentwise.

#include "relk2/dennis_stein.hpp"

#include <bit>

namespace relk2 {

struct CharacterLattice {
  GroupSpec spec;
  MatrixZ char_matrix;  // rows: characters, columns: group elements
  MatrixZ zg;           // Hermite basis of the image of Z[G]
  MatrixZ gamma;        // identity: the maximal order
  MatrixZ j;            // |G| * gamma
  MatrixZ i;            // j intersected with p * zg
  std::size_t dim() const { return char_matrix.rows(); }
};

inline void require_excision_scope(const GroupSpec& spec, std::size_t max_rank) {
  if (spec.p() != 2 || !spec.is_elementary())
    throw ScopeError("integral lattices are implemented for elementary abelian 2-groups only, got " + spec.name() + " at p=" +
                     std::to_string(spec.p()));
  if (spec.rank() > max_rank) throw ScopeError("rank " + std::to_string(spec.rank()) + " exceeds the supported " + std::to_string(max_rank));
}

/// Character coordinates of a group-ring vector.
inline std::vector<BigInt> to_characters(const CharacterLattice& lat, const std::vector<BigInt>& v) {
  const std::size_t n = lat.dim();
  std::vector<BigInt> out(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t g = 0; g < n; ++g) out[c] += lat.char_matrix.at(c, g) * v[g];
  return out;
}

/// Inverse of to_characters; throws when the result is not integral.
inline std::vector<BigInt> to_group(const CharacterLattice& lat, const std::vector<BigInt>& c) {
  const std::size_t n = lat.dim();
  std::vector<BigInt> out(n);
  for (std::size_t g = 0; g < n; ++g) {
    BigInt s = 0;
    for (std::size_t k = 0; k < n; ++k) s += lat.char_matrix.at(k, g) * c[k];
    if (floor_mod(s, BigInt(n)) != 0) throw ArithmeticError("to_group: character vector is not in Z[G]");
    out[g] = s / n;
  }
  return out;
}

inline CharacterLattice build_lattices(const GroupSpec& spec) {
  require_excision_scope(spec, 4);
  const std::size_t n = spec.order();
  CharacterLattice lat{spec, MatrixZ(n, n), {}, MatrixZ::identity(n), {}, {}};
  // With the lexicographic index, e_i is bit (r - i) of the index, so the
  // pairing chi(g) = (-1)^{chi . g} is the parity of the common bits.
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t g = 0; g < n; ++g) lat.char_matrix.at(c, g) = (std::popcount(c & g) % 2) ? -1 : 1;
  if (lat.char_matrix.transpose() * lat.char_matrix != [&] {
        MatrixZ m = MatrixZ::identity(n);
        for (std::size_t k = 0; k < n; ++k) m.at(k, k) = n;
        return m;
      }())
    throw ArithmeticError("build_lattices: characters are not orthogonal");
  lat.zg = hnf(lat.char_matrix.transpose());
  MatrixZ scaled = MatrixZ::identity(n);
  for (std::size_t k = 0; k < n; ++k) scaled.at(k, k) = n;
  lat.j = hnf(scaled);
  MatrixZ two_zg = lat.zg;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) two_zg.at(r, c) *= 2;
  lat.i = lattice_intersect(lat.j, two_zg);
  for (std::size_t r = 0; r < n; ++r)
    if (!lattice_contains(lat.zg, lat.j.row(r))) throw ArithmeticError("build_lattices: J is not inside Z[G]");
  return lat;
}

/// [gamma : L] for a full-rank Hermite basis L.
inline BigInt lattice_index(const MatrixZ& hermite_basis) {
  if (hermite_basis.rows() != hermite_basis.cols()) throw std::invalid_argument("lattice_index: lattice is not full rank");
  BigInt d = 1;
  for (std::size_t k = 0; k < hermite_basis.rows(); ++k) d *= hermite_basis.at(k, k);
  return d;
}

struct LatticeChecks {
  bool j_is_i_plus_gtilde = false;  // J = I + Z * chi(G~)
  bool p_gtilde_in_i = false;       // p * chi(G~) in I
  bool quotient_square_zero = false;  // J * J in I
  bool all() const { return j_is_i_plus_gtilde && p_gtilde_in_i && quotient_square_zero; }
};

inline std::vector<BigInt> gtilde_characters(const CharacterLattice& lat) {
  return to_characters(lat, std::vector<BigInt>(lat.dim(), BigInt(1)));
}

inline LatticeChecks relation_checks(const CharacterLattice& lat) {
  const std::size_t n = lat.dim();
  LatticeChecks out;
  auto gt = gtilde_characters(lat);
  MatrixZ extra(0, n);
  extra.append_row(gt);
  out.j_is_i_plus_gtilde = hnf(lattice_sum(lat.i, extra)) == hnf(lat.j);
  std::vector<BigInt> pgt = gt;
  for (auto& x : pgt) x *= lat.spec.p();
  MatrixZ i_h = hnf(lat.i);
  out.p_gtilde_in_i = lattice_contains(i_h, pgt);
  out.quotient_square_zero = true;
  for (std::size_t a = 0; a < lat.j.rows() && out.quotient_square_zero; ++a)
    for (std::size_t b = a; b < lat.j.rows(); ++b) {
      std::vector<BigInt> prod(n);
      for (std::size_t k = 0; k < n; ++k) prod[k] = lat.j.at(a, k) * lat.j.at(b, k);
      if (!lattice_contains(i_h, prod)) {
        out.quotient_square_zero = false;
        break;
      }
    }
  return out;
}

/// Z[G] / L for an ideal lattice L given in character coordinates.
class FiniteQuotientRing {
 public:
  FiniteQuotientRing(const CharacterLattice& lat, const MatrixZ& ideal_chars, std::string name) : spec_(lat.spec), name_(std::move(name)) {
    const std::size_t n = lat.dim();
    MatrixZ grp(0, n);
    for (std::size_t r = 0; r < ideal_chars.rows(); ++r) grp.append_row(to_group(lat, ideal_chars.row(r)));
    h_ = hnf(grp);
    if (h_.rows() != n) throw std::invalid_argument("FiniteQuotientRing: ideal lattice is not full rank");
    size_ = 1;
    for (std::size_t k = 0; k < n; ++k) {
      radix_.push_back(h_.at(k, k));
      size_ *= h_.at(k, k);
    }
    additive_ = cokernel_structure(h_, n);
  }

  const GroupSpec& spec() const { return spec_; }
  const std::string& name() const { return name_; }
  const MatrixZ& ideal_basis() const { return h_; }
  const BigInt& size() const { return size_; }
  const AbelianGroupStructure& additive_structure() const { return additive_; }

  /// Canonical representative: 0 <= v_k < H_kk.
  std::vector<BigInt> reduce(std::vector<BigInt> v) const {
    for (std::size_t k = 0; k < v.size(); ++k) {
      BigInt q = floor_div(v[k], h_.at(k, k));
      if (q == 0) continue;
      for (std::size_t j = k; j < v.size(); ++j) v[j] -= q * h_.at(k, j);
    }
    return v;
  }

  bool contains(const std::vector<BigInt>& v) const { return lattice_contains(h_, v); }

  std::vector<BigInt> add(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const {
    std::vector<BigInt> s(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) s[k] = a[k] + b[k];
    return reduce(std::move(s));
  }

  std::vector<BigInt> mul(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const {
    RingElement x = RingElement::from_coeffs(spec_, 0, a), y = RingElement::from_coeffs(spec_, 0, b);
    return reduce((x * y).coeffs());
  }

  /// Mixed-radix enumeration of representatives.
  std::vector<BigInt> element(std::uint64_t index) const {
    std::vector<BigInt> v(radix_.size());
    for (std::size_t k = radix_.size(); k-- > 0;) {
      const auto r = static_cast<std::uint64_t>(radix_[k]);
      v[k] = index % r;
      index /= r;
    }
    return v;
  }

  std::uint64_t index_of(const std::vector<BigInt>& v) const {
    auto r = reduce(v);
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < r.size(); ++k) idx = idx * static_cast<std::uint64_t>(radix_[k]) + static_cast<std::uint64_t>(r[k]);
    return idx;
  }

  std::string describe(const std::vector<BigInt>& v) const { return RingElement::from_coeffs(spec_, 0, v).to_text(); }

  EnumeratedRing enumerate() const {
    if (size_ > EnumeratedRing::max_size)
      throw BudgetError(name_ + " has " + to_string(size_) + " elements, more than " + std::to_string(EnumeratedRing::max_size));
    const auto n = static_cast<std::size_t>(size_);
    std::vector<std::vector<BigInt>> elems(n);
    for (std::size_t x = 0; x < n; ++x) elems[x] = element(x);
    std::vector<std::uint32_t> add_t(n * n), mul_t(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        add_t[a * n + b] = add_t[b * n + a] = static_cast<std::uint32_t>(index_of(add(elems[a], elems[b])));
        mul_t[a * n + b] = mul_t[b * n + a] = static_cast<std::uint32_t>(index_of(mul(elems[a], elems[b])));
      }
    std::vector<BigInt> one(spec_.order());
    one[0] = 1;
    auto self = std::make_shared<FiniteQuotientRing>(*this);
    return EnumeratedRing(n, std::move(add_t), std::move(mul_t), 0, static_cast<std::uint32_t>(index_of(one)),
                          [self](std::uint32_t x) { return self->describe(self->element(x)); });
  }

 private:
  GroupSpec spec_;
  std::string name_;
  MatrixZ h_;
  std::vector<BigInt> radix_;
  BigInt size_;
  AbelianGroupStructure additive_;
};

enum class WhichIdeal { i, j };

inline FiniteQuotientRing quotient_ring(const CharacterLattice& lat, WhichIdeal which) {
  return which == WhichIdeal::i ? FiniteQuotientRing(lat, lat.i, "Z[G]/I") : FiniteQuotientRing(lat, lat.j, "Z[G]/J");
}

}  // namespace relk2
