#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace supergeom {

/// Bit i-1 set means generator c^i is present.
using Mask = std::uint32_t;

inline constexpr int kMaxRank = 16;

/// Sorted product c^{i1}...c^{ik} of distinct generators, stored as a bitmask.
class MultiIndex {
 public:
  constexpr MultiIndex() = default;
  constexpr explicit MultiIndex(Mask mask) : mask_(mask) {}

  /// Builds from 1-based indices, which must be strictly increasing and at most `rank`.
  static MultiIndex from_indices(std::span<const int> indices, int rank);
  static MultiIndex from_indices(std::initializer_list<int> indices, int rank) {
    return from_indices(std::span<const int>(indices.begin(), indices.size()), rank);
  }

  constexpr Mask mask() const { return mask_; }
  int size() const;
  std::vector<int> indices() const;

  friend constexpr bool operator==(MultiIndex, MultiIndex) = default;
  friend constexpr auto operator<=>(MultiIndex, MultiIndex) = default;

 private:
  Mask mask_ = 0;
};

/// Sign (+1/-1) of c^a c^b = sign * c^{a|b}, or 0 when a and b share a generator.
int wedge_sign(Mask a, Mask b);

/// Parity (0 even, 1 odd) of the number of generators in `mask`.
inline int mask_parity(Mask mask) { return __builtin_popcount(mask) & 1; }

/// Element of the Grassmann algebra of rank N with real coefficients.
///
/// Terms are kept sorted by ascending mask with no stored zeros, so two
/// elements are equal iff their term lists are equal.
class GrassmannElement {
 public:
  using Term = std::pair<Mask, double>;

  GrassmannElement() = default;
  explicit GrassmannElement(int rank);

  static GrassmannElement zero(int rank) { return GrassmannElement(rank); }
  static GrassmannElement scalar(int rank, double value);
  static GrassmannElement generator(int rank, int index);
  static GrassmannElement monomial(int rank, MultiIndex index, double coefficient = 1.0);

  /// Merges duplicate multi-indices and drops zero coefficients.
  static GrassmannElement from_terms(int rank, std::span<const std::pair<MultiIndex, double>> terms);
  static GrassmannElement from_terms(int rank,
                                     std::initializer_list<std::pair<MultiIndex, double>> terms) {
    return from_terms(rank, std::span(terms.begin(), terms.size()));
  }

  int rank() const { return rank_; }
  std::span<const Term> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  double coefficient(Mask mask) const;

  double body() const { return coefficient(0); }
  GrassmannElement soul() const;
  GrassmannElement even_part() const;
  GrassmannElement odd_part() const;
  GrassmannElement grade_part(int k) const;
  bool is_even() const;
  bool is_odd() const;
  /// 0 or 1 for homogeneous elements (zero reports 0), nullopt otherwise.
  std::optional<int> parity() const;

  /// Sum of absolute values of the sorted-basis coefficients.
  double norm() const;
  double max_abs_coefficient() const;

  /// Inverse via the finite geometric series in soul/body. Throws ZeroBody.
  GrassmannElement inverse() const;
  GrassmannElement pow(int exponent) const;

  /// Grade involution: flips the sign of the odd part.
  GrassmannElement involution() const;

  GrassmannElement operator-() const;
  GrassmannElement& operator+=(const GrassmannElement& other);
  GrassmannElement& operator-=(const GrassmannElement& other);
  GrassmannElement& operator*=(double r);

  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) { return a += b; }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) { return a -= b; }
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);
  friend GrassmannElement operator*(double r, GrassmannElement a) { return a *= r; }
  friend GrassmannElement operator*(GrassmannElement a, double r) { return a *= r; }

  friend bool operator==(const GrassmannElement&, const GrassmannElement&) = default;

 private:
  GrassmannElement(int rank, std::vector<Term> terms) : rank_(rank), terms_(std::move(terms)) {}
  void require_same_rank(const GrassmannElement& other) const;

  int rank_ = 0;
  std::vector<Term> terms_;
};

GrassmannElement scale(double r, const GrassmannElement& a);

/// Maximum absolute coefficient of a - b.
double max_deviation(const GrassmannElement& a, const GrassmannElement& b);

}  // namespace supergeom
