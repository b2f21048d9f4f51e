#pragma once

#include <span>
#include <vector>

#include "supergeom/grassmann.hpp"

namespace supergeom {

/// Numbers of even and odd slots (n|m).
struct Dims {
  int even = 0;
  int odd = 0;

  int total() const { return even + odd; }
  /// Parity of slot k (0-based): even slots come first.
  int slot_parity(int k) const { return k < even ? 0 : 1; }

  friend bool operator==(const Dims&, const Dims&) = default;
};

enum class Flavor {
  Full,  // element of B^{n|m}
  Even,  // element of the supervector space B^{n,m}
};

/// Element of the free graded module B^{n|m}, or of its even part B^{n,m}.
///
/// Components are ordered even slots first, then odd slots. An Even flavor
/// is verified at construction: even slots must hold Λ₀ values and odd slots
/// Λ₁ values.
class SuperVector {
 public:
  SuperVector() = default;
  /// Throws FlavorMismatch if `flavor` is Even but the parity pattern is not.
  SuperVector(Dims dims, std::vector<GrassmannElement> components, Flavor flavor = Flavor::Full);

  static SuperVector zero(Dims dims, int rank, Flavor flavor = Flavor::Even);
  /// Lifts a real vector of length n into the even slots of B^{n,m}.
  static SuperVector embed(std::span<const double> body, Dims dims, int rank);

  Dims dims() const { return dims_; }
  int rank() const { return rank_; }
  Flavor flavor() const { return flavor_; }
  std::span<const GrassmannElement> components() const { return components_; }
  const GrassmannElement& operator[](int k) const { return components_[k]; }

  /// True when the components follow the B^{n,m} parity pattern.
  bool has_even_pattern() const;

  friend bool operator==(const SuperVector&, const SuperVector&) = default;

 private:
  Dims dims_;
  int rank_ = 0;
  Flavor flavor_ = Flavor::Full;
  std::vector<GrassmannElement> components_;
};

/// σ^{n,m}: bodies of the even slots. Requires Even flavor.
std::vector<double> body_map(const SuperVector& q);
/// s^{n,m}: per-slot soul. Requires Even flavor.
SuperVector soul_map(const SuperVector& q);

/// Componentwise sum; the result is Even whenever its pattern is.
SuperVector add(const SuperVector& u, const SuperVector& v);
/// Multiplies every component on the left by `lambda`.
SuperVector left_scale(const GrassmannElement& lambda, const SuperVector& u);

/// Λ₀-linear bijection B^{n|m} -> B^{n+m,n+m}: component k splits into its
/// even part (even slot k) and odd part (odd slot k).
SuperVector to_even_form(const SuperVector& u);
/// Inverse of to_even_form; `dims` are the (n|m) of the original module.
SuperVector from_even_form(const SuperVector& v, Dims dims);

double max_deviation(const SuperVector& a, const SuperVector& b);

}  // namespace supergeom
