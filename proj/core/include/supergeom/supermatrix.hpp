#pragma once

#include <Eigen/Dense>
#include <vector>

#include "supergeom/grassmann.hpp"
#include "supergeom/supervector.hpp"

namespace supergeom {

enum class MatrixParity { Even, Odd, Mixed };

/// Λ-valued (n+m)x(n+m) supermatrix with blocks [[L1, L2], [L3, L4]],
/// L1 of size n x n. Acts on column vectors from the left.
class SuperMatrix {
 public:
  SuperMatrix() = default;
  /// `entries` are row-major and must all have rank `rank`.
  SuperMatrix(Dims dims, int rank, std::vector<GrassmannElement> entries);

  static SuperMatrix zero(Dims dims, int rank);
  static SuperMatrix identity(Dims dims, int rank);
  /// Lifts a real matrix; every entry becomes a scalar of rank `rank`.
  static SuperMatrix from_real(Dims dims, int rank, const Eigen::MatrixXd& m);

  Dims dims() const { return dims_; }
  int size() const { return dims_.total(); }
  int rank() const { return rank_; }

  const GrassmannElement& operator()(int row, int col) const { return entries_[row * size() + col]; }
  GrassmannElement& operator()(int row, int col) { return entries_[row * size() + col]; }
  std::span<const GrassmannElement> entries() const { return entries_; }

  /// Entrywise body σ(L).
  Eigen::MatrixXd body() const;
  SuperMatrix soul() const;

  /// Max over rows of the sum of entry norms; submultiplicative.
  double norm() const;
  bool is_zero() const;

  SuperMatrix operator-() const;
  SuperMatrix& operator+=(const SuperMatrix& other);
  SuperMatrix& operator-=(const SuperMatrix& other);
  SuperMatrix& operator*=(double r);

  friend SuperMatrix operator+(SuperMatrix a, const SuperMatrix& b) { return a += b; }
  friend SuperMatrix operator-(SuperMatrix a, const SuperMatrix& b) { return a -= b; }
  friend SuperMatrix operator*(double r, SuperMatrix a) { return a *= r; }
  friend SuperMatrix operator*(SuperMatrix a, double r) { return a *= r; }
  friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b);
  /// Multiplies every entry on the left by `lambda`.
  friend SuperMatrix operator*(const GrassmannElement& lambda, const SuperMatrix& a);

  friend bool operator==(const SuperMatrix&, const SuperMatrix&) = default;

 private:
  void require_compatible(const SuperMatrix& other) const;

  Dims dims_;
  int rank_ = 0;
  std::vector<GrassmannElement> entries_;
};

/// Block parity rule; zero entries count as both parities, so the zero
/// matrix is reported Even.
MatrixParity parity_of(const SuperMatrix& l);

SuperMatrix matmul(const SuperMatrix& a, const SuperMatrix& b);
SuperVector matvec(const SuperMatrix& a, const SuperVector& u);

/// Invertible iff the body matrix is: |det σ(L)| > 1e-12 times the Hadamard
/// bound of σ(L).
bool is_invertible(const SuperMatrix& l);

/// Neumann-series inverse around the inverted body. Throws NotInvertible.
SuperMatrix invert(const SuperMatrix& l);

/// Matrix exponential. Zero-body arguments are nilpotent and the series is
/// summed until it terminates; otherwise scaling and squaring is used.
SuperMatrix exp(const SuperMatrix& j);

/// Mercator-series logarithm. Requires norm(I - L) < 1 (OutOfDomain).
SuperMatrix log(const SuperMatrix& l);

/// XY - (-1)^{|X||Y|} YX. Throws MixedParity unless both have definite parity.
SuperMatrix graded_bracket(const SuperMatrix& x, const SuperMatrix& y);

/// Largest absolute coefficient deviation over all entries.
double max_deviation(const SuperMatrix& a, const SuperMatrix& b);

}  // namespace supergeom
