#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "supergeom/grassmann.hpp"
#include "supergeom/supermatrix.hpp"
#include "supergeom/supervector.hpp"

namespace supergeom {

/// Exponents of z^1..z^n.
using MultiDegree = std::vector<int>;

/// Polynomial in n real variables with Λ-valued coefficients.
class CoefficientPolynomial {
 public:
  CoefficientPolynomial() = default;
  CoefficientPolynomial(int variables, int rank);

  static CoefficientPolynomial constant(int variables, const GrassmannElement& value);
  /// The coordinate z^i (1-based).
  static CoefficientPolynomial variable(int variables, int rank, int i);
  static CoefficientPolynomial monomial(MultiDegree degree, const GrassmannElement& coefficient);

  int variables() const { return variables_; }
  int rank() const { return rank_; }
  const std::map<MultiDegree, GrassmannElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  /// Adds `coefficient * z^degree`.
  void add_term(const MultiDegree& degree, const GrassmannElement& coefficient);

  /// ∂/∂z^i, 1-based.
  CoefficientPolynomial derivative(int i) const;
  /// Value at a real point: Σ a_d z^d with Λ coefficients.
  GrassmannElement evaluate_real(std::span<const double> point) const;

  /// Coefficientwise even/odd Λ parts.
  CoefficientPolynomial even_part() const;
  CoefficientPolynomial odd_part() const;
  /// Coefficientwise grade involution.
  CoefficientPolynomial involution() const;

  CoefficientPolynomial operator-() const;
  CoefficientPolynomial& operator+=(const CoefficientPolynomial& other);
  friend CoefficientPolynomial operator+(CoefficientPolynomial a, const CoefficientPolynomial& b) {
    return a += b;
  }
  friend CoefficientPolynomial operator-(CoefficientPolynomial a, const CoefficientPolynomial& b) {
    return a += -b;
  }
  friend CoefficientPolynomial operator*(const CoefficientPolynomial& a,
                                         const CoefficientPolynomial& b);
  friend CoefficientPolynomial operator*(double r, const CoefficientPolynomial& a);

  friend bool operator==(const CoefficientPolynomial&, const CoefficientPolynomial&) = default;

 private:
  void require_compatible(const CoefficientPolynomial& other) const;

  int variables_ = 0;
  int rank_ = 0;
  std::map<MultiDegree, GrassmannElement> terms_;
};

/// Taylor prolongation of a polynomial onto B^{n,0}: the sum over partial
/// derivatives at σ(x) multiplied by the souls of x. `x` must have dims (n|0)
/// and even flavor.
GrassmannElement prolong_even(const CoefficientPolynomial& f, const SuperVector& x);

/// True iff the odd-monomial expansion is unique: N - N' >= m.
bool check_lambda_condition(int rank, int rank_prime, int odd);

/// G-superfunction F(x, y) = Σ_J f_J(x) y^J over sorted odd monomials y^J.
class SuperFunction {
 public:
  SuperFunction() = default;
  SuperFunction(Dims dims, int rank, int rank_prime = 0);

  static SuperFunction constant(Dims dims, const GrassmannElement& value, int rank_prime = 0);
  /// x^i, 1-based.
  static SuperFunction even_coordinate(Dims dims, int rank, int i, int rank_prime = 0);
  /// y^j, 1-based.
  static SuperFunction odd_coordinate(Dims dims, int rank, int j, int rank_prime = 0);

  Dims dims() const { return dims_; }
  int rank() const { return rank_; }
  int rank_prime() const { return rank_prime_; }
  /// Keys are odd monomial masks over the m odd coordinates.
  const std::map<Mask, CoefficientPolynomial>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Adds f * y^J.
  void add_term(Mask odd_monomial, const CoefficientPolynomial& f);

  /// 0/1 when every term has the same total parity (Λ part plus odd degree).
  std::optional<int> parity() const;

  SuperFunction operator-() const;
  SuperFunction& operator+=(const SuperFunction& other);
  friend SuperFunction operator+(SuperFunction a, const SuperFunction& b) { return a += b; }
  friend SuperFunction operator-(SuperFunction a, const SuperFunction& b) { return a += -b; }
  friend SuperFunction operator*(const SuperFunction& a, const SuperFunction& b);
  friend SuperFunction operator*(double r, const SuperFunction& a);

  friend bool operator==(const SuperFunction&, const SuperFunction&) = default;

 private:
  void require_compatible(const SuperFunction& other) const;

  Dims dims_;
  int rank_ = 0;
  int rank_prime_ = 0;
  std::map<Mask, CoefficientPolynomial> coeffs_;
};

SuperFunction fn_add(const SuperFunction& f, const SuperFunction& g);
SuperFunction fn_mul(const SuperFunction& f, const SuperFunction& g);

/// Value of F at q ∈ B^{n,m}.
GrassmannElement evaluate(const SuperFunction& f, const SuperVector& q);

/// ∂/∂x^i applied to every coefficient polynomial.
SuperFunction even_derivative(const SuperFunction& f, int i);

/// Left derivative ∂/∂y^j on the sorted odd monomials, with sign (-1)^{pos-1};
/// coefficients are carried through unchanged. Throws LambdaNotIso when the
/// expansion is not unique.
SuperFunction odd_derivative(const SuperFunction& f, int j);

/// Row i holds the derivatives of component i by each coordinate.
using SuperFunctionMatrix = std::vector<std::vector<SuperFunction>>;

/// Φ needs n even-valued then m odd-valued components (ParityPattern otherwise).
SuperFunctionMatrix jacobian(std::span<const SuperFunction> map);
SuperMatrix jacobian_at(std::span<const SuperFunction> map, const SuperVector& q);

/// Applies Φ componentwise at q; the result is in B^{n,m} for parity-respecting Φ.
SuperVector evaluate_map(std::span<const SuperFunction> map, const SuperVector& q);

}  // namespace supergeom
