#pragma once

#include <Eigen/Dense>
#include <vector>

#include "supergeom/supermatrix.hpp"
#include "supergeom/supervector.hpp"

namespace supergeom {

/// The bilinear form ω = Σ x^i x'^i + Σ (y^j ȳ'^j - ȳ^j y'^j) on B^{n|2m}.
///
/// Odd slots are ordered y^1..y^m, then ȳ^1..ȳ^m, so the Gram matrix is
/// blockdiag(I_n, [[0, I_m], [-I_m, 0]]).
class OmegaForm {
 public:
  OmegaForm(int n, int m, int rank);
  /// Form matching supermatrix dims (n|k); k must be even.
  static OmegaForm for_dims(Dims dims, int rank);

  int n() const { return n_; }
  int m() const { return m_; }
  int rank() const { return rank_; }
  Dims dims() const { return Dims{n_, 2 * m_}; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::MatrixXd& gram_inverse() const { return gram_inverse_; }

  /// ω(u, v) with Λ products in the written left-to-right order.
  GrassmannElement operator()(const SuperVector& u, const SuperVector& v) const;

 private:
  int n_;
  int m_;
  int rank_;
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd gram_inverse_;
};

/// Supertranspose of an even supermatrix:
/// (L^st)_{αρ} = (-1)^{(p_ρ + p_α) p_α} L_{ρα}.
///
/// With this sign, (AB)^st = B^st A^st and ω(Lu, Lv) = Σ u_α (L^st G L)_{αβ} v_β
/// for even vectors u, v, so L^st G L is the Gram matrix of ω pulled back by L.
SuperMatrix supertranspose(const SuperMatrix& l);

/// L^st G L, the Λ-valued Gram matrix of ω in the frame given by L's columns.
SuperMatrix pulled_back_gram(const OmegaForm& form, const SuperMatrix& l);

struct OspReport {
  /// Row-major (α, β) maximum coefficient deviation of L^st G L from G.
  std::vector<double> deviations;
  int size = 0;
  int worst_row = 0;
  int worst_col = 0;
  double max_deviation = 0.0;
  bool ok = true;

  double at(int row, int col) const { return deviations[row * size + col]; }
};

/// Per-pair deviation report. Throws NotEven for non-even L.
OspReport osp_report(const OmegaForm& form, const SuperMatrix& l, double tol);
bool is_osp(const OmegaForm& form, const SuperMatrix& l, double tol);
bool is_osp(const SuperMatrix& l, double tol);

/// Real generators of the orthosymplectic Lie superalgebra. A Λ-point of its
/// even part is Σ a_k even[k] + Σ θ_k odd[k] with a_k ∈ Λ₀, θ_k ∈ Λ₁.
struct OspBasis {
  Dims dims;
  int rank = 0;
  std::vector<SuperMatrix> even;  // block diagonal, real
  std::vector<SuperMatrix> odd;   // off-diagonal, real
};

/// Solves X^st G + G X = 0 over real block-diagonal and off-diagonal X.
OspBasis osp_algebra_basis(int n, int m, int rank);

/// Σ a_k even[k] + Σ θ_k odd[k].
SuperMatrix combine(const OspBasis& basis, std::span<const GrassmannElement> even_coefficients,
                    std::span<const GrassmannElement> odd_coefficients);

/// ω-adjoint X* = G^{-1} X^st G and the induced splitting of even
/// supermatrices into 𝔣₀ (X* = X) and 𝔥₀ = osp (X* = -X).
class CartanSplit {
 public:
  explicit CartanSplit(const OmegaForm& form);
  CartanSplit(int n, int m, int rank) : CartanSplit(OmegaForm(n, m, rank)) {}

  const OmegaForm& form() const { return form_; }

  SuperMatrix adjoint(const SuperMatrix& x) const;
  SuperMatrix project_h(const SuperMatrix& x) const;
  SuperMatrix project_f(const SuperMatrix& x) const;

  struct Parts {
    SuperMatrix f;
    SuperMatrix h;
  };
  /// X = F + I with F = (X + X*)/2, I = (X - X*)/2. Throws NotEven.
  Parts split(const SuperMatrix& x) const;

 private:
  void require_even(const SuperMatrix& x) const;

  OmegaForm form_;
};

CartanSplit::Parts cartan_split(const SuperMatrix& x);

struct CartanFactors {
  SuperMatrix f;  // in 𝔣₀
  SuperMatrix h;  // in 𝔥₀
  int iterations = 0;
};

/// g = exp(F) exp(I) by fixed-point refinement of F. Requires g even,
/// invertible and norm(I - g) < 1 (OutOfDomain); NoConvergence after max_iter.
CartanFactors cartan_factor(const SuperMatrix& g, double tol = 1e-10, int max_iter = 50);

}  // namespace supergeom
