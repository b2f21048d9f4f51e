#include "supergeom/orthosymplectic.hpp"

#include <algorithm>
#include <string>

#include "supergeom/error.hpp"

namespace supergeom {

namespace {

constexpr double kKernelThreshold = 1e-10;

void require_even(const SuperMatrix& l) {
  if (parity_of(l) != MatrixParity::Even) throw Error(ErrorKind::NotEven, "supermatrix is not even");
}

int st_sign(Dims dims, int row, int col) {
  // Entry L_{ρα} moved to position (α, ρ) of L^st.
  const int pr = dims.slot_parity(row);
  const int pa = dims.slot_parity(col);
  return ((pr + pa) * pa) % 2 ? -1 : 1;
}

// Kernel of Y -> S(Y)^T G + G Y restricted to the entries (row, col) in `slots`.
std::vector<SuperMatrix> solve_algebra(const OmegaForm& form,
                                       const std::vector<std::pair<int, int>>& slots) {
  const Dims dims = form.dims();
  const int d = dims.total();
  const Eigen::MatrixXd& g = form.gram();
  Eigen::MatrixXd system = Eigen::MatrixXd::Zero(d * d, static_cast<Eigen::Index>(slots.size()));
  for (std::size_t p = 0; p < slots.size(); ++p) {
    const auto [row, col] = slots[p];
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(d, d);
    y(row, col) = 1.0;
    Eigen::MatrixXd st = Eigen::MatrixXd::Zero(d, d);
    st(col, row) = st_sign(dims, row, col);
    const Eigen::MatrixXd image = st * g + g * y;
    system.col(static_cast<Eigen::Index>(p)) = image.reshaped();
  }
  std::vector<SuperMatrix> out;
  if (slots.empty()) return out;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
  lu.setThreshold(kKernelThreshold);
  if (lu.dimensionOfKernel() == 0) return out;
  const Eigen::MatrixXd kernel = lu.kernel();
  for (Eigen::Index k = 0; k < kernel.cols(); ++k) {
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(d, d);
    for (std::size_t p = 0; p < slots.size(); ++p) {
      double v = kernel(static_cast<Eigen::Index>(p), k);
      if (std::abs(v) < kKernelThreshold) v = 0.0;
      y(slots[p].first, slots[p].second) = v;
    }
    out.push_back(SuperMatrix::from_real(dims, form.rank(), y));
  }
  return out;
}

}  // namespace

OmegaForm::OmegaForm(int n, int m, int rank) : n_(n), m_(m), rank_(rank) {
  if (n < 0 || m < 0) throw Error(ErrorKind::DimMismatch, "negative form dims");
  const int d = n + 2 * m;
  gram_ = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < n; ++i) gram_(i, i) = 1.0;
  for (int j = 0; j < m; ++j) {
    gram_(n + j, n + m + j) = 1.0;
    gram_(n + m + j, n + j) = -1.0;
  }
  gram_inverse_ = gram_.inverse();
}

OmegaForm OmegaForm::for_dims(Dims dims, int rank) {
  if (dims.odd % 2 != 0)
    throw Error(ErrorKind::DimMismatch, "ω needs an even number of odd slots, got " + std::to_string(dims.odd));
  return OmegaForm(dims.even, dims.odd / 2, rank);
}

GrassmannElement OmegaForm::operator()(const SuperVector& u, const SuperVector& v) const {
  if (u.dims() != dims() || v.dims() != dims())
    throw Error(ErrorKind::DimMismatch, "ω arguments must lie in B^{n|2m}");
  GrassmannElement out(rank_);
  const int d = dims().total();
  for (int r = 0; r < d; ++r)
    for (int t = 0; t < d; ++t)
      if (gram_(r, t) != 0.0) out += (u[r] * v[t]) * gram_(r, t);
  return out;
}

SuperMatrix supertranspose(const SuperMatrix& l) {
  SuperMatrix out = SuperMatrix::zero(l.dims(), l.rank());
  for (int r = 0; r < l.size(); ++r)
    for (int a = 0; a < l.size(); ++a)
      out(a, r) = st_sign(l.dims(), r, a) == 1 ? l(r, a) : -l(r, a);
  return out;
}

SuperMatrix pulled_back_gram(const OmegaForm& form, const SuperMatrix& l) {
  if (l.dims() != form.dims()) throw Error(ErrorKind::DimMismatch, "matrix dims differ from ω dims");
  const SuperMatrix g = SuperMatrix::from_real(l.dims(), l.rank(), form.gram());
  return supertranspose(l) * (g * l);
}

OspReport osp_report(const OmegaForm& form, const SuperMatrix& l, double tol) {
  require_even(l);
  if (l.rank() != form.rank()) throw Error(ErrorKind::RankMismatch, "matrix rank differs from ω rank");
  const SuperMatrix gram = pulled_back_gram(form, l);
  const SuperMatrix target = SuperMatrix::from_real(l.dims(), l.rank(), form.gram());
  OspReport report;
  report.size = l.size();
  report.deviations.resize(static_cast<std::size_t>(l.size()) * l.size());
  for (int a = 0; a < l.size(); ++a) {
    for (int b = 0; b < l.size(); ++b) {
      const double dev = max_deviation(gram(a, b), target(a, b));
      report.deviations[a * l.size() + b] = dev;
      if (dev > report.max_deviation) {
        report.max_deviation = dev;
        report.worst_row = a;
        report.worst_col = b;
      }
    }
  }
  report.ok = report.max_deviation <= tol;
  return report;
}

bool is_osp(const OmegaForm& form, const SuperMatrix& l, double tol) {
  return osp_report(form, l, tol).ok;
}

bool is_osp(const SuperMatrix& l, double tol) {
  return is_osp(OmegaForm::for_dims(l.dims(), l.rank()), l, tol);
}

OspBasis osp_algebra_basis(int n, int m, int rank) {
  const OmegaForm form(n, m, rank);
  const Dims dims = form.dims();
  std::vector<std::pair<int, int>> diagonal;
  std::vector<std::pair<int, int>> off_diagonal;
  for (int r = 0; r < dims.total(); ++r) {
    for (int c = 0; c < dims.total(); ++c) {
      if (dims.slot_parity(r) == dims.slot_parity(c))
        diagonal.emplace_back(r, c);
      else
        off_diagonal.emplace_back(r, c);
    }
  }
  return OspBasis{form.dims(), rank, solve_algebra(form, diagonal), solve_algebra(form, off_diagonal)};
}

SuperMatrix combine(const OspBasis& basis, std::span<const GrassmannElement> even_coefficients,
                    std::span<const GrassmannElement> odd_coefficients) {
  if (even_coefficients.size() != basis.even.size() || odd_coefficients.size() != basis.odd.size())
    throw Error(ErrorKind::DimMismatch, "coefficient count differs from basis size");
  SuperMatrix out = SuperMatrix::zero(basis.dims, basis.rank);
  for (std::size_t k = 0; k < basis.even.size(); ++k) {
    if (!even_coefficients[k].is_even())
      throw Error(ErrorKind::ParityPattern, "even generators take Λ₀ coefficients");
    out += even_coefficients[k] * basis.even[k];
  }
  for (std::size_t k = 0; k < basis.odd.size(); ++k) {
    if (!odd_coefficients[k].is_odd())
      throw Error(ErrorKind::ParityPattern, "odd generators take Λ₁ coefficients");
    out += odd_coefficients[k] * basis.odd[k];
  }
  return out;
}

CartanSplit::CartanSplit(const OmegaForm& form) : form_(form) {}

void CartanSplit::require_even(const SuperMatrix& x) const {
  if (x.dims() != form_.dims()) throw Error(ErrorKind::DimMismatch, "matrix dims differ from ω dims");
  supergeom::require_even(x);
}

SuperMatrix CartanSplit::adjoint(const SuperMatrix& x) const {
  require_even(x);
  const SuperMatrix g = SuperMatrix::from_real(x.dims(), x.rank(), form_.gram());
  const SuperMatrix g_inv = SuperMatrix::from_real(x.dims(), x.rank(), form_.gram_inverse());
  return g_inv * (supertranspose(x) * g);
}

SuperMatrix CartanSplit::project_h(const SuperMatrix& x) const { return (x - adjoint(x)) * 0.5; }

SuperMatrix CartanSplit::project_f(const SuperMatrix& x) const { return (x + adjoint(x)) * 0.5; }

CartanSplit::Parts CartanSplit::split(const SuperMatrix& x) const {
  const SuperMatrix star = adjoint(x);
  return Parts{(x + star) * 0.5, (x - star) * 0.5};
}

CartanSplit::Parts cartan_split(const SuperMatrix& x) {
  return CartanSplit(OmegaForm::for_dims(x.dims(), x.rank())).split(x);
}

CartanFactors cartan_factor(const SuperMatrix& g, double tol, int max_iter) {
  require_even(g);
  if (!is_invertible(g)) throw Error(ErrorKind::OutOfDomain, "g is not invertible");
  const SuperMatrix identity = SuperMatrix::identity(g.dims(), g.rank());
  if (!((identity - g).norm() < 1.0))
    throw Error(ErrorKind::OutOfDomain, "g is outside the near-unit neighbourhood norm(I - g) < 1");
  const CartanSplit split(OmegaForm::for_dims(g.dims(), g.rank()));

  SuperMatrix f = split.project_f(log(g));
  for (int k = 1; k <= max_iter; ++k) {
    SuperMatrix rest = log(exp(-f) * g);
    const SuperMatrix step = split.project_f(rest);
    if (step.norm() < tol) return CartanFactors{f, std::move(rest), k};
    f += step;
  }
  throw Error(ErrorKind::NoConvergence,
              "Cartan factorization did not converge in " + std::to_string(max_iter) + " iterations");
}

}  // namespace supergeom
