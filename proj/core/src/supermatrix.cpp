#include "supergeom/supermatrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "supergeom/error.hpp"

namespace supergeom {

namespace {

constexpr double kDetTolerance = 1e-12;
constexpr double kSeriesTolerance = 1e-16;
constexpr double kExpScaleTarget = 0.5;
constexpr int kMaxTaylorTerms = 200;
constexpr int kMaxMercatorTerms = 200000;

}  // namespace

SuperMatrix::SuperMatrix(Dims dims, int rank, std::vector<GrassmannElement> entries)
    : dims_(dims), rank_(rank), entries_(std::move(entries)) {
  if (dims.even < 0 || dims.odd < 0) throw Error(ErrorKind::DimMismatch, "negative dims");
  if (static_cast<int>(entries_.size()) != size() * size()) {
    throw Error(ErrorKind::DimMismatch, "expected " + std::to_string(size() * size()) +
                                            " entries, got " + std::to_string(entries_.size()));
  }
  for (const auto& e : entries_)
    if (e.rank() != rank_) throw Error(ErrorKind::RankMismatch, "entry rank differs from matrix rank");
}

SuperMatrix SuperMatrix::zero(Dims dims, int rank) {
  return SuperMatrix(dims, rank,
                     std::vector<GrassmannElement>(dims.total() * dims.total(), GrassmannElement(rank)));
}

SuperMatrix SuperMatrix::identity(Dims dims, int rank) {
  SuperMatrix out = zero(dims, rank);
  for (int i = 0; i < out.size(); ++i) out(i, i) = GrassmannElement::scalar(rank, 1.0);
  return out;
}

SuperMatrix SuperMatrix::from_real(Dims dims, int rank, const Eigen::MatrixXd& m) {
  if (m.rows() != dims.total() || m.cols() != dims.total())
    throw Error(ErrorKind::DimMismatch, "real matrix shape differs from dims");
  SuperMatrix out = zero(dims, rank);
  for (int i = 0; i < out.size(); ++i)
    for (int j = 0; j < out.size(); ++j) out(i, j) = GrassmannElement::scalar(rank, m(i, j));
  return out;
}

Eigen::MatrixXd SuperMatrix::body() const {
  Eigen::MatrixXd out(size(), size());
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j) out(i, j) = (*this)(i, j).body();
  return out;
}

SuperMatrix SuperMatrix::soul() const {
  SuperMatrix out = *this;
  for (auto& e : out.entries_) e = e.soul();
  return out;
}

double SuperMatrix::norm() const {
  double best = 0.0;
  for (int i = 0; i < size(); ++i) {
    double row = 0.0;
    for (int j = 0; j < size(); ++j) row += (*this)(i, j).norm();
    best = std::max(best, row);
  }
  return best;
}

bool SuperMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.is_zero(); });
}

SuperMatrix SuperMatrix::operator-() const {
  SuperMatrix out = *this;
  for (auto& e : out.entries_) e = -e;
  return out;
}

void SuperMatrix::require_compatible(const SuperMatrix& other) const {
  if (dims_ != other.dims_) throw Error(ErrorKind::DimMismatch, "supermatrix dims differ");
  if (rank_ != other.rank_) throw Error(ErrorKind::RankMismatch, "supermatrix ranks differ");
}

SuperMatrix& SuperMatrix::operator+=(const SuperMatrix& other) {
  require_compatible(other);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

SuperMatrix& SuperMatrix::operator-=(const SuperMatrix& other) {
  require_compatible(other);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

SuperMatrix& SuperMatrix::operator*=(double r) {
  for (auto& e : entries_) e *= r;
  return *this;
}

SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
  a.require_compatible(b);
  const int d = a.size();
  SuperMatrix out = SuperMatrix::zero(a.dims_, a.rank_);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      const auto& left = a(i, k);
      if (left.is_zero()) continue;
      for (int j = 0; j < d; ++j) {
        const auto& right = b(k, j);
        if (!right.is_zero()) out(i, j) += left * right;
      }
    }
  }
  return out;
}

SuperMatrix operator*(const GrassmannElement& lambda, const SuperMatrix& a) {
  if (lambda.rank() != a.rank_) throw Error(ErrorKind::RankMismatch, "scalar rank differs");
  SuperMatrix out = a;
  for (auto& e : out.entries_) e = lambda * e;
  return out;
}

MatrixParity parity_of(const SuperMatrix& l) {
  bool even = true;
  bool odd = true;
  for (int i = 0; i < l.size(); ++i) {
    for (int j = 0; j < l.size(); ++j) {
      const auto& e = l(i, j);
      const bool diagonal_block = l.dims().slot_parity(i) == l.dims().slot_parity(j);
      const bool entry_even = e.is_even();
      const bool entry_odd = e.is_odd();
      if (diagonal_block) {
        even = even && entry_even;
        odd = odd && entry_odd;
      } else {
        even = even && entry_odd;
        odd = odd && entry_even;
      }
    }
  }
  if (even) return MatrixParity::Even;
  if (odd) return MatrixParity::Odd;
  return MatrixParity::Mixed;
}

SuperMatrix matmul(const SuperMatrix& a, const SuperMatrix& b) { return a * b; }

SuperVector matvec(const SuperMatrix& a, const SuperVector& u) {
  if (a.dims() != u.dims()) throw Error(ErrorKind::DimMismatch, "matrix and vector dims differ");
  if (u.dims().total() > 0 && a.rank() != u.rank())
    throw Error(ErrorKind::RankMismatch, "matrix and vector ranks differ");
  std::vector<GrassmannElement> comps(a.size(), GrassmannElement(a.rank()));
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) comps[i] += a(i, j) * u[j];
  SuperVector probe(a.dims(), comps, Flavor::Full);
  return SuperVector(a.dims(), std::move(comps),
                     probe.has_even_pattern() ? Flavor::Even : Flavor::Full);
}

bool is_invertible(const SuperMatrix& l) {
  if (l.size() == 0) return true;
  const Eigen::MatrixXd b = l.body();
  double bound = 1.0;
  for (int i = 0; i < b.rows(); ++i) bound *= b.row(i).norm();
  if (bound == 0.0) return false;
  return std::abs(b.determinant()) > kDetTolerance * bound;
}

SuperMatrix invert(const SuperMatrix& l) {
  if (!is_invertible(l)) throw Error(ErrorKind::NotInvertible, "body matrix is singular");
  const Dims dims = l.dims();
  const SuperMatrix body_inverse = SuperMatrix::from_real(dims, l.rank(), l.body().inverse());
  // B L = I - E with E nilpotent, hence L^-1 = (sum_k E^k) B.
  const SuperMatrix e = SuperMatrix::identity(dims, l.rank()) - body_inverse * l;
  SuperMatrix sum = SuperMatrix::identity(dims, l.rank());
  SuperMatrix power = sum;
  const int cap = l.size() * l.rank() + 1;
  for (int k = 1; k <= cap; ++k) {
    power = power * e;
    if (power.is_zero()) break;
    sum += power;
  }
  return sum * body_inverse;
}

SuperMatrix exp(const SuperMatrix& j) {
  const Dims dims = j.dims();
  const int rank = j.rank();
  const SuperMatrix identity = SuperMatrix::identity(dims, rank);

  if (j.body().isZero(0.0)) {
    SuperMatrix sum = identity;
    SuperMatrix term = identity;
    for (int k = 1; k <= j.size() * rank + 1; ++k) {
      term = (term * j) * (1.0 / k);
      if (term.is_zero()) break;
      sum += term;
    }
    return sum;
  }

  int squarings = 0;
  double n = j.norm();
  while (n > kExpScaleTarget) {
    n *= 0.5;
    ++squarings;
  }
  const SuperMatrix scaled = j * std::ldexp(1.0, -squarings);
  SuperMatrix sum = identity;
  SuperMatrix term = identity;
  for (int k = 1; k <= kMaxTaylorTerms; ++k) {
    term = (term * scaled) * (1.0 / k);
    sum += term;
    if (term.norm() < kSeriesTolerance) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

SuperMatrix log(const SuperMatrix& l) {
  const SuperMatrix identity = SuperMatrix::identity(l.dims(), l.rank());
  const SuperMatrix d = identity - l;
  const double dn = d.norm();
  if (!(dn < 1.0)) {
    throw Error(ErrorKind::OutOfDomain,
                "log needs norm(I - L) < 1, got " + std::to_string(dn));
  }
  // log(I - D) = -sum_k D^k / k
  SuperMatrix sum = SuperMatrix::zero(l.dims(), l.rank());
  SuperMatrix power = identity;
  for (int k = 1; k <= kMaxMercatorTerms; ++k) {
    power = power * d;
    if (power.is_zero()) return sum;
    const SuperMatrix term = power * (1.0 / k);
    sum -= term;
    if (term.norm() < kSeriesTolerance) return sum;
  }
  throw Error(ErrorKind::NoConvergence, "Mercator series did not converge");
}

SuperMatrix graded_bracket(const SuperMatrix& x, const SuperMatrix& y) {
  const MatrixParity px = parity_of(x);
  const MatrixParity py = parity_of(y);
  if (px == MatrixParity::Mixed || py == MatrixParity::Mixed)
    throw Error(ErrorKind::MixedParity, "graded bracket needs matrices of definite parity");
  const bool both_odd = px == MatrixParity::Odd && py == MatrixParity::Odd;
  return both_odd ? x * y + y * x : x * y - y * x;
}

double max_deviation(const SuperMatrix& a, const SuperMatrix& b) {
  if (a.dims() != b.dims()) throw Error(ErrorKind::DimMismatch, "supermatrix dims differ");
  if (a.rank() != b.rank()) throw Error(ErrorKind::RankMismatch, "supermatrix ranks differ");
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    m = std::max(m, max_deviation(a.entries()[k], b.entries()[k]));
  return m;
}

}  // namespace supergeom
