#include "supergeom/superfunction.hpp"

#include <algorithm>
#include <string>

#include "supergeom/error.hpp"

namespace supergeom {

namespace {

double factorial(int k) {
  double out = 1.0;
  for (int i = 2; i <= k; ++i) out *= i;
  return out;
}

// d!/(d-b)!
double falling_factorial(int d, int b) {
  double out = 1.0;
  for (int i = 0; i < b; ++i) out *= d - i;
  return out;
}

// Taylor prolongation at the even components xs (all in Λ₀).
GrassmannElement prolong(const CoefficientPolynomial& f, std::span<const GrassmannElement> xs,
                         int rank) {
  const int n = f.variables();
  GrassmannElement result(rank);
  if (f.is_zero()) return result;

  std::vector<double> body(n);
  std::vector<std::vector<GrassmannElement>> soul_powers(n);
  const int max_order = std::min(rank, f.total_degree());
  for (int i = 0; i < n; ++i) {
    body[i] = xs[i].body();
    const GrassmannElement s = xs[i].soul();
    soul_powers[i].push_back(GrassmannElement::scalar(rank, 1.0));
    for (int k = 1; k <= max_order; ++k) soul_powers[i].push_back(soul_powers[i].back() * s);
  }

  // Enumerate derivative orders beta with |beta| <= max_order.
  std::vector<int> beta(n, 0);
  auto accumulate = [&]() {
    GrassmannElement soul_product = GrassmannElement::scalar(rank, 1.0);
    double beta_factorial = 1.0;
    for (int i = 0; i < n; ++i) {
      soul_product = soul_product * soul_powers[i][beta[i]];
      beta_factorial *= factorial(beta[i]);
    }
    if (soul_product.is_zero()) return;
    GrassmannElement derivative(rank);
    for (const auto& [degree, coeff] : f.terms()) {
      double weight = 1.0;
      for (int i = 0; i < n && weight != 0.0; ++i) {
        if (degree[i] < beta[i]) {
          weight = 0.0;
          break;
        }
        weight *= falling_factorial(degree[i], beta[i]);
        for (int p = 0; p < degree[i] - beta[i]; ++p) weight *= body[i];
      }
      if (weight != 0.0) derivative += coeff * weight;
    }
    result += (derivative * (1.0 / beta_factorial)) * soul_product;
  };
  auto recurse = [&](auto&& self, int i, int remaining) -> void {
    if (i == n) {
      accumulate();
      return;
    }
    for (int b = 0; b <= remaining; ++b) {
      beta[i] = b;
      self(self, i + 1, remaining - b);
    }
    beta[i] = 0;
  };
  recurse(recurse, 0, max_order);
  return result;
}

GrassmannElement odd_product(std::span<const GrassmannElement> ys, Mask monomial, int rank) {
  GrassmannElement out = GrassmannElement::scalar(rank, 1.0);
  for (Mask m = monomial; m; m &= m - 1) out = out * ys[__builtin_ctz(m)];
  return out;
}

void require_point(const SuperFunction& f, const SuperVector& q) {
  if (q.dims() != f.dims()) throw Error(ErrorKind::DimMismatch, "point dims differ from function dims");
  if (q.dims().total() > 0 && q.rank() != f.rank())
    throw Error(ErrorKind::RankMismatch, "point rank differs from function rank");
  if (q.flavor() != Flavor::Even)
    throw Error(ErrorKind::FlavorMismatch, "superfunctions are evaluated on B^{n,m}");
}

}  // namespace

// CoefficientPolynomial

CoefficientPolynomial::CoefficientPolynomial(int variables, int rank)
    : variables_(variables), rank_(rank) {
  if (variables < 0) throw Error(ErrorKind::DimMismatch, "negative variable count");
}

CoefficientPolynomial CoefficientPolynomial::constant(int variables, const GrassmannElement& value) {
  CoefficientPolynomial out(variables, value.rank());
  out.add_term(MultiDegree(variables, 0), value);
  return out;
}

CoefficientPolynomial CoefficientPolynomial::variable(int variables, int rank, int i) {
  if (i < 1 || i > variables)
    throw Error(ErrorKind::IndexOutOfRange, "even coordinate " + std::to_string(i));
  MultiDegree d(variables, 0);
  d[i - 1] = 1;
  return monomial(d, GrassmannElement::scalar(rank, 1.0));
}

CoefficientPolynomial CoefficientPolynomial::monomial(MultiDegree degree,
                                                      const GrassmannElement& coefficient) {
  CoefficientPolynomial out(static_cast<int>(degree.size()), coefficient.rank());
  out.add_term(degree, coefficient);
  return out;
}

int CoefficientPolynomial::total_degree() const {
  int best = 0;
  for (const auto& [degree, coeff] : terms_) {
    int sum = 0;
    for (int d : degree) sum += d;
    best = std::max(best, sum);
  }
  return best;
}

void CoefficientPolynomial::add_term(const MultiDegree& degree, const GrassmannElement& coefficient) {
  if (static_cast<int>(degree.size()) != variables_)
    throw Error(ErrorKind::DimMismatch, "multi-degree length differs from variable count");
  if (std::any_of(degree.begin(), degree.end(), [](int d) { return d < 0; }))
    throw Error(ErrorKind::IndexOutOfRange, "negative exponent");
  if (coefficient.rank() != rank_) throw Error(ErrorKind::RankMismatch, "coefficient rank differs");
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(degree, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CoefficientPolynomial CoefficientPolynomial::derivative(int i) const {
  if (i < 1 || i > variables_)
    throw Error(ErrorKind::IndexOutOfRange, "even coordinate " + std::to_string(i));
  CoefficientPolynomial out(variables_, rank_);
  for (const auto& [degree, coeff] : terms_) {
    if (degree[i - 1] == 0) continue;
    MultiDegree d = degree;
    d[i - 1] -= 1;
    out.add_term(d, coeff * static_cast<double>(degree[i - 1]));
  }
  return out;
}

GrassmannElement CoefficientPolynomial::evaluate_real(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != variables_)
    throw Error(ErrorKind::DimMismatch, "point length differs from variable count");
  GrassmannElement out(rank_);
  for (const auto& [degree, coeff] : terms_) {
    double w = 1.0;
    for (int i = 0; i < variables_; ++i)
      for (int p = 0; p < degree[i]; ++p) w *= point[i];
    out += coeff * w;
  }
  return out;
}

CoefficientPolynomial CoefficientPolynomial::even_part() const {
  CoefficientPolynomial out(variables_, rank_);
  for (const auto& [degree, coeff] : terms_) out.add_term(degree, coeff.even_part());
  return out;
}

CoefficientPolynomial CoefficientPolynomial::odd_part() const {
  CoefficientPolynomial out(variables_, rank_);
  for (const auto& [degree, coeff] : terms_) out.add_term(degree, coeff.odd_part());
  return out;
}

CoefficientPolynomial CoefficientPolynomial::involution() const {
  CoefficientPolynomial out = *this;
  for (auto& [degree, coeff] : out.terms_) coeff = coeff.involution();
  return out;
}

CoefficientPolynomial CoefficientPolynomial::operator-() const {
  CoefficientPolynomial out = *this;
  for (auto& [degree, coeff] : out.terms_) coeff = -coeff;
  return out;
}

void CoefficientPolynomial::require_compatible(const CoefficientPolynomial& other) const {
  if (variables_ != other.variables_) throw Error(ErrorKind::DimMismatch, "variable counts differ");
  if (rank_ != other.rank_) throw Error(ErrorKind::RankMismatch, "polynomial ranks differ");
}

CoefficientPolynomial& CoefficientPolynomial::operator+=(const CoefficientPolynomial& other) {
  require_compatible(other);
  for (const auto& [degree, coeff] : other.terms_) add_term(degree, coeff);
  return *this;
}

CoefficientPolynomial operator*(const CoefficientPolynomial& a, const CoefficientPolynomial& b) {
  a.require_compatible(b);
  CoefficientPolynomial out(a.variables_, a.rank_);
  for (const auto& [da, ca] : a.terms_) {
    for (const auto& [db, cb] : b.terms_) {
      MultiDegree d(a.variables_);
      for (int i = 0; i < a.variables_; ++i) d[i] = da[i] + db[i];
      out.add_term(d, ca * cb);
    }
  }
  return out;
}

CoefficientPolynomial operator*(double r, const CoefficientPolynomial& a) {
  CoefficientPolynomial out(a.variables_, a.rank_);
  for (const auto& [degree, coeff] : a.terms_) out.add_term(degree, coeff * r);
  return out;
}

GrassmannElement prolong_even(const CoefficientPolynomial& f, const SuperVector& x) {
  if (x.dims() != Dims{f.variables(), 0})
    throw Error(ErrorKind::DimMismatch, "prolongation point must lie in B^{n,0}");
  if (x.flavor() != Flavor::Even)
    throw Error(ErrorKind::FlavorMismatch, "prolongation point must be even");
  if (x.dims().total() > 0 && x.rank() != f.rank())
    throw Error(ErrorKind::RankMismatch, "point rank differs from polynomial rank");
  return prolong(f, x.components(), f.rank());
}

bool check_lambda_condition(int rank, int rank_prime, int odd) { return rank - rank_prime >= odd; }

// SuperFunction

SuperFunction::SuperFunction(Dims dims, int rank, int rank_prime)
    : dims_(dims), rank_(rank), rank_prime_(rank_prime) {
  if (dims.even < 0 || dims.odd < 0) throw Error(ErrorKind::DimMismatch, "negative dims");
  if (dims.odd > kMaxRank) throw Error(ErrorKind::RankTooLarge, "too many odd coordinates");
  if (rank_prime < 0 || rank_prime > rank)
    throw Error(ErrorKind::IndexOutOfRange, "N' must lie in [0, N]");
}

SuperFunction SuperFunction::constant(Dims dims, const GrassmannElement& value, int rank_prime) {
  SuperFunction out(dims, value.rank(), rank_prime);
  out.add_term(0, CoefficientPolynomial::constant(dims.even, value));
  return out;
}

SuperFunction SuperFunction::even_coordinate(Dims dims, int rank, int i, int rank_prime) {
  SuperFunction out(dims, rank, rank_prime);
  out.add_term(0, CoefficientPolynomial::variable(dims.even, rank, i));
  return out;
}

SuperFunction SuperFunction::odd_coordinate(Dims dims, int rank, int j, int rank_prime) {
  if (j < 1 || j > dims.odd) throw Error(ErrorKind::IndexOutOfRange, "odd coordinate " + std::to_string(j));
  SuperFunction out(dims, rank, rank_prime);
  out.add_term(Mask{1} << (j - 1),
               CoefficientPolynomial::constant(dims.even, GrassmannElement::scalar(rank, 1.0)));
  return out;
}

void SuperFunction::add_term(Mask odd_monomial, const CoefficientPolynomial& f) {
  if (dims_.odd < 32 && (odd_monomial >> dims_.odd) != 0)
    throw Error(ErrorKind::IndexOutOfRange, "odd monomial uses a coordinate beyond m");
  if (f.variables() != dims_.even) throw Error(ErrorKind::DimMismatch, "coefficient variable count differs from n");
  if (f.rank() != rank_) throw Error(ErrorKind::RankMismatch, "coefficient rank differs");
  if (f.is_zero()) return;
  auto [it, inserted] = coeffs_.try_emplace(odd_monomial, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

std::optional<int> SuperFunction::parity() const {
  std::optional<int> p;
  for (const auto& [monomial, f] : coeffs_) {
    for (const auto& [degree, coeff] : f.terms()) {
      const auto cp = coeff.parity();
      if (!cp) return std::nullopt;
      const int total = (*cp + mask_parity(monomial)) & 1;
      if (p && *p != total) return std::nullopt;
      p = total;
    }
  }
  return p.value_or(0);
}

SuperFunction SuperFunction::operator-() const {
  SuperFunction out = *this;
  for (auto& [monomial, f] : out.coeffs_) f = -f;
  return out;
}

void SuperFunction::require_compatible(const SuperFunction& other) const {
  if (dims_ != other.dims_) throw Error(ErrorKind::DimMismatch, "superfunction dims differ");
  if (rank_ != other.rank_ || rank_prime_ != other.rank_prime_)
    throw Error(ErrorKind::RankMismatch, "superfunction ranks differ");
}

SuperFunction& SuperFunction::operator+=(const SuperFunction& other) {
  require_compatible(other);
  for (const auto& [monomial, f] : other.coeffs_) add_term(monomial, f);
  return *this;
}

SuperFunction operator*(const SuperFunction& a, const SuperFunction& b) {
  a.require_compatible(b);
  SuperFunction out(a.dims_, a.rank_, a.rank_prime_);
  for (const auto& [ja, fa] : a.coeffs_) {
    for (const auto& [jb, fb] : b.coeffs_) {
      const int sign = wedge_sign(ja, jb);
      if (sign == 0) continue;
      // Moving y^{ja} right past fb flips the odd part of fb when |ja| is odd.
      const CoefficientPolynomial moved = mask_parity(ja) ? fb.involution() : fb;
      out.add_term(ja | jb, static_cast<double>(sign) * (fa * moved));
    }
  }
  return out;
}

SuperFunction operator*(double r, const SuperFunction& a) {
  SuperFunction out(a.dims_, a.rank_, a.rank_prime_);
  for (const auto& [monomial, f] : a.coeffs_) out.add_term(monomial, r * f);
  return out;
}

SuperFunction fn_add(const SuperFunction& f, const SuperFunction& g) { return f + g; }
SuperFunction fn_mul(const SuperFunction& f, const SuperFunction& g) { return f * g; }

GrassmannElement evaluate(const SuperFunction& f, const SuperVector& q) {
  require_point(f, q);
  const auto comps = q.components();
  const auto xs = comps.first(f.dims().even);
  const auto ys = comps.subspan(f.dims().even);
  GrassmannElement out(f.rank());
  for (const auto& [monomial, coeff] : f.coefficients())
    out += prolong(coeff, xs, f.rank()) * odd_product(ys, monomial, f.rank());
  return out;
}

SuperFunction even_derivative(const SuperFunction& f, int i) {
  if (i < 1 || i > f.dims().even)
    throw Error(ErrorKind::IndexOutOfRange, "even coordinate " + std::to_string(i));
  SuperFunction out(f.dims(), f.rank(), f.rank_prime());
  for (const auto& [monomial, coeff] : f.coefficients()) out.add_term(monomial, coeff.derivative(i));
  return out;
}

SuperFunction odd_derivative(const SuperFunction& f, int j) {
  if (j < 1 || j > f.dims().odd)
    throw Error(ErrorKind::IndexOutOfRange, "odd coordinate " + std::to_string(j));
  if (!check_lambda_condition(f.rank(), f.rank_prime(), f.dims().odd)) {
    throw Error(ErrorKind::LambdaNotIso,
                "N - N' = " + std::to_string(f.rank() - f.rank_prime()) + " < m = " +
                    std::to_string(f.dims().odd) + ": odd derivative is not well defined");
  }
  const Mask bit = Mask{1} << (j - 1);
  SuperFunction out(f.dims(), f.rank(), f.rank_prime());
  for (const auto& [monomial, coeff] : f.coefficients()) {
    if (!(monomial & bit)) continue;
    const int before = __builtin_popcount(monomial & (bit - 1));
    out.add_term(monomial & ~bit, (before & 1) ? -coeff : coeff);
  }
  return out;
}

namespace {

void require_map(std::span<const SuperFunction> map) {
  if (map.empty()) throw Error(ErrorKind::DimMismatch, "empty map");
  const Dims dims = map.front().dims();
  if (static_cast<int>(map.size()) != dims.total())
    throw Error(ErrorKind::DimMismatch, "map needs n + m components");
  for (int k = 0; k < dims.total(); ++k) {
    if (map[k].dims() != dims || map[k].rank() != map.front().rank())
      throw Error(ErrorKind::DimMismatch, "map components disagree on dims or rank");
    const auto p = map[k].parity();
    if (!p || *p != dims.slot_parity(k)) {
      throw Error(ErrorKind::ParityPattern,
                  "component " + std::to_string(k + 1) + " must be " +
                      (dims.slot_parity(k) ? "odd" : "even"));
    }
  }
}

}  // namespace

SuperFunctionMatrix jacobian(std::span<const SuperFunction> map) {
  require_map(map);
  const Dims dims = map.front().dims();
  SuperFunctionMatrix out(dims.total());
  for (int i = 0; i < dims.total(); ++i) {
    out[i].reserve(dims.total());
    for (int k = 0; k < dims.even; ++k) out[i].push_back(even_derivative(map[i], k + 1));
    for (int k = 0; k < dims.odd; ++k) out[i].push_back(odd_derivative(map[i], k + 1));
  }
  return out;
}

SuperMatrix jacobian_at(std::span<const SuperFunction> map, const SuperVector& q) {
  const SuperFunctionMatrix jac = jacobian(map);
  const Dims dims = map.front().dims();
  const int rank = map.front().rank();
  SuperMatrix out = SuperMatrix::zero(dims, rank);
  for (int i = 0; i < dims.total(); ++i)
    for (int k = 0; k < dims.total(); ++k) out(i, k) = evaluate(jac[i][k], q);
  return out;
}

SuperVector evaluate_map(std::span<const SuperFunction> map, const SuperVector& q) {
  require_map(map);
  std::vector<GrassmannElement> comps;
  comps.reserve(map.size());
  for (const auto& f : map) comps.push_back(evaluate(f, q));
  return SuperVector(q.dims(), std::move(comps), Flavor::Even);
}

}  // namespace supergeom
