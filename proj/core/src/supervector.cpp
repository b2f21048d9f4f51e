#include "supergeom/supervector.hpp"

#include <algorithm>
#include <string>

#include "supergeom/error.hpp"

namespace supergeom {

namespace {

bool even_pattern(Dims dims, std::span<const GrassmannElement> components) {
  for (int k = 0; k < dims.total(); ++k) {
    const bool ok = dims.slot_parity(k) == 0 ? components[k].is_even() : components[k].is_odd();
    if (!ok) return false;
  }
  return true;
}

void require_even(const SuperVector& q, const char* op) {
  if (q.flavor() != Flavor::Even) {
    throw Error(ErrorKind::FlavorMismatch, std::string(op) + " requires an element of B^{n,m}");
  }
}

void require_compatible(const SuperVector& u, const SuperVector& v) {
  if (u.dims() != v.dims()) throw Error(ErrorKind::DimMismatch, "supervector dims differ");
  if (u.rank() != v.rank()) throw Error(ErrorKind::RankMismatch, "supervector ranks differ");
}

}  // namespace

SuperVector::SuperVector(Dims dims, std::vector<GrassmannElement> components, Flavor flavor)
    : dims_(dims), flavor_(flavor), components_(std::move(components)) {
  if (dims.even < 0 || dims.odd < 0) throw Error(ErrorKind::DimMismatch, "negative dims");
  if (static_cast<int>(components_.size()) != dims.total()) {
    throw Error(ErrorKind::DimMismatch, "expected " + std::to_string(dims.total()) +
                                            " components, got " +
                                            std::to_string(components_.size()));
  }
  if (!components_.empty()) rank_ = components_.front().rank();
  for (const auto& c : components_)
    if (c.rank() != rank_) throw Error(ErrorKind::RankMismatch, "components of different rank");
  if (flavor_ == Flavor::Even && !even_pattern(dims_, components_)) {
    throw Error(ErrorKind::FlavorMismatch,
                "even flavor needs Λ₀ values in even slots and Λ₁ values in odd slots");
  }
}

SuperVector SuperVector::zero(Dims dims, int rank, Flavor flavor) {
  SuperVector out(dims, std::vector<GrassmannElement>(dims.total(), GrassmannElement(rank)),
                  flavor);
  out.rank_ = rank;
  return out;
}

SuperVector SuperVector::embed(std::span<const double> body, Dims dims, int rank) {
  if (static_cast<int>(body.size()) != dims.even)
    throw Error(ErrorKind::DimMismatch, "body vector length differs from n");
  std::vector<GrassmannElement> comps(dims.total(), GrassmannElement(rank));
  for (int i = 0; i < dims.even; ++i) comps[i] = GrassmannElement::scalar(rank, body[i]);
  SuperVector out(dims, std::move(comps), Flavor::Even);
  out.rank_ = rank;
  return out;
}

bool SuperVector::has_even_pattern() const { return even_pattern(dims_, components_); }

std::vector<double> body_map(const SuperVector& q) {
  require_even(q, "body_map");
  std::vector<double> out(q.dims().even);
  for (int i = 0; i < q.dims().even; ++i) out[i] = q[i].body();
  return out;
}

SuperVector soul_map(const SuperVector& q) {
  require_even(q, "soul_map");
  std::vector<GrassmannElement> comps;
  comps.reserve(q.dims().total());
  for (const auto& c : q.components()) comps.push_back(c.soul());
  return SuperVector(q.dims(), std::move(comps), Flavor::Even);
}

SuperVector add(const SuperVector& u, const SuperVector& v) {
  require_compatible(u, v);
  std::vector<GrassmannElement> comps;
  comps.reserve(u.dims().total());
  for (int k = 0; k < u.dims().total(); ++k) comps.push_back(u[k] + v[k]);
  const bool even = even_pattern(u.dims(), comps);
  return SuperVector(u.dims(), std::move(comps), even ? Flavor::Even : Flavor::Full);
}

SuperVector left_scale(const GrassmannElement& lambda, const SuperVector& u) {
  if (u.dims().total() > 0 && lambda.rank() != u.rank())
    throw Error(ErrorKind::RankMismatch, "scalar and vector ranks differ");
  std::vector<GrassmannElement> comps;
  comps.reserve(u.dims().total());
  for (const auto& c : u.components()) comps.push_back(lambda * c);
  const bool even = even_pattern(u.dims(), comps);
  return SuperVector(u.dims(), std::move(comps), even ? Flavor::Even : Flavor::Full);
}

SuperVector to_even_form(const SuperVector& u) {
  const int k = u.dims().total();
  std::vector<GrassmannElement> comps(2 * k, GrassmannElement(u.rank()));
  for (int i = 0; i < k; ++i) {
    comps[i] = u[i].even_part();
    comps[k + i] = u[i].odd_part();
  }
  return SuperVector(Dims{k, k}, std::move(comps), Flavor::Even);
}

SuperVector from_even_form(const SuperVector& v, Dims dims) {
  const int k = dims.total();
  if (v.dims() != Dims{k, k})
    throw Error(ErrorKind::DimMismatch, "even form must have dims (n+m, n+m)");
  std::vector<GrassmannElement> comps;
  comps.reserve(k);
  for (int i = 0; i < k; ++i) comps.push_back(v[i] + v[k + i]);
  return SuperVector(dims, std::move(comps), Flavor::Full);
}

double max_deviation(const SuperVector& a, const SuperVector& b) {
  require_compatible(a, b);
  double m = 0.0;
  for (int k = 0; k < a.dims().total(); ++k) m = std::max(m, max_deviation(a[k], b[k]));
  return m;
}

}  // namespace supergeom
