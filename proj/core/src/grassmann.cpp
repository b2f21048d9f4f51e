#include "supergeom/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "supergeom/error.hpp"

namespace supergeom {

namespace {

void check_rank(int rank) {
  if (rank < 0) throw Error(ErrorKind::IndexOutOfRange, "negative rank " + std::to_string(rank));
  if (rank > kMaxRank) {
    throw Error(ErrorKind::RankTooLarge,
                "rank " + std::to_string(rank) + " exceeds cap " + std::to_string(kMaxRank));
  }
}

void check_mask(Mask mask, int rank) {
  if (rank < 32 && (mask >> rank) != 0) {
    throw Error(ErrorKind::IndexOutOfRange, "generator index exceeds rank " + std::to_string(rank));
  }
}

// Sorts by mask, merges equal masks and drops exact zeros.
std::vector<GrassmannElement::Term> canonicalize(std::vector<GrassmannElement::Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<GrassmannElement::Term> out;
  out.reserve(terms.size());
  for (const auto& [mask, value] : terms) {
    if (!out.empty() && out.back().first == mask) {
      out.back().second += value;
    } else {
      out.emplace_back(mask, value);
    }
  }
  std::erase_if(out, [](const auto& t) { return t.second == 0.0; });
  return out;
}

constexpr int kDenseRankLimit = 10;

}  // namespace

MultiIndex MultiIndex::from_indices(std::span<const int> indices, int rank) {
  check_rank(rank);
  Mask mask = 0;
  int previous = 0;
  for (int i : indices) {
    if (i < 1 || i > rank) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "index " + std::to_string(i) + " not in [1, " + std::to_string(rank) + "]");
    }
    if (mask & (Mask{1} << (i - 1))) {
      throw Error(ErrorKind::DuplicateIndex, "index " + std::to_string(i) + " repeated");
    }
    if (i < previous) {
      throw Error(ErrorKind::UnsortedIndex, "indices must be strictly increasing");
    }
    previous = i;
    mask |= Mask{1} << (i - 1);
  }
  return MultiIndex(mask);
}

int MultiIndex::size() const { return __builtin_popcount(mask_); }

std::vector<int> MultiIndex::indices() const {
  std::vector<int> out;
  for (Mask m = mask_; m; m &= m - 1) out.push_back(__builtin_ctz(m) + 1);
  return out;
}

int wedge_sign(Mask a, Mask b) {
  if (a & b) return 0;
  // Each generator j of b must move left past every generator of a above j.
  int swaps = 0;
  for (Mask m = b; m; m &= m - 1) {
    const int j = __builtin_ctz(m);
    swaps += __builtin_popcount(a >> (j + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

GrassmannElement::GrassmannElement(int rank) : rank_(rank) { check_rank(rank); }

GrassmannElement GrassmannElement::scalar(int rank, double value) {
  GrassmannElement out(rank);
  if (value != 0.0) out.terms_.emplace_back(0, value);
  return out;
}

GrassmannElement GrassmannElement::generator(int rank, int index) {
  return monomial(rank, MultiIndex::from_indices({index}, rank));
}

GrassmannElement GrassmannElement::monomial(int rank, MultiIndex index, double coefficient) {
  GrassmannElement out(rank);
  check_mask(index.mask(), rank);
  if (coefficient != 0.0) out.terms_.emplace_back(index.mask(), coefficient);
  return out;
}

GrassmannElement GrassmannElement::from_terms(int rank,
                                              std::span<const std::pair<MultiIndex, double>> terms) {
  check_rank(rank);
  std::vector<Term> raw;
  raw.reserve(terms.size());
  for (const auto& [index, value] : terms) {
    check_mask(index.mask(), rank);
    raw.emplace_back(index.mask(), value);
  }
  return GrassmannElement(rank, canonicalize(std::move(raw)));
}

double GrassmannElement::coefficient(Mask mask) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                             [](const Term& t, Mask m) { return t.first < m; });
  return (it != terms_.end() && it->first == mask) ? it->second : 0.0;
}

GrassmannElement GrassmannElement::soul() const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (t.first != 0) out.push_back(t);
  return GrassmannElement(rank_, std::move(out));
}

GrassmannElement GrassmannElement::even_part() const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (mask_parity(t.first) == 0) out.push_back(t);
  return GrassmannElement(rank_, std::move(out));
}

GrassmannElement GrassmannElement::odd_part() const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (mask_parity(t.first) == 1) out.push_back(t);
  return GrassmannElement(rank_, std::move(out));
}

GrassmannElement GrassmannElement::grade_part(int k) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (__builtin_popcount(t.first) == k) out.push_back(t);
  return GrassmannElement(rank_, std::move(out));
}

bool GrassmannElement::is_even() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return mask_parity(t.first) == 0; });
}

bool GrassmannElement::is_odd() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return mask_parity(t.first) == 1; });
}

std::optional<int> GrassmannElement::parity() const {
  if (is_even()) return 0;
  if (is_odd()) return 1;
  return std::nullopt;
}

double GrassmannElement::norm() const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += std::abs(t.second);
  return sum;
}

double GrassmannElement::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.second));
  return m;
}

GrassmannElement GrassmannElement::inverse() const {
  const double b = body();
  if (b == 0.0) throw Error(ErrorKind::ZeroBody, "element with zero body has no inverse");
  // a = b (1 + t) with t = soul/b nilpotent, so a^-1 = b^-1 sum_k (-t)^k.
  const GrassmannElement minus_t = soul() * (-1.0 / b);
  GrassmannElement sum = scalar(rank_, 1.0);
  GrassmannElement power = sum;
  for (int k = 1; k <= rank_; ++k) {
    power = power * minus_t;
    if (power.is_zero()) break;
    sum += power;
  }
  return sum * (1.0 / b);
}

GrassmannElement GrassmannElement::pow(int exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  GrassmannElement out = scalar(rank_, 1.0);
  for (int k = 0; k < exponent; ++k) out = out * *this;
  return out;
}

GrassmannElement GrassmannElement::involution() const {
  GrassmannElement out = *this;
  for (auto& t : out.terms_)
    if (mask_parity(t.first)) t.second = -t.second;
  return out;
}

GrassmannElement GrassmannElement::operator-() const {
  GrassmannElement out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

void GrassmannElement::require_same_rank(const GrassmannElement& other) const {
  if (rank_ != other.rank_) {
    throw Error(ErrorKind::RankMismatch,
                "ranks " + std::to_string(rank_) + " and " + std::to_string(other.rank_));
  }
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& other) {
  require_same_rank(other);
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      const double v = a->second + b->second;
      if (v != 0.0) out.emplace_back(a->first, v);
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& other) {
  return *this += -other;
}

GrassmannElement& GrassmannElement::operator*=(double r) {
  if (r == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= r;
  std::erase_if(terms_, [](const Term& t) { return t.second == 0.0; });
  return *this;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
  a.require_same_rank(b);
  if (a.is_zero() || b.is_zero()) return GrassmannElement(a.rank_);
  if (a.rank_ <= kDenseRankLimit) {
    std::vector<double> dense(std::size_t{1} << a.rank_, 0.0);
    std::vector<bool> touched(dense.size(), false);
    for (const auto& [ma, va] : a.terms_) {
      for (const auto& [mb, vb] : b.terms_) {
        const int s = wedge_sign(ma, mb);
        if (s == 0) continue;
        dense[ma | mb] += s * va * vb;
        touched[ma | mb] = true;
      }
    }
    std::vector<GrassmannElement::Term> out;
    for (std::size_t m = 0; m < dense.size(); ++m)
      if (touched[m] && dense[m] != 0.0) out.emplace_back(static_cast<Mask>(m), dense[m]);
    return GrassmannElement(a.rank_, std::move(out));
  }
  std::vector<GrassmannElement::Term> raw;
  for (const auto& [ma, va] : a.terms_) {
    for (const auto& [mb, vb] : b.terms_) {
      const int s = wedge_sign(ma, mb);
      if (s != 0) raw.emplace_back(ma | mb, s * va * vb);
    }
  }
  return GrassmannElement(a.rank_, canonicalize(std::move(raw)));
}

GrassmannElement scale(double r, const GrassmannElement& a) { return r * a; }

double max_deviation(const GrassmannElement& a, const GrassmannElement& b) {
  return (a - b).max_abs_coefficient();
}

}  // namespace supergeom
