#include "supergeom/reduction.hpp"

#include <algorithm>

namespace supergeom {

namespace {

ChartPair sorted_pair(const std::string& a, const std::string& b) {
  return a < b ? ChartPair{a, b} : ChartPair{b, a};
}

OmegaForm form_for(const SuperMatrix& l) { return OmegaForm::for_dims(l.dims(), l.rank()); }

}  // namespace

// Nerve

Nerve::Nerve(std::vector<std::string> charts, const std::vector<ChartPair>& overlaps,
             const std::vector<ChartTriple>& triples)
    : charts_(std::move(charts)) {
  std::vector<std::string> sorted = charts_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorKind::InvalidNerve, "duplicate chart label");
  for (const auto& [a, b] : overlaps) {
    if (!has_chart(a) || !has_chart(b))
      throw Error(ErrorKind::InvalidNerve, "overlap (" + a + ", " + b + ") names an unknown chart");
    if (a == b) throw Error(ErrorKind::InvalidNerve, "self-overlap " + a);
    overlaps_.insert(sorted_pair(a, b));
  }
  for (auto t : triples) {
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2]) throw Error(ErrorKind::InvalidNerve, "degenerate triple");
    for (const auto& [a, b] : {ChartPair{t[0], t[1]}, ChartPair{t[1], t[2]}, ChartPair{t[0], t[2]}}) {
      if (!has_overlap(a, b))
        throw Error(ErrorKind::InvalidNerve, "triple pair (" + a + ", " + b + ") is not an overlap");
    }
    triples_.insert(t);
  }
}

bool Nerve::has_chart(const std::string& chart) const {
  return std::find(charts_.begin(), charts_.end(), chart) != charts_.end();
}

bool Nerve::has_overlap(const std::string& a, const std::string& b) const {
  return overlaps_.count(sorted_pair(a, b)) > 0;
}

// Cocycle

Cocycle::Cocycle(Nerve nerve, std::map<ChartPair, SuperMatrix> transitions)
    : nerve_(std::move(nerve)), transitions_(std::move(transitions)) {
  if (transitions_.empty()) return;
  dims_ = transitions_.begin()->second.dims();
  rank_ = transitions_.begin()->second.rank();
  for (const auto& [pair, j] : transitions_) {
    if (pair.first != pair.second && !nerve_.has_overlap(pair.first, pair.second))
      throw Error(ErrorKind::InvalidNerve, "transition (" + pair.first + ", " + pair.second +
                                               ") is not on an overlap");
    if (pair.first == pair.second && !nerve_.has_chart(pair.first))
      throw Error(ErrorKind::UnknownChart, pair.first);
    if (j.dims() != dims_) throw Error(ErrorKind::DimMismatch, "transitions of different dims");
    if (j.rank() != rank_) throw Error(ErrorKind::RankMismatch, "transitions of different rank");
  }
  for (const auto& [a, b] : nerve_.overlaps()) {
    const bool forward = transitions_.count({a, b}) > 0;
    const bool backward = transitions_.count({b, a}) > 0;
    if (!forward && !backward)
      throw Error(ErrorKind::InvalidNerve, "no transition for overlap (" + a + ", " + b + ")");
    if (!backward) transitions_.emplace(ChartPair{b, a}, invert(transitions_.at({a, b})));
    if (!forward) transitions_.emplace(ChartPair{a, b}, invert(transitions_.at({b, a})));
  }
}

const SuperMatrix& Cocycle::at(const std::string& from, const std::string& to) const {
  auto it = transitions_.find({from, to});
  if (it == transitions_.end()) throw Error(ErrorKind::UnknownChart, "no transition " + from + " -> " + to);
  return it->second;
}

std::string_view to_string(CocycleViolation::Kind kind) {
  switch (kind) {
    case CocycleViolation::Kind::NotEven: return "not-even";
    case CocycleViolation::Kind::Singular: return "singular";
    case CocycleViolation::Kind::Identity: return "identity";
    case CocycleViolation::Kind::Inverse: return "inverse";
    case CocycleViolation::Kind::Triple: return "triple";
  }
  return "unknown";
}

CocycleReport verify_cocycle(const Cocycle& cocycle, double tol) {
  CocycleReport report;
  using Kind = CocycleViolation::Kind;
  auto note = [&](Kind kind, std::vector<std::string> charts, double deviation) {
    report.max_deviation = std::max(report.max_deviation, deviation);
    if (deviation > tol || kind == Kind::NotEven || kind == Kind::Singular)
      report.violations.push_back({kind, std::move(charts), deviation});
  };
  const auto& transitions = cocycle.transitions();
  if (transitions.empty()) return report;
  const SuperMatrix identity = SuperMatrix::identity(cocycle.dims(), cocycle.rank());

  for (const auto& [pair, j] : transitions) {
    if (parity_of(j) != MatrixParity::Even) note(Kind::NotEven, {pair.first, pair.second}, 0.0);
    if (!is_invertible(j)) note(Kind::Singular, {pair.first, pair.second}, 0.0);
    if (pair.first == pair.second) note(Kind::Identity, {pair.first}, max_deviation(j, identity));
  }
  for (const auto& [a, b] : cocycle.nerve().overlaps()) {
    const SuperMatrix& ab = cocycle.at(a, b);
    const SuperMatrix& ba = cocycle.at(b, a);
    note(Kind::Inverse, {a, b}, std::max(max_deviation(ab * ba, identity), max_deviation(ba * ab, identity)));
  }
  for (const auto& t : cocycle.nerve().triples()) {
    const SuperMatrix lhs = cocycle.at(t[0], t[1]) * cocycle.at(t[1], t[2]);
    note(Kind::Triple, {t[0], t[1], t[2]}, max_deviation(lhs, cocycle.at(t[0], t[2])));
  }
  return report;
}

// Section

Section::Section(Nerve nerve, std::map<std::string, SuperMatrix> reps)
    : nerve_(std::move(nerve)), reps_(std::move(reps)) {
  for (const auto& chart : nerve_.charts())
    if (!reps_.count(chart)) throw Error(ErrorKind::UnknownChart, "section has no value on chart " + chart);
  for (const auto& [chart, h] : reps_) {
    if (!nerve_.has_chart(chart)) throw Error(ErrorKind::UnknownChart, "section names unknown chart " + chart);
    if (parity_of(h) != MatrixParity::Even) throw Error(ErrorKind::NotEven, "representative on " + chart);
    if (!is_invertible(h)) throw Error(ErrorKind::NotInvertible, "representative on " + chart);
  }
}

const SuperMatrix& Section::at(const std::string& chart) const {
  auto it = reps_.find(chart);
  if (it == reps_.end()) throw Error(ErrorKind::UnknownChart, chart);
  return it->second;
}

// ReductionData

ReductionData::ReductionData(Nerve nerve, std::map<ChartPair, SuperMatrix> k,
                             std::map<std::string, SuperMatrix> frames)
    : nerve_(std::move(nerve)), k_(std::move(k)), frames_(std::move(frames)) {}

Cocycle ReductionData::cocycle() const {
  std::map<ChartPair, SuperMatrix> j;
  for (const auto& [pair, k] : k_) {
    auto from = frames_.find(pair.first);
    auto to = frames_.find(pair.second);
    if (from == frames_.end() || to == frames_.end())
      throw Error(ErrorKind::InvalidReduction, "missing frame for " + pair.first + " or " + pair.second);
    j.emplace(pair, invert(from->second) * k * to->second);
  }
  return Cocycle(nerve_, std::move(j));
}

// Correspondence

bool CompatibilityReport::compatible() const {
  return std::all_of(overlaps.begin(), overlaps.end(), [](const auto& o) { return o.ok; });
}

double CompatibilityReport::max_deviation() const {
  double m = 0.0;
  for (const auto& o : overlaps) m = std::max(m, o.deviation);
  return m;
}

namespace {

std::string describe(const CompatibilityReport& report) {
  std::string out;
  for (const auto& o : report.overlaps) {
    if (o.ok) continue;
    if (!out.empty()) out += "; ";
    out += "(" + o.from + ", " + o.to + ") deviation " + std::to_string(o.deviation);
  }
  return out;
}

void require_same_nerve(const Nerve& a, const Nerve& b) {
  if (!(a == b)) throw Error(ErrorKind::NerveMismatch, "objects live on different nerves");
}

}  // namespace

NotCompatibleError::NotCompatibleError(CompatibilityReport report)
    : Error(ErrorKind::NotCompatible, describe(report)), report_(std::move(report)) {}

CompatibilityReport check_compatibility(const Cocycle& cocycle, const Section& section, double tol) {
  require_same_nerve(cocycle.nerve(), section.nerve());
  CompatibilityReport report;
  for (const auto& [a, b] : cocycle.nerve().overlaps()) {
    const SuperMatrix k = section.at(a) * cocycle.at(a, b) * invert(section.at(b));
    const OspReport r = osp_report(form_for(k), k, tol);
    report.overlaps.push_back({a, b, r.max_deviation, r.ok});
  }
  return report;
}

ReductionData section_to_reduction(const Cocycle& cocycle, const Section& section, double tol) {
  CompatibilityReport report = check_compatibility(cocycle, section, tol);
  if (!report.compatible()) throw NotCompatibleError(std::move(report));
  std::map<ChartPair, SuperMatrix> k;
  for (const auto& [pair, j] : cocycle.transitions())
    k.emplace(pair, section.at(pair.first) * j * invert(section.at(pair.second)));
  return ReductionData(section.nerve(), std::move(k), section.reps());
}

Section reduction_to_section(const ReductionData& reduction, double tol) {
  const Nerve& nerve = reduction.nerve();
  const auto& k = reduction.osp_cocycle();
  for (const auto& [pair, kab] : k) {
    if (parity_of(kab) != MatrixParity::Even || !is_osp(kab, tol))
      throw Error(ErrorKind::InvalidReduction,
                  "K(" + pair.first + ", " + pair.second + ") is not orthosymplectic");
  }
  for (const auto& [a, b] : nerve.overlaps()) {
    if (!k.count({a, b}) || !k.count({b, a}))
      throw Error(ErrorKind::InvalidReduction, "K missing on overlap (" + a + ", " + b + ")");
    const SuperMatrix& kab = k.at({a, b});
    const SuperMatrix identity = SuperMatrix::identity(kab.dims(), kab.rank());
    if (max_deviation(kab * k.at({b, a}), identity) > tol)
      throw Error(ErrorKind::InvalidReduction, "K(" + a + ", " + b + ") K(" + b + ", " + a + ") != I");
  }
  for (const auto& t : nerve.triples()) {
    if (max_deviation(k.at({t[0], t[1]}) * k.at({t[1], t[2]}), k.at({t[0], t[2]})) > tol)
      throw Error(ErrorKind::InvalidReduction, "K fails the triple condition on " + t[0] + t[1] + t[2]);
  }
  try {
    return Section(nerve, reduction.frames());
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidReduction, std::string("bad frame: ") + e.what());
  }
}

bool sections_equal(const Section& a, const Section& b, double tol) {
  require_same_nerve(a.nerve(), b.nerve());
  for (const auto& chart : a.nerve().charts()) {
    const SuperMatrix ratio = a.at(chart) * invert(b.at(chart));
    if (!is_osp(form_for(ratio), ratio, tol)) return false;
  }
  return true;
}

SuperMatrix supermetric_gram(const Section& section, const std::string& chart) {
  if (!section.nerve().has_chart(chart)) throw Error(ErrorKind::UnknownChart, chart);
  const SuperMatrix& h = section.at(chart);
  return pulled_back_gram(form_for(h), h);
}

}  // namespace supergeom
