#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "supergeom/error.hpp"
#include "supergeom/orthosymplectic.hpp"
#include "supergeom/supermatrix.hpp"

namespace supergeom {

using ChartPair = std::pair<std::string, std::string>;
using ChartTriple = std::array<std::string, 3>;

/// Finite nerve of an open cover: charts, pairwise overlaps and triple
/// overlaps. Overlaps and triples are stored with their labels sorted.
class Nerve {
 public:
  Nerve() = default;
  /// Throws InvalidNerve for unknown labels, self-overlaps, or a triple with
  /// a pair that is not an overlap.
  Nerve(std::vector<std::string> charts, const std::vector<ChartPair>& overlaps,
        const std::vector<ChartTriple>& triples = {});

  const std::vector<std::string>& charts() const { return charts_; }
  const std::set<ChartPair>& overlaps() const { return overlaps_; }
  const std::set<ChartTriple>& triples() const { return triples_; }

  bool has_chart(const std::string& chart) const;
  bool has_overlap(const std::string& a, const std::string& b) const;

  friend bool operator==(const Nerve&, const Nerve&) = default;

 private:
  std::vector<std::string> charts_;
  std::set<ChartPair> overlaps_;
  std::set<ChartTriple> triples_;
};

/// Constant transition supermatrices J_{αβ} on every ordered overlap.
class Cocycle {
 public:
  Cocycle() = default;
  /// Each overlap needs at least one orientation; a missing reverse
  /// orientation is filled in by inversion. Diagonal entries (α, α) are
  /// optional and kept for verification.
  Cocycle(Nerve nerve, std::map<ChartPair, SuperMatrix> transitions);

  const Nerve& nerve() const { return nerve_; }
  const std::map<ChartPair, SuperMatrix>& transitions() const { return transitions_; }
  const SuperMatrix& at(const std::string& from, const std::string& to) const;
  Dims dims() const { return dims_; }
  int rank() const { return rank_; }

 private:
  Nerve nerve_;
  std::map<ChartPair, SuperMatrix> transitions_;
  Dims dims_;
  int rank_ = 0;
};

struct CocycleViolation {
  enum class Kind { NotEven, Singular, Identity, Inverse, Triple };
  Kind kind;
  std::vector<std::string> charts;
  double deviation = 0.0;
};

std::string_view to_string(CocycleViolation::Kind kind);

struct CocycleReport {
  std::vector<CocycleViolation> violations;
  double max_deviation = 0.0;
  bool valid() const { return violations.empty(); }
};

/// Checks parity/invertibility, J_{αα} = I, J_{αβ} J_{βα} = I and
/// J_{αβ} J_{βγ} = J_{αγ} on every triple. Never throws on bad data.
CocycleReport verify_cocycle(const Cocycle& cocycle, double tol);

/// Coset representatives h_α of OSp·h_α, one per chart.
class Section {
 public:
  Section() = default;
  /// Throws UnknownChart for missing/extra charts, NotEven or NotInvertible.
  Section(Nerve nerve, std::map<std::string, SuperMatrix> reps);

  const Nerve& nerve() const { return nerve_; }
  const std::map<std::string, SuperMatrix>& reps() const { return reps_; }
  const SuperMatrix& at(const std::string& chart) const;

  friend bool operator==(const Section&, const Section&) = default;

 private:
  Nerve nerve_;
  std::map<std::string, SuperMatrix> reps_;
};

/// OSp-valued cocycle K with frames g_α such that J_{αβ} = g_α^{-1} K_{αβ} g_β.
class ReductionData {
 public:
  ReductionData() = default;
  ReductionData(Nerve nerve, std::map<ChartPair, SuperMatrix> k,
                std::map<std::string, SuperMatrix> frames);

  const Nerve& nerve() const { return nerve_; }
  const std::map<ChartPair, SuperMatrix>& osp_cocycle() const { return k_; }
  const std::map<std::string, SuperMatrix>& frames() const { return frames_; }

  /// The GL cocycle J_{αβ} = g_α^{-1} K_{αβ} g_β this reduction reduces.
  Cocycle cocycle() const;

 private:
  Nerve nerve_;
  std::map<ChartPair, SuperMatrix> k_;
  std::map<std::string, SuperMatrix> frames_;
};

struct OverlapDeviation {
  std::string from;
  std::string to;
  double deviation = 0.0;
  bool ok = true;
};

/// One entry per overlap (sorted order): OSp deviation of h_α J_{αβ} h_β^{-1}.
struct CompatibilityReport {
  std::vector<OverlapDeviation> overlaps;
  bool compatible() const;
  double max_deviation() const;
};

class NotCompatibleError : public Error {
 public:
  explicit NotCompatibleError(CompatibilityReport report);
  const CompatibilityReport& report() const { return report_; }

 private:
  CompatibilityReport report_;
};

CompatibilityReport check_compatibility(const Cocycle& cocycle, const Section& section, double tol);

/// K_{αβ} = h_α J_{αβ} h_β^{-1}, frames g_α = h_α. Throws NotCompatibleError
/// when some K_{αβ} is not orthosymplectic within `tol`.
ReductionData section_to_reduction(const Cocycle& cocycle, const Section& section, double tol);

/// h_α = g_α. Throws InvalidReduction when K is not an OSp cocycle or a frame
/// is not even and invertible.
Section reduction_to_section(const ReductionData& reduction, double tol = 1e-9);

/// Coset equality: h_α h'^{-1}_α ∈ OSp within `tol` on every chart.
bool sections_equal(const Section& a, const Section& b, double tol);

/// Λ-valued Gram matrix h_α^st G h_α of the supermetric on chart α.
SuperMatrix supermetric_gram(const Section& section, const std::string& chart);

}  // namespace supergeom
