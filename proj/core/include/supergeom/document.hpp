#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "supergeom/reduction.hpp"

namespace supergeom {

/// Contents of a cocycle file (JSON):
///
///     {
///       "rank": 0,
///       "dims": [1, 2],
///       "charts": ["U", "V"],
///       "overlaps": [{"from": "U", "to": "V", "matrix": [["-1", "0", "0"], ...]}],
///       "triples": [["U", "V", "W"]],
///       "section": {"U": [[...]], "V": [[...]]},
///       "frames": {"U": [[...]], "V": [[...]]}
///     }
///
/// Matrix entries are Grassmann element literals (JSON numbers are also
/// accepted). "section" and "frames" are optional; a reduction file is a
/// cocycle file whose overlaps hold the orthosymplectic cocycle K and whose
/// "frames" hold g_α.
struct CocycleDocument {
  int rank = 0;
  Dims dims;
  Nerve nerve;
  /// Transitions exactly as listed in the file, keyed by (from, to).
  std::map<ChartPair, SuperMatrix> transitions;
  std::optional<std::map<std::string, SuperMatrix>> section;
  std::optional<std::map<std::string, SuperMatrix>> frames;

  Cocycle cocycle() const { return Cocycle(nerve, transitions); }
  Section section_data() const;
  ReductionData reduction() const;

  friend bool operator==(const CocycleDocument&, const CocycleDocument&) = default;
};

/// Throws ParseError with the line/column of the offending JSON, or of the
/// offending token inside a matrix entry literal (plus its JSON path).
CocycleDocument parse_cocycle_document(std::string_view text);
std::string to_json(const CocycleDocument& doc);

/// Document holding K as transitions and g_α as frames.
CocycleDocument reduction_document(const ReductionData& reduction, int rank, Dims dims);

}  // namespace supergeom
