#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "supergeom/error.hpp"
#include "supergeom/grassmann.hpp"
#include "supergeom/superfunction.hpp"
#include "supergeom/supermatrix.hpp"
#include "supergeom/supervector.hpp"

namespace supergeom {

/// Parse failure with a 1-based position inside the parsed text.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

// Grassmann elements: `3 + 5*c1^c2 - 2*c1`. `^` between generators is the
// wedge product; parentheses and `*` are allowed. Printing lists terms by
// ascending bitmask.
std::string to_literal(const GrassmannElement& a);
GrassmannElement parse_element(std::string_view text, int rank);

// Supervectors: `[1 + c1^c2, 4, c1] : B(2|1) even` (or `full`).
std::string to_literal(const SuperVector& v);
SuperVector parse_supervector(std::string_view text, int rank);

// Supermatrices: a `dims=(n|m) rank=N` header followed by one bracketed,
// comma-separated row per line. The header may be omitted when dims and
// rank are supplied by the caller; when both are present they must agree.
std::string to_literal(const SuperMatrix& l);
SuperMatrix parse_supermatrix(std::string_view text, std::optional<Dims> dims = std::nullopt,
                              std::optional<int> rank = std::nullopt);

// Superfunctions: header `dims=(n,m) rank=N Nprime=0`, then an expression
// in z<i> (even), y<j> (odd) and c<k> (generators), e.g.
// `(3 + c1^c2)*z1^2*y2 + z2*y1`. `z1^2` is a power.
std::string expression_literal(const SuperFunction& f);
std::string to_literal(const SuperFunction& f);
SuperFunction parse_superfunction(std::string_view text, std::optional<Dims> dims = std::nullopt,
                                  std::optional<int> rank = std::nullopt,
                                  std::optional<int> rank_prime = std::nullopt);

}  // namespace supergeom
