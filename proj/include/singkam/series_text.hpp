#pragma once

#include <iosfwd>
#include <string>

#include "singkam/series.hpp"

namespace singkam {

/// Canonical line format, one monomial per line, graded-lex order:
///   re im : t1..tn | l1..ln | q1..qn | p1..pn
/// Coefficients are printed with 17 significant digits, so read(write(f)) == f.
std::string writeSeriesText(const TruncatedSeries& f);
void writeSeriesText(std::ostream& os, const TruncatedSeries& f);

/// Parses the line format back; ignores blank lines. Throws ValidationError on
/// malformed lines or cap violations.
TruncatedSeries readSeriesText(const std::string& text, const SeriesParams& params);

/// Shortest-exact decimal for a double (17 significant digits via %.17g).
std::string formatDouble(double v);

} // namespace singkam
