#pragma once

#include <string>
#include <vector>

#include "singkam/series.hpp"

namespace singkam {

/// Syntax error with the 0-based position in the input text.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : ValidationError(msg + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

/// Context for the human-friendly expression grammar over q1..qn, p1..pn,
/// l1..ln, t1..tn. The token alphaI expands to the configured alpha_i value.
struct ExprContext {
    SeriesParams params;
    std::vector<Complex> alpha; // may be empty if alphaI tokens are not used
};

/// Grammar: expr := ['+'|'-'] term (('+'|'-') term)*
///          term := factor ('*' factor)*
///          factor := base ('^' nat)?
///          base := variable | number | '(' re ('+'|'-') im 'i' ')' | '(' expr ')'
/// Whitespace-insensitive. Errors carry the offending position.
TruncatedSeries parsePoly(const std::string& text, const ExprContext& ctx);

/// Canonical expression output; parsePoly(printPoly(f)) == f exactly.
std::string printPoly(const TruncatedSeries& f);

} // namespace singkam
