#pragma once

#include <string>

#include "hochlab/dgcore/algebra.hpp"
#include "hochlab/exactalg/errors.hpp"

namespace hochlab {

/// Syntax or validation error in a presentation file; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

/**
 * Line-based presentation format; '#' starts a comment.
 *
 *   base = Q | Q[x]
 *   algebra = commutative | free
 *   generator NAME degree D [weight W] [nilpotent K]
 *   relation NAME^K = 0
 *   d NAME = EXPR
 *   curvature = EXPR
 *
 * EXPR is a sum of products of rationals, generators, x (over Q[x]) and
 * parenthesized expressions, with integer powers. The result is validated.
 */
DgPresentation parse_presentation(const std::string& text);

/// The same format, parseable by parse_presentation.
std::string format_presentation(const DgPresentation& P);

}  // namespace hochlab
