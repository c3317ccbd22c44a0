#pragma once

#include <string>
#include <string_view>

#include "tflats/body.hpp"
#include "tflats/errors.hpp"

namespace tflats {

/// Malformed body description; what() starts with "<source>:<line>:<column>:".
class ParseError : public InvalidArgument {
public:
    ParseError(const std::string& source, int line, int column, const std::string& message);

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Parses a real number or a product/quotient with pi, e.g. "0.3", "pi/4", "-2*pi/3", "1e-3".
/// Throws InvalidArgument on malformed input.
double parse_number(std::string_view token);

/// Reads a body from `key = value` lines. '#' starts a comment. Keys:
///   kind      metric_sphere | affine_sphere | ellipsoid | quadric | implicit
///   n         ambient dimension of RP^n
///   radius    radians for metric_sphere, chart units for affine_sphere
///   center    n+1 coordinates (metric_sphere) or n affine coordinates
///   semiaxes  n values (ellipsoid)
///   chart     index of the homogenizing coordinate, default 0
///   row       one row of the symmetric matrix (quadric; n+1 lines)
///   term      coefficient followed by n+1 exponents (implicit; repeated)
///   interior  n+1 coordinates of a point with F < 0 (implicit)
///   convex    true | false (implicit, default false)
ConvexBody parse_body(std::string_view text, const std::string& source = "<input>");

ConvexBody load_body(const std::string& path);

}  // namespace tflats
