#pragma once

#include <string>
#include <vector>

#include "avgroups/exactpoly.hpp"
#include "avgroups/int_types.hpp"

namespace avgroups::textio {

// Polynomial grammar: comma-separated coefficients, ascending degree,
// e.g. "2,-1,1" is t^2 - t + 2. Whitespace is ignored, a leading '+' per
// coefficient is allowed, trailing zero coefficients are normalized away.
// Errors carry the byte position of the offending character.
exactpoly::IntPolynomial parse_polynomial(const std::string& text);
std::string polynomial_to_string(const exactpoly::IntPolynomial& f);

// Group grammar: comma-separated invariant factors, ascending divisibility
// chain with every factor >= 2; the empty string is the trivial group.
std::vector<Int> parse_invariant_factors(const std::string& text);
std::string invariant_factors_to_string(const std::vector<Int>& d);

// Exponent grammar: comma-separated nonnegative integers, ascending.
std::vector<int> parse_exponents(const std::string& text);

} // namespace avgroups::textio
