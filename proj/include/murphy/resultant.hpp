#pragma once

#include "murphy/poly.hpp"

namespace murphy {

// Determinant of a square matrix of polynomials by fraction-free (Bareiss)
// elimination; divisions are exact in the polynomial ring.
Poly poly_det(std::vector<std::vector<Poly>> m);

// Sylvester-style resultant eliminating the variable `var` from p and q.
// Row layout: y^0*p, ..., y^(n-1)*p, then y^(m-1)*q, ..., y^0*q, columns in
// descending powers (m = deg_var p, n = deg_var q). Requires positive degree
// in `var` on both sides; throws input_error on zero input.
Poly resultant_var(const Poly& p, const Poly& q, std::uint32_t var);

// Convenience for the toolkit's standard contexts: eliminates "y".
Poly resultant_y(const Poly& p, const Poly& q);

}  // namespace murphy
