#pragma once

#include "polyclark/multipoly.hpp"
#include "polyclark/unipoly.hpp"

namespace polyclark {

// Approximate GCD via SVD rank decision on the Sylvester matrix. The degree
// of the returned (monic) GCD is the rank deficiency at relative threshold
// tol_rank; cofactors come from the null vector of the reduced Sylvester
// matrix, and the GCD itself from a joint least-squares deconvolution.
// Constant inputs (or full-rank pairs) yield the constant 1.
UniPoly approx_gcd(const UniPoly& a, const UniPoly& b, double tol_rank = 1e-8);

// Content of h in C[z_other][z_j] for bivariate h: the iterated approx_gcd
// of the coefficient polynomials of h in powers of z_j. Returned as a
// bivariate MultiPoly involving only the other variable, normalized monic.
// Rejects the zero polynomial and nvars != 2.
MultiPoly content_in_variable(const MultiPoly& h, int j, double tol_rank = 1e-8);

}  // namespace polyclark
