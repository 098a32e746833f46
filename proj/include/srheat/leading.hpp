#pragma once

#include <string>

#include "srheat/quadrature.hpp"
#include "srheat/structure_constants.hpp"

namespace srheat {

// Leading constant of the diagonal small-time kernel expansion
// p_t(x,x) ~ t^{-nu/2} (c0 + O(t)) for the model cases with closed or
// integral forms.
struct C0Result {
    double value = 0.0;
    double error = 0.0;  // quadrature refinement delta; 0 for closed forms
    int nu = 0;
    std::string method;  // closed-form | quadrature-1d | quadrature-pd | mc
};

// Flat case: (2 pi)^{-d/2}, nu = d.
C0Result c0_riemannian(int d);

// Three-dimensional contact case in normal coordinates:
// (2 pi)^{-2} integral of (lambda/2)/sinh(lambda/2), nu = 4. Equals 1/4.
C0Result c0_contact3d(const QuadOptions& opts = {});

// CR model of dimension 2k+1 in Folland-Stein coordinates:
// (1/2)(2 pi)^{-1} integral of ((2 pi)^{-1}(lambda/2)/sinh(lambda/2))^k,
// nu = 2k+2. k=1 gives 1/8.
C0Result c0_cr(int k, const QuadOptions& opts = {});

// sqrt(det G) for the Hilbert-Schmidt Gram matrix G_kl = sum C^k_ij C^l_ij;
// the density of Popp's measure against Lebesgue in these coordinates.
// Throws when the Gram matrix is singular.
double popp_factor(const StructureConstants& c);

enum class Measure { lebesgue, popp };

// Step-two group diagonal constant: (2 pi)^{-n/2-p} times the integral over
// the dual of the center of detFactor(1, zeta . C), nu = n + 2p. The value
// depends only on the structure constants; the popp variant rescales by
// popp_factor. Rank-deficient C makes the integral diverge and is refused.
C0Result c0_steptwo(const StructureConstants& c, Measure measure, const QuadOptions& opts = {});

}  // namespace srheat
