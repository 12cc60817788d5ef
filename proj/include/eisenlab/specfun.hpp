#pragma once

#include <complex>
#include <cstdint>

#include "eisenlab/errors.hpp"

namespace eisenlab {

using cplx = std::complex<double>;

// Truncation controls shared by every series evaluator.
struct PrecisionBudget {
    double target_abs_err = 1e-10;
    std::int64_t max_terms = 400'000'000;

    void validate() const {
        if (!(target_abs_err > 0.0))
            throw precondition_error("PrecisionBudget: target_abs_err must be > 0");
        if (max_terms <= 0 || max_terms > 1'000'000'000)
            throw precondition_error("PrecisionBudget: max_terms out of range (0, 1e9]");
    }
};

// Value with an absolute error estimate attached.
struct ValErr {
    cplx value{};
    double abs_err = 0.0;
};

// Constants that several modules need at full double accuracy.  Stored to
// ~18 digits and checked against this module's own evaluators on first use.
struct NamedConstants {
    double zeta_prime_minus_one;  // zeta'(-1)
    double gamma_quarter;         // Gamma(1/4)
    double gamma_third;           // Gamma(1/3)
    double catalan;               // beta(2)
};

const NamedConstants& named_constants();

// Gamma via a fixed rational (Lanczos) approximation for Re(s) >= 1/2 plus
// reflection.  Relative error ~1e-13 for |s| <= 50.
cplx gamma(cplx s);
ValErr gamma_ve(cplx s);  // flat relative-error model of the rational approximation
cplx rgamma(cplx s);      // 1/Gamma, entire; 0 at non-positive integers
cplx log_gamma(cplx s);   // principal branch, continuous for Re(s) > 0
cplx digamma(cplx s);

// (s)_m = s(s+1)...(s+m-1) as a finite product; (s)_0 = 1.
cplx pochhammer(cplx s, int m);

// zeta via alternating-series acceleration for Re(s) > 0 and the
// functional equation otherwise.
cplx zeta(cplx s);
ValErr zeta_ve(cplx s);

// Dirichlet beta(s) = sum (-1)^n (2n+1)^{-s}; beta(2) is Catalan.
cplx dirichlet_beta(cplx s);

// Lambda(s) = pi^{-s/2} Gamma(s/2) zeta(s); poles at s = 0, 1.
cplx lambda_completed(cplx s);
ValErr lambda_completed_ve(cplx s);

// Modified Bessel K_nu(x), complex order, real x > 0.
cplx bessel_k(cplx nu, double x);
ValErr bessel_k_ve(cplx nu, double x);

// Gauss 2F1.  Direct series for |w| < 1; Pfaff map or the quadratic
// argument transformation (c = 2b) otherwise; logarithmic connection
// formula when the working argument is too close to 1.
cplx hyp2f1(cplx a, cplx b, cplx c, cplx w, const PrecisionBudget& budget = {});
ValErr hyp2f1_ve(cplx a, cplx b, cplx c, cplx w, const PrecisionBudget& budget = {});

// F(a,b;a+b;z) near z=1 via the log-type connection series in (1-z).
// Exposed for the Green's function kernel, which calls it with 1-z = tanh^2 d.
cplx hyp2f1_logcase(cplx a, cplx b, double one_minus_z, const PrecisionBudget& budget = {});

} // namespace eisenlab
