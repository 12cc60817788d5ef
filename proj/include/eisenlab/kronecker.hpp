#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "eisenlab/autoseries.hpp"
#include "eisenlab/modforms.hpp"

namespace eisenlab {

// Orders -1, 0, 1 of a Laurent expansion, numerically extracted.
struct LaurentJet {
    cplx c_minus1{};
    cplx c0{};
    cplx c1{};
    double residual = 0.0;  // node-doubling consistency gap
};

// Cauchy-circle trapezoid around s0; f may have at most a simple pole at s0.
// Coefficients are computed at `nodes` and `2*nodes` points and the doubling
// gap is the residual; jets whose residual exceeds the acceptance threshold
// throw nonconvergence_error.
LaurentJet laurent_jet(const std::function<cplx(cplx)>& f, cplx s0, double radius = 0.02,
                       int nodes = 32);

struct KlfConstants {
    double C_par;   // (6 - 72 zeta'(-1) - 6 log(4 pi)) / pi
    double B_i;     // -72 zeta'(-1) + 3 log(2 pi) - 12 log Gamma(1/4)
    double B_rho;   // -48 zeta'(-1) + 4 log(2 pi / sqrt 3) - 12 log Gamma(1/3)
    double C_i = 3.0;
    double C_rho = 2.0;
};

// Closed forms above, checked on first use against the general expression
// B_e = -C_e (24 zeta'(-1) + log(8 pi^2) + log |Delta(e)|^{1/6}) - C_e log Im(e)
// instantiated with the special values of |Delta| at i and rho.
const KlfConstants& klf_constants();

enum class JetPoint { at_zero, at_one };

struct KlfParabolicResult {
    LaurentJet jet;
    cplx lhs_c0{}, rhs_c0{};
    cplx lhs_c1{}, rhs_c1{};  // only filled by the s = 0 variant
};

// Classical Kronecker limit formula for E(z, .): constant term at s = 1
// against -(1/2pi) log(|Delta| y^6) + C_par, and the (1, log(|Delta|^{1/6} y))
// jet at s = 0.
KlfParabolicResult klf_parabolic(UhpPoint z, JetPoint at);

struct SubtractedA0Result {
    LaurentJet jet;        // of the subtracted constant term at s = 0
    double rhs_c0 = 0.0;   // -C_e
    double rhs_c1 = 0.0;   // -C_e (24 zeta'(-1) + log(8 pi^2) + log y + log(|Delta(e)|^{1/6} Im e))
};

SubtractedA0Result subtracted_a0_jet(const EllipticAnchor& e, double y, int K = 30);

struct ResidueFit {
    double residue = 0.0;
    double fit_residual = 0.0;
    std::vector<double> sigma_grid;
    std::vector<double> values;  // (sigma - 1) E^ell(e, z, sigma)
};

// Least-squares Chebyshev fit of (sigma-1) E^ell(e,z,sigma) on a real grid in
// [1.4, 3.5], extrapolated to sigma = 1.  Grid defaults to 8 points; degree 4.
ResidueFit residue_at_one(const EllipticAnchor& e, UhpPoint z,
                          std::vector<double> sigma_grid = {}, int degree = 4,
                          double radius = 16.0, const PrecisionBudget& budget = {});

// Polynomial fit utility (exposed for the degenerate-data test).
double chebyshev_fit_eval(const std::vector<double>& xs, const std::vector<double>& ys,
                          int degree, double x_eval, double* residual = nullptr);

struct GKernelResult {
    double value = 0.0;
    double tail_bound = 0.0;       // ball truncation, heuristic
    std::vector<double> partial;   // cumulative k-partial sums, k = 1..k_cut
};

// G_e(z) = sum_{k>=1} P^ell(e,z,2k)/(2k).  The first k_cut terms are summed
// per the definition; the k-tail beyond k_cut is folded in exactly through
// sum_k C^{-2k}/2k = -log(1 - C^{-2})/2 applied per element.
GKernelResult g_kernel(const EllipticAnchor& e, UhpPoint z, const PrecisionBudget& budget = {},
                       int k_cut = 60, std::optional<double> radius = {});

// Residue prefactors of the continuation statements; spectral data enters as
// abstract caller-supplied values.  `sign` picks the +/- branch of t_r.
cplx residue_prefactor_thm_a(int n, cplx t_r, int sign, int n_e);
cplx residue_prefactor_thm_a_reduced(int n, int n_e);  // merged branches at t_r = 0
cplx residue_prefactor_prop_a(int n, cplx t_r, int sign, int n_e);
cplx residue_prefactor_prop_a_reduced(int n, int n_e);
cplx residue_prefactor_thm_b(int n, cplx rho, int n_e);

} // namespace eisenlab
