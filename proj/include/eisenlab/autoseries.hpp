#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "eisenlab/modgroup.hpp"

namespace eisenlab {

enum class SumMethod { direct, fourier, conjugacy };
enum class TailKind { rigorous, heuristic };

struct SeriesEvaluation {
    cplx value{};
    SumMethod method = SumMethod::direct;
    double truncation = 0.0;  // ball radius, norm bound, or mode count
    double tail_bound = 0.0;
    TailKind tail_kind = TailKind::rigorous;
    std::int64_t terms_used = 0;
};

struct SpectralPoint {
    cplx s_r;
    cplx t_r;
    double lambda;
};

// E(z,s): direct coprime-row sum for Re(s) > 1, or the Fourier-expansion
// continuation (valid away from s = 1).
SeriesEvaluation eis_par(UhpPoint z, cplx s, SumMethod method, const PrecisionBudget& budget = {},
                         std::optional<int> max_modes = {});

// phi(s) = Lambda(2s-1)/Lambda(2s); the removable points s = 0 and s = 1/2
// return their limits 0 and -1.
cplx scattering_phi(cplx s);

// phi_m(s) = (2/Lambda(2s)) sum_{ab=|m|} (a/b)^{s-1/2}, m != 0.
cplx fourier_phi_m(long m, cplx s);

// V_m(z,s) = sum Im(gamma z)^s e(-m Re(gamma z)) over Gamma_infty \ Gamma.
SeriesEvaluation v_par(UhpPoint z, cplx s, long m, const PrecisionBudget& budget = {});

// Elliptic Poincare series (1/n_e) sum_ball cosh(d(e, gamma z))^{-s}.
SeriesEvaluation poincare_ell(const EllipticAnchor& e, UhpPoint z, cplx s,
                              const PrecisionBudget& budget = {},
                              std::optional<double> radius = {});

// Elliptic Eisenstein series; direct sinh-power form or the conjugacy-class
// form sin(pi/n)^s sum u(z, gamma' z)^{-s/2}.
SeriesEvaluation eis_ell(const EllipticAnchor& e, UhpPoint z, cplx s, SumMethod method,
                         const PrecisionBudget& budget = {},
                         std::optional<double> radius = {});

// One enumeration pass, many exponents: sums of kernel(d)^{-s_j} over the
// two-center ball {gamma : d(e.location, gamma z) <= R}, divided by n_e.
enum class BallKernel { sinh_pow, cosh_pow };
std::vector<SeriesEvaluation> ball_series_multi(const EllipticAnchor& e, UhpPoint z,
                                                const std::vector<cplx>& exponents,
                                                BallKernel kind,
                                                const PrecisionBudget& budget = {},
                                                std::optional<double> radius = {});

struct LinkGapResult {
    double gap = 0.0;
    double combined_tail = 0.0;  // sum of the operand tail bounds + k-tail
};

// | E(e,z,s) - sum_{k<=K} (s/2)_k/k! P(e,z,s+2k) |, all three from one pass.
LinkGapResult pochhammer_link_gap(const EllipticAnchor& e, UhpPoint z, cplx s, int K,
                                  const PrecisionBudget& budget = {},
                                  std::optional<double> radius = {});

// -y^2 (d^2/dx^2 + d^2/dy^2) by central differences on the 5-point stencil.
template <class F>
auto laplacian_fd(F&& f, UhpPoint z, double h) {
    if (!(h >= 1e-4 * z.y && h <= 1e-2 * z.y))
        throw precondition_error("laplacian_fd: h must lie in [1e-4, 1e-2] * y");
    auto fc = f(z);
    auto fxp = f(UhpPoint(z.x + h, z.y));
    auto fxm = f(UhpPoint(z.x - h, z.y));
    auto fyp = f(UhpPoint(z.x, z.y + h));
    auto fym = f(UhpPoint(z.x, z.y - h));
    return -(z.y * z.y) * (fxp + fxm + fyp + fym - 4.0 * fc) / (h * h);
}

// I_m(y,s;k1,k2) = int (y+it)^{-s-2k1} (y-it)^{-s-2k2} e(-mt) dt,
// principal branches; requires 2 Re(s) + 2k1 + 2k2 > 1.
cplx im_integral(double y, cplx s, int k1, int k2, long m, const PrecisionBudget& budget = {});

// h(s) = 2^s sqrt(pi) Gamma(s-1/2) / (n_e Gamma(s)), the prefactor of the
// constant Fourier term of the elliptic series.
cplx h_factor(const EllipticAnchor& e, cplx s);
cplx h_factor_n(int n_e, cplx s);

// Constant Fourier coefficient of the elliptic Eisenstein series at height y:
//   a_0(y,s) = h(s) sum_{k<=K} [(s-1/2)_k (s/2)_k / (k! (s/2+1/2)_k)]
//              y^{1-s-2k} E(e_j, s+2k).
cplx eis_ell_a0(const EllipticAnchor& e, double y, cplx s, int K,
                const PrecisionBudget& budget = {});

// The k >= 1 block and the subtracted scattering part separately; needed for
// the Kronecker-limit slope, where the k = 0 term is replaced by
// -h(s) phi(1-s) y^s E(e_j, s).
cplx eis_ell_a0_subtracted(const EllipticAnchor& e, double y, cplx s, int K,
                           const PrecisionBudget& budget = {});

} // namespace eisenlab
