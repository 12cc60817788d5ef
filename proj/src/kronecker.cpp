#include "eisenlab/kronecker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eisenlab {

namespace {
constexpr double pi = 3.14159265358979323846;
constexpr double two_pi = 6.2831853071795864769;
constexpr double sqrt3 = 1.7320508075688772935;
} // namespace

LaurentJet laurent_jet(const std::function<cplx(cplx)>& f, cplx s0, double radius, int nodes) {
    if (!(radius >= 1e-3 && radius <= 0.1))
        throw precondition_error("laurent_jet: radius must lie in [1e-3, 0.1]");
    if (nodes < 8) throw precondition_error("laurent_jet: nodes >= 8");
    const int N2 = 2 * nodes;
    std::vector<cplx> fv((size_t)N2);
    for (int j = 0; j < N2; ++j) {
        double th = two_pi * j / N2;
        fv[(size_t)j] = f(s0 + radius * cplx(std::cos(th), std::sin(th)));
    }
    auto coef = [&](int k, int stride) {
        // c_k = (1/N) sum_j f_j (r e^{i theta_j})^{-k}
        cplx acc = 0.0;
        int n = N2 / stride;
        for (int j = 0; j < N2; j += stride) {
            double th = two_pi * j / N2;
            cplx w = std::polar(std::pow(radius, -double(k)), -k * th);
            acc += fv[(size_t)j] * w;
        }
        return acc / double(n);
    };
    LaurentJet jet;
    jet.c_minus1 = coef(-1, 1);
    jet.c0 = coef(0, 1);
    jet.c1 = coef(1, 1);
    double res = std::max({std::abs(jet.c_minus1 - coef(-1, 2)), std::abs(jet.c0 - coef(0, 2)),
                           std::abs(jet.c1 - coef(1, 2))});
    jet.residual = res;
    double scale = std::max({std::abs(jet.c_minus1), std::abs(jet.c0), std::abs(jet.c1), 1.0});
    if (res > 1e-6 * scale)
        throw nonconvergence_error("laurent_jet: node-doubling residual too large");
    return jet;
}

const KlfConstants& klf_constants() {
    static const KlfConstants kc = [] {
        const NamedConstants& nc = named_constants();
        KlfConstants k{};
        k.C_par = (6.0 - 72.0 * nc.zeta_prime_minus_one - 6.0 * std::log(4.0 * pi)) / pi;
        k.B_i = -72.0 * nc.zeta_prime_minus_one + 3.0 * std::log(two_pi) -
                12.0 * std::log(nc.gamma_quarter);
        k.B_rho = -48.0 * nc.zeta_prime_minus_one + 4.0 * std::log(two_pi / sqrt3) -
                  12.0 * std::log(nc.gamma_third);

        // general formula with the special values |Delta(i)|^{1/6}, |Delta(rho)|^{1/6}
        double common = 24.0 * nc.zeta_prime_minus_one + std::log(8.0 * pi * pi);
        double d6_i = std::pow(nc.gamma_quarter, 4.0) / (2.0 * std::pow(two_pi, 3.0));
        double d6_rho = sqrt3 * std::pow(nc.gamma_third, 6.0) / std::pow(two_pi, 4.0);
        double bi_gen = -k.C_i * (common + std::log(d6_i)) - k.C_i * std::log(1.0);
        double br_gen = -k.C_rho * (common + std::log(d6_rho)) - k.C_rho * std::log(sqrt3 / 2.0);
        if (std::abs(bi_gen - k.B_i) > 1e-10 || std::abs(br_gen - k.B_rho) > 1e-10)
            throw consistency_error("klf_constants: general formula mismatch");
        return k;
    }();
    return kc;
}

KlfParabolicResult klf_parabolic(UhpPoint z, JetPoint at) {
    PrecisionBudget jet_budget{1e-11, 100'000'000};
    auto f = [&](cplx s) { return eis_par(z, s, SumMethod::fourier, jet_budget).value; };
    KlfParabolicResult out;
    DeltaJ dj = eval_delta_and_j(z);
    if (at == JetPoint::at_one) {
        out.jet = laurent_jet(f, cplx(1.0), 0.02, 32);
        out.lhs_c0 = out.jet.c0;
        out.rhs_c0 = -std::log(std::abs(dj.delta) * std::pow(z.y, 6.0)) / two_pi +
                     klf_constants().C_par;
    } else {
        out.jet = laurent_jet(f, cplx(0.0), 0.02, 32);
        out.lhs_c0 = out.jet.c0;
        out.rhs_c0 = 1.0;
        out.lhs_c1 = out.jet.c1;
        out.rhs_c1 = std::log(std::pow(std::abs(dj.delta), 1.0 / 6.0) * z.y);
    }
    return out;
}

SubtractedA0Result subtracted_a0_jet(const EllipticAnchor& e, double y, int K) {
    if (!(y > 1.0)) throw precondition_error("subtracted_a0_jet: requires y > 1");
    PrecisionBudget jet_budget{1e-11, 100'000'000};
    auto f = [&](cplx s) { return eis_ell_a0_subtracted(e, y, s, K, jet_budget); };
    SubtractedA0Result out;
    out.jet = laurent_jet(f, cplx(0.0), 0.02, 32);
    double C_e = 6.0 / double(e.order);
    const NamedConstants& nc = named_constants();
    double d6 = std::pow(std::abs(eval_delta_and_j(e.location).delta), 1.0 / 6.0);
    out.rhs_c0 = -C_e;
    out.rhs_c1 = -C_e * (24.0 * nc.zeta_prime_minus_one + std::log(8.0 * pi * pi) + std::log(y) +
                         std::log(d6 * e.location.y));
    return out;
}

double chebyshev_fit_eval(const std::vector<double>& xs, const std::vector<double>& ys,
                          int degree, double x_eval, double* residual) {
    if (xs.size() != ys.size() || xs.size() < size_t(degree + 1))
        throw precondition_error("chebyshev_fit_eval: need more samples than coefficients");
    double lo = *std::min_element(xs.begin(), xs.end());
    double hi = *std::max_element(xs.begin(), xs.end());
    auto tmap = [&](double x) { return (2.0 * x - lo - hi) / (hi - lo); };
    int m = degree + 1;
    auto cheb_row = [&](double x, std::vector<double>& row) {
        double t = tmap(x);
        row[0] = 1.0;
        if (m > 1) row[1] = t;
        for (int j = 2; j < m; ++j) row[j] = 2.0 * t * row[j - 1] - row[j - 2];
    };
    // normal equations A^T A c = A^T y (m <= 8, well within double range)
    std::vector<double> ata((size_t)m * m, 0.0), aty((size_t)m, 0.0), row((size_t)m);
    for (size_t i = 0; i < xs.size(); ++i) {
        cheb_row(xs[i], row);
        for (int p = 0; p < m; ++p) {
            aty[(size_t)p] += row[(size_t)p] * ys[i];
            for (int q = 0; q < m; ++q) ata[(size_t)(p * m + q)] += row[(size_t)p] * row[(size_t)q];
        }
    }
    // Gaussian elimination with partial pivoting
    std::vector<double> c = aty;
    for (int p = 0; p < m; ++p) {
        int piv = p;
        for (int q = p + 1; q < m; ++q)
            if (std::abs(ata[(size_t)(q * m + p)]) > std::abs(ata[(size_t)(piv * m + p)])) piv = q;
        if (piv != p) {
            for (int q = 0; q < m; ++q) std::swap(ata[(size_t)(p * m + q)], ata[(size_t)(piv * m + q)]);
            std::swap(c[(size_t)p], c[(size_t)piv]);
        }
        double d = ata[(size_t)(p * m + p)];
        if (std::abs(d) < 1e-300) throw consistency_error("chebyshev_fit_eval: singular system");
        for (int q = p + 1; q < m; ++q) {
            double fct = ata[(size_t)(q * m + p)] / d;
            for (int r = p; r < m; ++r) ata[(size_t)(q * m + r)] -= fct * ata[(size_t)(p * m + r)];
            c[(size_t)q] -= fct * c[(size_t)p];
        }
    }
    for (int p = m - 1; p >= 0; --p) {
        for (int q = p + 1; q < m; ++q) c[(size_t)p] -= ata[(size_t)(p * m + q)] * c[(size_t)q];
        c[(size_t)p] /= ata[(size_t)(p * m + p)];
    }
    auto eval = [&](double x) {
        cheb_row(x, row);
        double v = 0.0;
        for (int j = 0; j < m; ++j) v += c[(size_t)j] * row[(size_t)j];
        return v;
    };
    if (residual) {
        double r = 0.0;
        for (size_t i = 0; i < xs.size(); ++i) r = std::max(r, std::abs(eval(xs[i]) - ys[i]));
        *residual = r;
    }
    return eval(x_eval);
}

ResidueFit residue_at_one(const EllipticAnchor& e, UhpPoint z, std::vector<double> sigma_grid,
                          int degree, double radius, const PrecisionBudget& budget) {
    if (sigma_grid.empty())
        sigma_grid = {1.4, 1.55, 1.7, 1.9, 2.15, 2.45, 2.9, 3.5};
    for (double s : sigma_grid)
        if (!(s >= 1.4 && s <= 3.5))
            throw precondition_error("residue_at_one: sigma grid must lie in [1.4, 3.5]");
    std::vector<cplx> exps(sigma_grid.begin(), sigma_grid.end());
    // one enumeration pass at the largest radius; every exponent reuses it
    std::vector<SeriesEvaluation> vals =
        ball_series_multi(e, z, exps, BallKernel::sinh_pow, budget, radius);
    ResidueFit fit;
    fit.sigma_grid = sigma_grid;
    for (size_t i = 0; i < sigma_grid.size(); ++i)
        fit.values.push_back((sigma_grid[i] - 1.0) * vals[i].value.real());
    fit.residue = chebyshev_fit_eval(fit.sigma_grid, fit.values, degree, 1.0, &fit.fit_residual);
    if (fit.fit_residual > 0.1 * std::abs(fit.residue))
        throw consistency_error("residue_at_one: ill-conditioned fit");
    return fit;
}

GKernelResult g_kernel(const EllipticAnchor& e, UhpPoint z, const PrecisionBudget& budget,
                       int k_cut, std::optional<double> radius) {
    budget.validate();
    if (k_cut < 1) throw precondition_error("g_kernel: k_cut >= 1");
    double kappa = fitted_shell_kappa();
    double R = radius ? *radius
                      : std::max(5.0, std::log(std::max(4.0, kappa / budget.target_abs_err)));
    if (2.5 * std::exp(R) > double(budget.max_terms))
        throw resource_limit_error("g_kernel: radius exceeds max_terms");

    struct Acc {
        std::vector<double> pk;  // sum of C^{-2k}, k = 1..k_cut
        double rem = 0.0;        // exact k-tail via -log(1 - C^{-2})/2
        void merge(const Acc& o) {
            rem += o.rem;
            if (o.pk.empty()) return;
            if (pk.empty()) pk = o.pk;
            else
                for (size_t i = 0; i < pk.size(); ++i) pk[i] += o.pk[i];
        }
    };
    BallStats stats;
    Acc acc = ball_fold<Acc>(
        e.location, z, R,
        [&](Acc& a, double u, long long, long long, long long, long long) {
            if (u <= 0.0) return;
            if (a.pk.empty()) a.pk.assign((size_t)k_cut, 0.0);
            double C2inv = 1.0 / ((1.0 + 2.0 * u) * (1.0 + 2.0 * u));
            double t = 1.0;
            double head = 0.0;
            for (int k = 1; k <= k_cut; ++k) {
                t *= C2inv;
                a.pk[(size_t)k - 1] += t;
                head += t / (2.0 * k);
            }
            // tanh^2 d = 4u(1+u)/(1+2u)^2; total over k is -log(tanh d)
            double tanh2 = 4.0 * u * (1.0 + u) * C2inv;
            a.rem += -0.5 * std::log(tanh2) - head;
        },
        budget, &stats);
    if (dist_from_u(stats.min_u) < 1e-6)
        throw coincidence_error("g_kernel: z within 1e-6 of the anchor orbit");
    if (acc.pk.empty()) acc.pk.assign((size_t)k_cut, 0.0);

    GKernelResult out;
    double n_e = double(e.order);
    double cum = 0.0;
    for (int k = 1; k <= k_cut; ++k) {
        cum += acc.pk[(size_t)k - 1] / (2.0 * k) / n_e;
        out.partial.push_back(cum);
    }
    out.value = cum + acc.rem / n_e;
    out.tail_bound = kappa * std::exp(-R) / n_e;  // leading k = 1 shell tail, sigma_eff = 2
    return out;
}

// ---------------------------------------------------------------------------
// residue prefactors
// ---------------------------------------------------------------------------

namespace {
constexpr double sqrt_pi_c = 1.7724538509055160273;
double nfact(int n) {
    double f = 1.0;
    for (int j = 2; j <= n; ++j) f *= j;
    return f;
}
} // namespace

cplx residue_prefactor_thm_a(int n, cplx t_r, int sign, int n_e) {
    if (n < 0 || n_e < 1) throw precondition_error("residue_prefactor_thm_a: bad arguments");
    cplx w = cplx(0.0, sign >= 0 ? 1.0 : -1.0) * t_r;
    // Gamma(w)/Gamma(w-2n) = (w-2n)_{2n}, exact; keeps the t_r -> 0 limit finite
    cplx ratio = pochhammer(w - 2.0 * double(n), 2 * n);
    cplx p34 = pochhammer(0.75 - w / 2.0, n);
    cplx den = nfact(n) * double(n_e) * gamma(0.5 + w) * pochhammer(1.0 - w, n);
    double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    return sgn * std::pow(cplx(2.0), 0.5 + w) * sqrt_pi_c * ratio * p34 * p34 / den;
}

cplx residue_prefactor_thm_a_reduced(int n, int n_e) {
    double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    double p34 = pochhammer(cplx(0.75), n).real();
    return sgn * std::pow(2.0, 1.5) * nfact(2 * n) * p34 * p34 /
           (nfact(n) * nfact(n) * double(n_e));
}

cplx residue_prefactor_prop_a(int n, cplx t_r, int sign, int n_e) {
    if (n < 0 || n_e < 1) throw precondition_error("residue_prefactor_prop_a: bad arguments");
    cplx w = cplx(0.0, sign >= 0 ? 1.0 : -1.0) * t_r;
    // Gamma(w-n)/Gamma(w-2n) = (w-2n)_n
    cplx ratio = pochhammer(w - 2.0 * double(n), n);
    double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    return sgn * std::pow(cplx(2.0), 0.5 + w - 2.0 * double(n)) * sqrt_pi_c * ratio /
           (nfact(n) * double(n_e));
}

cplx residue_prefactor_prop_a_reduced(int n, int n_e) {
    return std::pow(2.0, 1.5 - 2.0 * double(n)) * sqrt_pi_c * nfact(2 * n) /
           (nfact(n) * nfact(n) * double(n_e));
}

cplx residue_prefactor_thm_b(int n, cplx rho, int n_e) {
    if (n < 0 || n_e < 1) throw precondition_error("residue_prefactor_thm_b: bad arguments");
    // Gamma(1/2-rho)/Gamma(1/2-rho-2n) = (1/2-rho-2n)_{2n}; 1/Gamma(1-rho)
    // through the entire reciprocal, finite at rho = 1
    cplx ratio = pochhammer(0.5 - rho - 2.0 * double(n), 2 * n);
    cplx pnum = pochhammer(0.5 + rho / 2.0, n);
    double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    return sgn * std::pow(cplx(2.0), 1.0 - rho) * sqrt_pi_c * pnum * pnum * ratio *
           rgamma(1.0 - rho) / (nfact(n) * double(n_e) * pochhammer(0.5 + rho, n));
}

} // namespace eisenlab
