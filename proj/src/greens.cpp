#include "eisenlab/greens.hpp"

#include <cmath>
#include <limits>

namespace eisenlab {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double sqrt_pi = 1.7724538509055160273;
constexpr double four_pi = 12.566370614359172954;

cplx green_prefactor(cplx s) {
    // Gamma(s)^2 / Gamma(2s) = sqrt(pi) 2^{1-2s} Gamma(s) / Gamma(s+1/2)
    return sqrt_pi * std::pow(2.0, 1.0 - 2.0 * s) * gamma(s) * rgamma(s + 0.5);
}

// F(s/2, (s+1)/2; s+1/2; x) with x = sech^2 d, evaluated from u:
// direct series for x <= 0.6, the logarithmic connection series otherwise.
cplx sech_hyp_series(cplx s, double u, const PrecisionBudget& budget) {
    double om = 1.0 + 2.0 * u;
    double x = 1.0 / (om * om);
    if (x <= 0.6) {
        cplx term = 1.0, sum = 1.0;
        for (int k = 0; k < 4000; ++k) {
            term *= (s / 2.0 + double(k)) * ((s + 1.0) / 2.0 + double(k)) /
                    ((s + 0.5 + double(k)) * double(k + 1)) * x;
            sum += term;
            if (std::abs(term) < 0.25 * budget.target_abs_err * (1.0 + std::abs(sum))) return sum;
        }
        throw nonconvergence_error("green kernel series stalled");
    }
    // 1 - x = tanh^2 d = 4u(1+u)/(1+2u)^2, cancellation-free
    double omx = 4.0 * u * (1.0 + u) / (om * om);
    return hyp2f1_logcase(s / 2.0, (s + 1.0) / 2.0, omx, budget);
}

} // namespace

cplx green_free(UhpPoint z, UhpPoint w, cplx s) {
    if (!(s.real() > 0.5))
        throw precondition_error("green_free: hypergeometric form needs Re(s) > 1/2");
    double u = point_pair_u(z, w);
    if (u <= 0.0) throw coincidence_error("green_free: z = w");
    cplx F = hyp2f1(s, s, 2.0 * s, -1.0 / u);
    return green_prefactor(s) / four_pi * std::exp(-s * std::log(u)) * F;
}

cplx green_free_series(UhpPoint z, UhpPoint w, cplx s, const PrecisionBudget& budget) {
    double u = point_pair_u(z, w);
    if (u <= 0.0) throw coincidence_error("green_free_series: z = w");
    cplx pref = green_prefactor(s) / four_pi * std::pow(2.0, s);
    double Lcosh = std::log1p(2.0 * u);
    return pref * std::exp(-s * Lcosh) * sech_hyp_series(s, u, budget);
}

GreenEvaluation green_automorphic(UhpPoint z, UhpPoint w, cplx s, const PrecisionBudget& budget,
                                  std::optional<double> radius) {
    budget.validate();
    double sigma = s.real();
    if (!(sigma > 1.0)) throw precondition_error("green_automorphic: requires Re(s) > 1");
    double scale = std::abs(green_prefactor(s) / four_pi * std::pow(2.0, s));
    double kappa = fitted_shell_kappa();
    double R;
    if (radius) {
        R = *radius;
    } else {
        R = std::log(std::max(4.0, scale * kappa / (budget.target_abs_err * (sigma - 1.0)))) /
            (sigma - 1.0);
        R = std::max(R, 5.0);
    }
    if (2.5 * std::exp(R) > double(budget.max_terms))
        throw resource_limit_error("green_automorphic: radius exceeds max_terms");

    struct Acc {
        cplx sum = 0.0;
        void merge(const Acc& o) { sum += o.sum; }
    };
    BallStats stats;
    cplx pref = green_prefactor(s) / four_pi * std::pow(2.0, s);
    Acc acc = ball_fold<Acc>(
        z, w, R,
        [&](Acc& a, double u, long long, long long, long long, long long) {
            a.sum += std::exp(-s * std::log1p(2.0 * u)) * sech_hyp_series(s, u, budget);
        },
        budget, &stats);
    if (dist_from_u(stats.min_u) < 1e-6)
        throw coincidence_error("green_automorphic: z within 1e-6 of the orbit of w");
    GreenEvaluation ev;
    ev.value = pref * acc.sum;
    ev.truncation = R;
    ev.tail_bound = scale * kappa * std::exp((1.0 - sigma) * R) / (sigma - 1.0);
    ev.tail_kind = TailKind::heuristic;
    ev.terms_used = stats.count;
    return ev;
}

GreenEvaluation green_ell(const EllipticAnchor& e, UhpPoint z, cplx s,
                          const PrecisionBudget& budget, std::optional<double> radius) {
    GreenEvaluation ev = green_automorphic(e.location, z, s, budget, radius);
    ev.value /= double(e.order);
    ev.tail_bound /= double(e.order);
    return ev;
}

cplx green_c_factor(cplx s) {
    return std::pow(2.0, s + 1.0) * sqrt_pi * gamma(s + 0.5) * rgamma(s);
}

cplx green_relation_ak(cplx s, int k) {
    if (k < 0) throw precondition_error("green_relation_ak: k >= 0");
    cplx num = pochhammer(s / 2.0 + 0.5, k);
    cplx den = pochhammer(s + 0.5, k);
    return 1.0 - num / den;
}

GreenRelationResult green_relation_gap(const EllipticAnchor& e, UhpPoint z, cplx s, int K,
                                       const PrecisionBudget& budget,
                                       std::optional<double> radius) {
    budget.validate();
    double sigma = s.real();
    if (!(sigma > 1.0)) throw precondition_error("green_relation_gap: requires Re(s) > 1");
    double kappa = fitted_shell_kappa();
    double R;
    if (radius) {
        R = *radius;
    } else {
        R = std::log(std::max(4.0, kappa / (budget.target_abs_err * (sigma - 1.0)))) /
            (sigma - 1.0);
        R = std::max(R, 5.0);
    }

    // one enumeration pass: sinh^{-s}, the Green kernel, and cosh^{-s-2k}
    struct Acc {
        cplx eis = 0.0, grn = 0.0;
        std::vector<cplx> cosh_pows;
        void merge(const Acc& o) {
            eis += o.eis;
            grn += o.grn;
            if (o.cosh_pows.empty()) return;
            if (cosh_pows.empty()) cosh_pows = o.cosh_pows;
            else
                for (size_t i = 0; i < cosh_pows.size(); ++i) cosh_pows[i] += o.cosh_pows[i];
        }
    };
    BallStats stats;
    Acc acc = ball_fold<Acc>(
        e.location, z, R,
        [&](Acc& a, double u, long long, long long, long long, long long) {
            if (a.cosh_pows.empty()) a.cosh_pows.assign((size_t)K + 1, cplx(0.0));
            double Lc = std::log1p(2.0 * u);
            double Ls = 0.5 * (std::log(4.0 * u) + std::log1p(u));
            a.eis += std::exp(-s * Ls);
            a.grn += std::exp(-s * Lc) * sech_hyp_series(s, u, budget);
            cplx t = std::exp(-s * Lc);
            double r = std::exp(-2.0 * Lc);
            for (int k = 0; k <= K; ++k) {
                a.cosh_pows[(size_t)k] += t;
                t *= r;
            }
        },
        budget, &stats);
    if (dist_from_u(stats.min_u) < 1e-6)
        throw coincidence_error("green_relation_gap: z within 1e-6 of the anchor orbit");
    if (acc.cosh_pows.empty()) acc.cosh_pows.assign((size_t)K + 1, cplx(0.0));

    double n_e = double(e.order);
    cplx pref = green_prefactor(s) / four_pi * std::pow(2.0, s);
    cplx eell = acc.eis / n_e;
    cplx gell = pref * acc.grn / n_e;
    cplx series = 0.0;
    cplx poch = 1.0;  // (s/2)_k / k!
    for (int k = 1; k <= K; ++k) {
        poch *= (s / 2.0 + double(k - 1)) / double(k);
        series += poch * green_relation_ak(s, k) * acc.cosh_pows[(size_t)k] / n_e;
    }
    GreenRelationResult out;
    out.gap = std::abs(eell - green_c_factor(s) * gell - series);

    // operand tails at radius R: the sinh series, |c(s)| times the Green sum
    // (per-element value ~ pref cosh^{-s}), and the Pochhammer-weighted block
    double C = 1.0 + 2.0 * stats.min_u;
    double weight = std::pow(1.0 - 1.0 / (C * C), -sigma / 2.0);
    double base = kappa * std::exp((1.0 - sigma) * R) / (sigma - 1.0) / n_e;
    double ktail_r = std::abs(s / 2.0 + double(K + 1)) / double(K + 2) / (C * C);
    double ktail = ktail_r < 1.0
                       ? std::abs(poch * acc.cosh_pows[(size_t)K]) / (1.0 - ktail_r) / n_e
                       : std::numeric_limits<double>::infinity();
    out.combined_tail =
        base * (1.0 + std::abs(green_c_factor(s) * pref) + weight) + ktail;
    return out;
}

} // namespace eisenlab
