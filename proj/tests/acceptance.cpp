// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "eisenlab/greens.hpp"
#include "eisenlab/kronecker.hpp"

using namespace eisenlab;

namespace {

constexpr double pi = 3.14159265358979323846;

int failures = 0;

struct Gate {
    std::string name;
    double worst = 0.0;     // largest measured/allowed ratio
    std::string detail;
    bool ok = true;

    void check(const std::string& what, double gap, double allowed) {
        double ratio = gap / allowed;
        if (!(gap <= allowed)) ok = false;
        if (ratio > worst || detail.empty()) {
            worst = ratio;
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s: gap %.3g vs %.3g", what.c_str(), gap, allowed);
            detail = buf;
        }
    }
};

void report(int id, Gate& g, double seconds) {
    std::printf("[%s] criterion %2d: %-34s %6.1fs  worst %s\n", g.ok ? "PASS" : "FAIL", id,
                g.name.c_str(), seconds, g.detail.c_str());
    std::fflush(stdout);
    if (!g.ok) ++failures;
}

template <class Fn>
void criterion(int id, const std::string& name, Fn fn) {
    Gate g;
    g.name = name;
    auto t0 = std::chrono::steady_clock::now();
    fn(g);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, g, secs);
}

double relgap(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

// independent ball oracle: scan of all det-1 matrices with |entries| <= bound
std::vector<ModularElement> brute_ball(UhpPoint z, double R, long long bound) {
    std::vector<ModularElement> out;
    for (long long a = -bound; a <= bound; ++a)
        for (long long b = -bound; b <= bound; ++b) {
            ModularElement g{a, b, 0, 1};
            if (a == 1 && hyp_distance(z, g.apply(z)) <= R + 1e-9) out.push_back(g);
        }
    for (long long c = 1; c <= bound; ++c)
        for (long long d = -bound; d <= bound; ++d)
            for (long long a = -bound; a <= bound; ++a) {
                long long num = a * d - 1;
                if (num % c) continue;
                long long b = num / c;
                if (b < -bound || b > bound) continue;
                ModularElement g{a, b, c, d};
                if (hyp_distance(z, g.apply(z)) <= R + 1e-9) out.push_back(g);
            }
    auto less = [](const ModularElement& x, const ModularElement& y) {
        return std::tie(x.c, x.d, x.a, x.b) < std::tie(y.c, y.d, y.a, y.b);
    };
    std::sort(out.begin(), out.end(), less);
    return out;
}

void crit1_specfun(Gate& g) {
    std::mt19937 rng(20240810);
    std::uniform_real_distribution<double> re(-9.0, 9.0), im(-9.0, 9.0);
    int checked = 0;
    while (checked < 50) {
        cplx s(re(rng), im(rng));
        auto near_pole = [](cplx w) {
            double r = std::round(w.real());
            return r <= 0.0 && std::abs(w.real() - r) < 0.2 && std::abs(w.imag()) < 0.2;
        };
        if (near_pole(s) || near_pole(s + 0.5) || near_pole(2.0 * s)) continue;
        cplx lhs = gamma(s) * gamma(s + 0.5);
        cplx rhs = std::sqrt(pi) * std::pow(cplx(2.0), 1.0 - 2.0 * s) * gamma(2.0 * s);
        g.check("duplication", relgap(lhs, rhs), 1e-10);
        ++checked;
    }
    std::uniform_real_distribution<double> rr(0.6, 4.0), ri(-3.0, 3.0);
    for (int it = 0; it < 10; ++it) {
        cplx s(rr(rng), ri(rng) + 0.25);
        for (int m = 0; m <= 8; ++m) {
            cplx lhs = gamma(s - double(m)) * pochhammer(1.0 - s, m);
            g.check("reflection", relgap(lhs, std::pow(-1.0, m) * gamma(s)), 1e-10);
        }
    }
    std::uniform_real_distribution<double> pd(-2.0, 2.0);
    for (int it = 0; it < 8; ++it) {
        cplx a(pd(rng), pd(rng)), b(pd(rng), pd(rng));
        for (int n = 0; n <= 10; ++n) {
            cplx sum = 0.0;
            double binom = 1.0;
            for (int k = 0; k <= n; ++k) {
                sum += binom * pochhammer(a, k) * pochhammer(b, n - k);
                binom = binom * (n - k) / (k + 1.0);
            }
            cplx target = pochhammer(a + b, n);
            g.check("pochhammer addition", std::abs(sum - target),
                    1e-12 * std::max(1.0, std::abs(target)));
        }
    }
    int lam = 0;
    std::uniform_real_distribution<double> lr(-2.0, 3.0), li(-8.0, 8.0);
    while (lam < 12) {
        cplx s(lr(rng), li(rng));
        if (std::abs(s) < 0.3 || std::abs(s - 1.0) < 0.3) continue;
        g.check("Lambda duality", relgap(lambda_completed(s), lambda_completed(1.0 - s)), 1e-10);
        ++lam;
    }
    for (double x : {0.3, 1.0, 7.5, 40.0}) {
        double closed = std::sqrt(pi / (2.0 * x)) * std::exp(-x);
        g.check("K half closed form", relgap(bessel_k(cplx(0.5), x), closed), 1e-10);
    }
}

void crit2_epar(Gate& g) {
    PrecisionBudget b{3e-9, 1'000'000'000};
    SeriesEvaluation d = eis_par(UhpPoint(0, 1), cplx(2.0), SumMethod::direct, b);
    SeriesEvaluation f = eis_par(UhpPoint(0, 1), cplx(2.0), SumMethod::fourier, b);
    g.check("direct vs fourier", std::abs(d.value - f.value), 1e-8);
    double closed = (2.0 * zeta(cplx(2.0)) * named_constants().catalan / zeta(cplx(4.0))).real();
    g.check("closed form 2 zeta beta / zeta", std::abs(d.value.real() - closed), 1e-6);
    for (int j = 0; j < 10; ++j) {
        cplx s(0.3, -1.8 + 0.4 * j);
        UhpPoint z(0.17, 1.31);
        cplx lhs = eis_par(z, s, SumMethod::fourier).value;
        cplx rhs = scattering_phi(s) * eis_par(z, 1.0 - s, SumMethod::fourier).value;
        g.check("functional equation", std::abs(lhs - rhs), 1e-7 * std::max(1.0, std::abs(lhs)));
        g.check("phi(s)phi(1-s)", std::abs(scattering_phi(s) * scattering_phi(1.0 - s) - 1.0),
                1e-7);
    }
    LaurentJet jet = laurent_jet(
        [](cplx s) { return eis_par(UhpPoint(0, 1), s, SumMethod::fourier).value; }, cplx(1.0),
        0.05, 32);
    g.check("residue 3/pi", std::abs(jet.c_minus1 - 3.0 / pi), 1e-6);
}

void crit3_klf_parabolic(Gate& g) {
    for (UhpPoint z : {UhpPoint(0, 2), UhpPoint(0.3, 1.4), UhpPoint(-0.2, 1.1),
                       UhpPoint(0.45, 2.6), UhpPoint(0.05, 0.95)}) {
        KlfParabolicResult r1 = klf_parabolic(z, JetPoint::at_one);
        g.check("s=1 constant term", std::abs(r1.lhs_c0 - r1.rhs_c0), 1e-5);
        KlfParabolicResult r0 = klf_parabolic(z, JetPoint::at_zero);
        g.check("s=0 c0", std::abs(r0.lhs_c0 - 1.0), 1e-6);
        g.check("s=0 c1", std::abs(r0.lhs_c1 - r0.rhs_c1), 1e-6);
    }
}

void crit4_lemmas(Gate& g) {
    for (const EllipticAnchor& e : {anchor_i(), anchor_rho()}) {
        for (UhpPoint z : {UhpPoint(0, 2), UhpPoint(0.3, 1.4)}) {
            SeriesEvaluation a = eis_ell(e, z, cplx(3.0), SumMethod::direct, {}, 12.0);
            SeriesEvaluation b = eis_ell(e, z, cplx(3.0), SumMethod::conjugacy, {}, 12.0);
            g.check("conjugacy form", std::abs(a.value - b.value),
                    a.tail_bound + b.tail_bound + 1e-12);
        }
        LinkGapResult link = pochhammer_link_gap(e, UhpPoint(0, 2.5), cplx(3.0), 25, {}, 12.0);
        g.check("pochhammer link K=25", link.gap, 1e-6);
    }

    PrecisionBudget tight{1e-11, 400'000'000};
    cplx s(3.0);
    EllipticAnchor e = anchor_i();
    UhpPoint zp(0.2, 1.5);
    auto fp = [&](UhpPoint p) { return poincare_ell(e, p, s, tight, 13.5).value; };
    cplx lhs_p = laplacian_fd(fp, zp, 8e-4 * zp.y) - s * (1.0 - s) * fp(zp);
    cplx rhs_p = s * (s + 1.0) * poincare_ell(e, zp, s + 2.0, tight, 13.5).value;
    g.check("P diff-difference", std::abs(lhs_p - rhs_p), 1e-4);

    UhpPoint ze(0.1, 2.2);
    auto fe = [&](UhpPoint p) { return eis_ell(e, p, s, SumMethod::direct, tight, 13.0).value; };
    cplx lhs_e = laplacian_fd(fe, ze, 4e-4 * ze.y) - s * (1.0 - s) * fe(ze);
    cplx rhs_e = -s * s * eis_ell(e, ze, s + 2.0, SumMethod::direct, tight, 13.0).value;
    g.check("E diff-difference", std::abs(lhs_e - rhs_e), 1e-4);

    SeriesEvaluation li =
        eis_ell(anchor_i(), anchor_rho().location, cplx(3.0), SumMethod::direct, {}, 14.0);
    SeriesEvaluation lr =
        eis_ell(anchor_rho(), anchor_i().location, cplx(3.0), SumMethod::direct, {}, 14.0);
    g.check("2 E_i(rho) = 3 E_rho(i)", std::abs(2.0 * li.value - 3.0 * lr.value),
            2.0 * li.tail_bound + 3.0 * lr.tail_bound + 1e-10);
}

void crit5_green(Gate& g) {
    for (const EllipticAnchor& e : {anchor_i(), anchor_rho()}) {
        for (UhpPoint z : {UhpPoint(0, 2.5), UhpPoint(0.3, 2.0)}) {
            for (double sg : {2.5, 3.0}) {
                GreenRelationResult r = green_relation_gap(e, z, cplx(sg), 40, {}, 11.0);
                g.check("relation gap", r.gap, 2.0 * r.combined_tail);
            }
        }
    }
    cplx a = green_free(UhpPoint(0, 1), UhpPoint(0, 2), cplx(2.5));
    cplx b = green_free_series(UhpPoint(0, 1), UhpPoint(0, 2), cplx(2.5),
                               PrecisionBudget{1e-12, 10'000'000});
    g.check("hyp vs cosh series", relgap(a, b), 1e-9);
    g.check("c(1) = 2pi", std::abs(green_c_factor(cplx(1.0)) - 2.0 * pi), 1e-8);
    LaurentJet cj = laurent_jet([](cplx s) { return green_c_factor(s); }, cplx(0.0));
    g.check("c jet c-1", std::abs(cj.c_minus1), 1e-8);
    g.check("c jet c0", std::abs(cj.c0), 1e-8);
    g.check("c jet c1 = 2pi", std::abs(cj.c1 - 2.0 * pi), 1e-8);
}

void crit6_residue(Gate& g) {
    // sample points sit at hyperbolic distance >= 0.6 from the anchor orbit;
    // closer in, (sigma-1) E^ell steepens and the degree-4 fit extrapolates
    // poorly
    for (UhpPoint z : {UhpPoint(0, 2), UhpPoint(0.3, 1.8), UhpPoint(0.4, 2.2)}) {
        ResidueFit f = residue_at_one(anchor_i(), z, {}, 4, 16.0);
        g.check("residue at i", std::abs(f.residue - 3.0), 0.06);
    }
    for (UhpPoint z : {UhpPoint(0, 2), UhpPoint(0.1, 1.8), UhpPoint(-0.4, 1.9)}) {
        ResidueFit f = residue_at_one(anchor_rho(), z, {}, 4, 16.0);
        g.check("residue at rho", std::abs(f.residue - 2.0), 0.04);
    }
}

void crit7_klf_elliptic(Gate& g) {
    // (a) modular identities at 20 reduced points
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> dx(-0.5, 0.5), dy(0.87, 2.5);
    int checked = 0;
    while (checked < 20) {
        UhpPoint z(dx(rng), dy(rng));
        if (z.x * z.x + z.y * z.y < 1.0) continue;
        g.check("identity at i", modular_identity_gap(AnchorLabel::i, z), 1e-6);
        g.check("identity at rho", modular_identity_gap(AnchorLabel::rho, z), 1e-6);
        ++checked;
    }
    // (b) subtracted constant-term jets
    for (const EllipticAnchor& e : {anchor_i(), anchor_rho()}) {
        for (double y : {2.0, 3.0, 5.0}) {
            SubtractedA0Result r = subtracted_a0_jet(e, y);
            g.check("a0 jet c0 = -C_e", std::abs(r.jet.c0 - r.rhs_c0), 1e-7);
            g.check("a0 jet c1 closed form", std::abs(r.jet.c1 - r.rhs_c1), 1e-5);
        }
    }
    // (c) the constants
    const KlfConstants& kc = klf_constants();  // general-formula link checked to 1e-10 inside
    g.check("B_i", std::abs(kc.B_i - 1.967683), 1e-5);
    g.check("B_rho", std::abs(kc.B_rho - 1.269449), 1e-5);
}

void crit8_a0_fourier(Gate& g) {
    cplx s(2.5);
    for (const EllipticAnchor& e : {anchor_i(), anchor_rho()}) {
        cplx formula = eis_ell_a0(e, 2.0, s, 30);
        cplx avg = 0.0;
        const int nodes = 64;
        for (int j = 0; j < nodes; ++j)
            avg += eis_ell(e, UhpPoint(double(j) / nodes, 2.0), s, SumMethod::direct, {}, 11.5)
                       .value;
        avg /= double(nodes);
        g.check("a0 formula vs x-average", std::abs(formula - avg), 1e-5);
    }
}

void crit9_residue_formulas(Gate& g) {
    for (int n_e : {2, 3}) {
        for (int n : {0, 1, 2}) {
            cplx red_t = residue_prefactor_thm_a_reduced(n, n_e);
            cplx red_p = residue_prefactor_prop_a_reduced(n, n_e);
            for (double t : {1e-2, 1e-3, 1e-4}) {
                cplx mt = residue_prefactor_thm_a(n, cplx(t), +1, n_e) +
                          residue_prefactor_thm_a(n, cplx(t), -1, n_e);
                cplx mp = residue_prefactor_prop_a(n, cplx(t), +1, n_e) +
                          residue_prefactor_prop_a(n, cplx(t), -1, n_e);
                double tol = t <= 1e-4 ? 1e-5 : 1.0;  // the limit itself is judged at t = 1e-4
                g.check("thm(a) limit", relgap(mt, red_t), tol);
                g.check("prop(a) limit", relgap(mp, red_p), tol);
            }
        }
    }
}

void crit10_enumeration(Gate& g) {
    for (UhpPoint z : {UhpPoint(0, 1), UhpPoint(0, 2), UhpPoint(0.3, 1.7)}) {
        for (double R : {1.0, 2.0, 3.0}) {
            auto ball = enumerate_ball(z, R);
            auto sorted = ball.elements;
            auto less = [](const ModularElement& x, const ModularElement& y) {
                return std::tie(x.c, x.d, x.a, x.b) < std::tie(y.c, y.d, y.a, y.b);
            };
            std::sort(sorted.begin(), sorted.end(), less);
            auto oracle = brute_ball(z, R, 50);
            bool equal = sorted.size() == oracle.size() &&
                         std::equal(sorted.begin(), sorted.end(), oracle.begin());
            g.check("set equality", equal ? 0.0 : 1.0, 0.5);
        }
    }
    auto ball = enumerate_ball(UhpPoint(0, 1), 12.0);
    double slope = ball.shell_fit_exponent(6, 11);
    g.check("shell exponent in [0.9, 1.1]", std::abs(slope - 1.0), 0.1);
}

void crit11_gkernel(Gate& g) {
    for (const EllipticAnchor& a : {anchor_i(), anchor_rho()}) {
        double lo = 1e300, hi = -1e300;
        for (double delta : {1e-1, 1e-2, 1e-3}) {
            UhpPoint z(a.location.x + delta / std::sqrt(2.0),
                       a.location.y + delta / std::sqrt(2.0));
            GKernelResult gk = g_kernel(a, z, {}, 60, 10.0);
            double v = gk.value + std::log(delta);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        g.check("log-drift", hi - lo, 0.1);
    }
}

} // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion(1, "special functions", crit1_specfun);
    criterion(2, "parabolic cross-validation", crit2_epar);
    criterion(3, "classical Kronecker limit", crit3_klf_parabolic);
    criterion(4, "elliptic series lemmas", crit4_lemmas);
    criterion(5, "Green's function relation", crit5_green);
    criterion(6, "residue of E^ell at s=1", crit6_residue);
    criterion(7, "elliptic Kronecker limit core", crit7_klf_elliptic);
    criterion(8, "elliptic constant Fourier term", crit8_a0_fourier);
    criterion(9, "residue-formula evaluators", crit9_residue_formulas);
    criterion(10, "ball enumeration oracle", crit10_enumeration);
    criterion(11, "G-kernel log estimate", crit11_gkernel);
    std::printf(failures == 0 ? "all criteria passed\n" : "%d criteria FAILED\n", failures);
    return failures;
}
