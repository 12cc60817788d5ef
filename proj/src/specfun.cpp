#include "eisenlab/specfun.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace eisenlab {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double sqrt_pi = 1.7724538509055160273;
constexpr double log_2pi = 1.8378770664093454836;

// Lanczos coefficients, g = 7, n = 9 (Godfrey).  Good to ~1e-13 relative
// on the half-plane Re(s) >= 1/2 together with reflection below.
constexpr double lanczos_g = 7.0;
constexpr double lanczos_c[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

bool near_nonpositive_integer(cplx s, double tol = 1e-13) {
    if (s.real() > 0.5) return false;
    double r = std::round(s.real());
    return r <= 0.0 && std::abs(s.real() - r) < tol && std::abs(s.imag()) < tol;
}

cplx lanczos_sum(cplx s) {
    // s shifted so that this is called with the argument of Gamma(s), Re(s) >= 0.5
    cplx acc = lanczos_c[0];
    for (int i = 1; i < 9; ++i) acc += lanczos_c[i] / (s - 1.0 + double(i));
    return acc;
}

} // namespace

cplx gamma(cplx s) {
    if (near_nonpositive_integer(s))
        throw pole_error("gamma: pole at non-positive integer");
    if (s.real() < 0.5) {
        // reflection: Gamma(s) = pi / (sin(pi s) Gamma(1-s))
        return pi / (std::sin(pi * s) * gamma(1.0 - s));
    }
    cplx a = lanczos_sum(s);
    cplx t = s - 1.0 + lanczos_g + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(t, s - 0.5) * std::exp(-t) * a;
}

ValErr gamma_ve(cplx s) {
    cplx v = gamma(s);
    return {v, 4e-14 * std::abs(v)};
}

cplx rgamma(cplx s) {
    if (near_nonpositive_integer(s)) return 0.0;
    if (s.real() < 0.5) return std::sin(pi * s) * gamma(1.0 - s) / pi;
    return 1.0 / gamma(s);
}

cplx log_gamma(cplx s) {
    if (s.real() <= 0.0)
        throw precondition_error("log_gamma: requires Re(s) > 0");
    cplx a = lanczos_sum(s);
    cplx t = s - 1.0 + lanczos_g + 0.5;
    return 0.5 * log_2pi + (s - 0.5) * std::log(t) - t + std::log(a);
}

cplx digamma(cplx s) {
    if (near_nonpositive_integer(s))
        throw pole_error("digamma: pole at non-positive integer");
    if (s.real() < 0.0) {
        // psi(s) = psi(1-s) - pi cot(pi s)
        return digamma(1.0 - s) - pi * std::cos(pi * s) / std::sin(pi * s);
    }
    cplx acc = 0.0;
    while (s.real() < 10.0) {
        acc -= 1.0 / s;
        s += 1.0;
    }
    // asymptotic expansion with Bernoulli numbers B2..B14
    static const double b2k[7] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30,
                                  5.0 / 66, -691.0 / 2730, 7.0 / 6};
    cplx inv = 1.0 / s, inv2 = inv * inv;
    cplx r = std::log(s) - 0.5 * inv;
    cplx p = inv2;
    for (int k = 0; k < 7; ++k) {
        r -= b2k[k] / (2.0 * (k + 1)) * p;
        p *= inv2;
    }
    return acc + r;
}

cplx pochhammer(cplx s, int m) {
    if (m < 0) throw precondition_error("pochhammer: m must be >= 0");
    cplx p = 1.0;
    for (int j = 0; j < m; ++j) p *= s + double(j);
    return p;
}

namespace {

// Alternating-series acceleration (Cohen-Rodriguez Villegas-Zagier) for
// sum_{k>=0} (-1)^k a(k).  Error decays like (3+sqrt 8)^{-n} scaled by the
// growth of a(k) off the real axis, so n is picked from Im(s) by the caller.
template <class TermFn>
cplx alternating_cvz(int n, TermFn a) {
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0, c = -d;
    cplx sum = 0.0;
    for (int k = 0; k < n; ++k) {
        c = b - c;
        sum += c * a(k);
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
    }
    return sum / d;
}

int cvz_terms(double abs_im, double extra = 0.0) {
    // (3+sqrt8)^{-n} e^{pi|t|/2} (3+2|t|) <= 1e-16  plus caller margin
    double need = 38.0 + pi * abs_im / 2.0 + std::log(3.0 + 2.0 * abs_im) + extra;
    int n = int(need / std::log(3.0 + std::sqrt(8.0))) + 4;
    return std::min(n, 300);
}

cplx zeta_alternating(cplx s, double* err_out) {
    cplx denom = 1.0 - std::pow(2.0, 1.0 - s);
    double extra = 0.0;
    if (std::abs(denom) < 0.3) extra = -std::log(std::abs(denom)) + 2.0;
    int n = cvz_terms(std::abs(s.imag()), extra);
    cplx eta = alternating_cvz(n, [&](int k) { return std::pow(double(k + 1), -s); });
    if (err_out) {
        double e = std::exp(pi * std::abs(s.imag()) / 2.0) * (3.0 + 2.0 * std::abs(s.imag()));
        *err_out = (e * std::pow(3.0 + std::sqrt(8.0), -double(n)) + 1e-16 * n) / std::abs(denom);
    }
    return eta / denom;
}

} // namespace

ValErr zeta_ve(cplx s) {
    if (std::abs(s - 1.0) < 1e-12) throw pole_error("zeta: pole at s=1");
    // the accelerated eta series stays accurate a little past Re(s) = 0,
    // which keeps the functional-equation branch away from zeta(1)
    if (s.real() >= -0.4) {
        double err = 0.0;
        cplx v = zeta_alternating(s, &err);
        return {v, err};
    }
    // functional equation: zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
    double err1 = 0.0;
    cplx z1 = zeta_alternating(1.0 - s, &err1);
    cplx pre = std::pow(2.0, s) * std::pow(pi, s - 1.0) * std::sin(pi * s / 2.0) * gamma(1.0 - s);
    cplx v = pre * z1;
    double err = std::abs(pre) * err1 + 5e-15 * std::abs(v);
    return {v, err};
}

cplx zeta(cplx s) { return zeta_ve(s).value; }

cplx dirichlet_beta(cplx s) {
    int n = cvz_terms(std::abs(s.imag()));
    return alternating_cvz(n, [&](int k) { return std::pow(double(2 * k + 1), -s); });
}

cplx lambda_completed(cplx s) { return lambda_completed_ve(s).value; }

ValErr lambda_completed_ve(cplx s) {
    if (std::abs(s) < 1e-12 || std::abs(s - 1.0) < 1e-12)
        throw pole_error("lambda_completed: pole at s in {0,1}");
    if (s.real() < 0.5) s = 1.0 - s;  // self-dual; keeps Gamma(s/2) off its poles
    cplx pre = std::pow(pi, -s / 2.0) * gamma(s / 2.0);
    ValErr z = zeta_ve(s);
    return {pre * z.value, std::abs(pre) * (z.abs_err + 4e-14 * std::abs(z.value))};
}

// ---------------------------------------------------------------------------
// Bessel K
// ---------------------------------------------------------------------------

namespace {

bool bessel_asymptotic(cplx nu, double x, cplx* out, double* err) {
    // K_nu(x) ~ sqrt(pi/2x) e^{-x} sum_k a_k(nu)/x^k, usable once x dominates |nu|^2.
    cplx nu2 = 4.0 * nu * nu;
    cplx term = 1.0, sum = 1.0;
    double last = 1.0;
    for (int k = 1; k <= 40; ++k) {
        double tkm1 = 2.0 * k - 1.0;
        term *= (nu2 - tkm1 * tkm1) / (8.0 * k * x);
        double mag = std::abs(term);
        if (mag > last) return false;  // divergence onset before convergence
        sum += term;
        last = mag;
        if (mag < 1e-15 * std::abs(sum)) {
            double pre = std::sqrt(pi / (2.0 * x)) * std::exp(-x);
            *out = pre * sum;
            *err = pre * mag * 2.0;
            return true;
        }
    }
    return false;
}

cplx bessel_integral(cplx nu, double x, double* err) {
    // K_nu(x) = int_0^infty e^{-x cosh t} cosh(nu t) dt, trapezoid in t.
    // Step bounded by both the oscillation of cosh(i Im(nu) t) and the
    // concentration width ~x^{-1/2} of the exponential factor.
    double h = std::min(0.15, 2.0 * pi / (std::abs(nu.imag()) + 38.0));
    h = std::min(h, 2.0 * pi / std::sqrt(72.0 * x + 1.0));
    cplx sum = 0.5;  // f(0) = 1 with half weight
    double fmax = 1.0;
    int decayed = 0;
    long n = 1;
    for (; n < 100000; ++n) {
        double t = n * h;
        double ch = std::cosh(t);
        if (x * (ch - 1.0) > 760.0) break;
        cplx f = std::exp(-x * (ch - 1.0)) * std::cosh(nu * t);
        sum += f;
        double m = std::abs(f);
        fmax = std::max(fmax, m);
        if (m < 1e-18 * fmax) {
            if (++decayed >= 3) break;
        } else {
            decayed = 0;
        }
    }
    cplx v = h * sum * std::exp(-x);
    if (err) *err = std::exp(-x) * (h * fmax * 1e-15 * std::sqrt(double(n)) + 1e-18 * fmax);
    return v;
}

} // namespace

ValErr bessel_k_ve(cplx nu, double x) {
    if (!(x > 0.0)) throw precondition_error("bessel_k: requires x > 0");
    if (x > 690.0) return {0.0, std::numeric_limits<double>::min()};  // underflow-to-zero
    double nn = std::norm(nu);
    if (x >= 30.0 + 0.5 * nn) {
        cplx v;
        double e;
        if (bessel_asymptotic(nu, x, &v, &e)) return {v, e};
    }
    double e = 0.0;
    cplx v = bessel_integral(nu, x, &e);
    return {v, e};
}

cplx bessel_k(cplx nu, double x) { return bessel_k_ve(nu, x).value; }

// ---------------------------------------------------------------------------
// Gauss hypergeometric
// ---------------------------------------------------------------------------

namespace {

ValErr hyp_series(cplx a, cplx b, cplx c, cplx w, const PrecisionBudget& budget) {
    cplx term = 1.0, sum = 1.0;
    double aw = std::abs(w);
    for (long k = 0; k < budget.max_terms; ++k) {
        if (near_nonpositive_integer(c + double(k)))
            throw pole_error("hyp2f1: c is a non-positive integer");
        term *= (a + double(k)) * (b + double(k)) / ((c + double(k)) * double(k + 1)) * w;
        sum += term;
        double mag = std::abs(term);
        if (k > 2 && mag < 0.25 * budget.target_abs_err * (1.0 + std::abs(sum))) {
            // ratio-test tail: once |a+k||b+k|/(|c+k|(k+1)) |w| < r < 1
            double r = std::min(0.97, aw * (1.0 + 16.0 / double(k + 2)));
            return {sum, mag * r / (1.0 - r) + 1e-16 * std::abs(sum)};
        }
    }
    throw nonconvergence_error("hyp2f1: series did not converge within budget");
}

} // namespace

cplx hyp2f1_logcase(cplx a, cplx b, double omz, const PrecisionBudget& budget) {
    // F(a,b;a+b;z) = G(a+b)/(G(a)G(b)) sum_k ((a)_k(b)_k/(k!)^2)
    //                [2 psi(k+1) - psi(a+k) - psi(b+k) - log(1-z)] (1-z)^k
    if (!(omz > 0.0) || omz >= 1.0)
        throw precondition_error("hyp2f1_logcase: needs 0 < 1-z < 1");
    double L = -std::log(omz);
    cplx pa = digamma(a), pb = digamma(b);
    double pk = -0.57721566490153286061;  // psi(1)
    cplx coef = 1.0, sum = 0.0;
    double wpow = 1.0;
    for (long k = 0; k < budget.max_terms; ++k) {
        cplx t = coef * (2.0 * pk - pa - pb + L) * wpow;
        sum += t;
        if (k > 2 && std::abs(t) < 0.25 * budget.target_abs_err * (1.0 + std::abs(sum)) &&
            omz < 0.9)
            break;
        coef *= (a + double(k)) * (b + double(k)) / ((k + 1.0) * (k + 1.0));
        pa += 1.0 / (a + double(k));
        pb += 1.0 / (b + double(k));
        pk += 1.0 / (k + 1.0);
        wpow *= omz;
    }
    return gamma(a + b) / (gamma(a) * gamma(b)) * sum;
}

ValErr hyp2f1_ve(cplx a, cplx b, cplx c, cplx w, const PrecisionBudget& budget) {
    budget.validate();
    if (near_nonpositive_integer(c)) throw pole_error("hyp2f1: c is a non-positive integer");
    if (w == 0.0) return {1.0, 0.0};
    if (std::abs(w) <= 0.92) return hyp_series(a, b, c, w, budget);
    cplx wp = w / (w - 1.0);
    if (std::abs(wp) <= 0.92) {
        // Pfaff: F(a,b;c;w) = (1-w)^{-b} F(c-a, b; c; w/(w-1))
        ValErr r = hyp_series(c - a, b, c, wp, budget);
        cplx pre = std::pow(1.0 - w, -b);
        return {pre * r.value, std::abs(pre) * r.abs_err};
    }
    if (std::abs(c - 2.0 * b) < 1e-12) {
        // quadratic transformation: F(a,b;2b;w) = (1-w/2)^{-a} F(a/2,(a+1)/2; b+1/2; (w/(2-w))^2)
        cplx r = w / (2.0 - w);
        cplx arg = r * r;
        cplx pre = std::pow(1.0 - w / 2.0, -a);
        if (std::abs(arg) <= 0.92) {
            ValErr v = hyp_series(a / 2.0, (a + 1.0) / 2.0, b + 0.5, arg, budget);
            return {pre * v.value, std::abs(pre) * v.abs_err};
        }
        // mapped parameters satisfy c' - a' - b' = b - a; logarithmic case when b = a
        cplx omarg = 4.0 * (1.0 - w) / ((2.0 - w) * (2.0 - w));  // 1 - arg, cancellation-free
        if (std::abs(b - a) < 1e-12 && std::abs(omarg.imag()) < 1e-14 && omarg.real() > 0.0 &&
            omarg.real() < 1.0) {
            cplx v = hyp2f1_logcase(a / 2.0, (a + 1.0) / 2.0, omarg.real(), budget);
            return {pre * v, std::abs(pre * v) * 1e-12};
        }
    }
    throw nonconvergence_error("hyp2f1: |w| >= 1 and no transformation applies");
}

cplx hyp2f1(cplx a, cplx b, cplx c, cplx w, const PrecisionBudget& budget) {
    return hyp2f1_ve(a, b, c, w, budget).value;
}

// ---------------------------------------------------------------------------
// Named constants
// ---------------------------------------------------------------------------

const NamedConstants& named_constants() {
    static const NamedConstants nc = [] {
        NamedConstants c{
            -0.16542114370045092921,  // zeta'(-1)
            3.6256099082219083119,    // Gamma(1/4)
            2.6789385347077476337,    // Gamma(1/3)
            0.91596559417721901505,   // Catalan = beta(2)
        };
        auto relgap = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
        if (relgap(gamma(cplx(0.25)).real(), c.gamma_quarter) > 1e-12)
            throw consistency_error("named_constants: Gamma(1/4) check failed");
        if (relgap(gamma(cplx(1.0 / 3.0)).real(), c.gamma_third) > 1e-12)
            throw consistency_error("named_constants: Gamma(1/3) check failed");
        if (relgap(dirichlet_beta(cplx(2.0)).real(), c.catalan) > 1e-12)
            throw consistency_error("named_constants: Catalan check failed");
        // zeta'(-1) from a 32-node Cauchy circle of radius 1/2 about s = -1
        cplx d1 = 0.0;
        const int n = 32;
        const double r = 0.5;
        for (int j = 0; j < n; ++j) {
            double th = 2.0 * pi * j / n;
            cplx e(std::cos(th), std::sin(th));
            d1 += zeta(cplx(-1.0) + r * e) / e;
        }
        d1 /= double(n) * r;
        if (relgap(d1.real(), c.zeta_prime_minus_one) > 1e-12)
            throw consistency_error("named_constants: zeta'(-1) check failed");
        return c;
    }();
    return nc;
}

} // namespace eisenlab
