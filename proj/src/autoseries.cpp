#include "eisenlab/autoseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eisenlab {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double two_pi = 6.2831853071795864769;
constexpr double sqrt_pi = 1.7724538509055160273;

cplx rpow(double base, cplx e) {  // base^e for base > 0, principal
    return std::exp(e * std::log(base));
}

// smallest eigenvalue of the binary form |cz+d|^2 = c^2|z|^2 + 2cd x + d^2
double norm_form_lambda_min(UhpPoint z) {
    double n = z.x * z.x + z.y * z.y;
    double tr = n + 1.0;
    double disc = std::sqrt((n - 1.0) * (n - 1.0) + 4.0 * z.x * z.x);
    return 0.5 * (tr - disc);
}

// sum over integer vectors |v| > N of |v|^{-2 sigma}: compare each unit square
// [v, v+1)^2 against the integral of (|x| - sqrt2)^{-2 sigma}
double lattice_tail(double N, double sigma) {
    double M = N - 2.0 * std::sqrt(2.0);
    if (M < 2.0) return std::numeric_limits<double>::infinity();
    return two_pi * (std::pow(M, 2.0 - 2.0 * sigma) / (2.0 * sigma - 2.0) +
                     std::sqrt(2.0) * std::pow(M, 1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0));
}

struct RowSumAcc {
    cplx sum = 0.0;
    void merge(const RowSumAcc& o) { sum += o.sum; }
};

// Coprime-row sum  sum_{rows} rowfn(|cz+d|^2, X0) over the canonical rows
// (0,1) and (c,d), c >= 1, gcd = 1, c^2 + d^2 <= N^2.  Coprimality is sieved
// per row: multiples of each prime factor of c are struck from the d-window,
// which beats a gcd per candidate pair by a wide margin at large N.  X0 is
// only computed when with_x0 is set (it costs an exgcd per row).  Work is
// split by c and partials are combined in ascending order, as in ball_fold.
template <bool with_x0, class RowFn>
cplx coprime_row_sum(UhpPoint z, double N, RowFn rowfn) {
    long long cmax = (long long)std::floor(N);
    std::vector<RowSumAcc> partials((size_t)cmax + 1);
    bool par = exec_mode() == ExecMode::parallel;
#pragma omp parallel for schedule(dynamic, 16) if (par)
    for (long long c = 0; c <= cmax; ++c) {
        RowSumAcc& acc = partials[(size_t)c];
        if (c == 0) {
            acc.sum += rowfn(1.0, z.x);  // the (0,1) row: gamma z = z + t, X0 = x
            continue;
        }
        double rem = N * N - double(c) * double(c);
        if (rem < 0.0) continue;
        long long dmax = (long long)std::floor(std::sqrt(rem));
        double cy2 = double(c) * z.y * double(c) * z.y;

        static thread_local std::vector<char> coprime;
        coprime.assign((size_t)(2 * dmax + 1), 1);
        long long rest = c;
        for (long long p = 2; p * p <= rest; ++p) {
            if (rest % p) continue;
            while (rest % p == 0) rest /= p;
            for (long long d = -(dmax / p) * p; d <= dmax; d += p)
                coprime[(size_t)(d + dmax)] = 0;
        }
        if (rest > 1)
            for (long long d = -(dmax / rest) * rest; d <= dmax; d += rest)
                coprime[(size_t)(d + dmax)] = 0;

        for (long long d = -dmax; d <= dmax; ++d) {
            if (!coprime[(size_t)(d + dmax)]) continue;
            double re = double(c) * z.x + double(d);
            double nm = re * re + cy2;
            if constexpr (with_x0) {
                long long a0, b0;
                long long g = detail::exgcd(d, c, a0, b0);
                if (g < 0) { a0 = -a0; b0 = -b0; }
                b0 = -b0;
                double X0 = ((double(a0) * z.x + double(b0)) * re +
                             double(a0) * z.y * double(c) * z.y) / nm;
                acc.sum += rowfn(nm, X0);
            } else {
                acc.sum += rowfn(nm, 0.0);
            }
        }
    }
    cplx total = 0.0;
    for (auto& p : partials) total += p.sum;
    return total;
}

double direct_norm_bound(UhpPoint z, double sigma, const PrecisionBudget& budget) {
    double lam = norm_form_lambda_min(z);
    double scale = 0.5 * std::pow(z.y, sigma) * std::pow(lam, -sigma);
    double N = 32.0;
    while (scale * lattice_tail(N, sigma) > budget.target_abs_err) {
        N *= 1.08;
        // the scan visits the half-disk c > 0, about (pi/4) N^2 pairs
        if (0.85 * N * N > double(budget.max_terms))
            throw resource_limit_error("eis_par: direct norm bound exceeds max_terms");
    }
    return N;
}

SeriesEvaluation epar_direct(UhpPoint z, cplx s, long m, const PrecisionBudget& budget) {
    double sigma = s.real();
    if (!(sigma > 1.0))
        throw precondition_error("direct parabolic sum requires Re(s) > 1");
    double N = direct_norm_bound(z, sigma, budget);
    SeriesEvaluation ev;
    ev.method = SumMethod::direct;
    ev.truncation = N;
    ev.tail_kind = TailKind::rigorous;
    ev.tail_bound = 0.5 * std::pow(z.y, sigma) * std::pow(norm_form_lambda_min(z), -sigma) *
                    lattice_tail(N, sigma);

    cplx total;
    if (m == 0 && s == cplx(2.0)) {
        // the cross-validation workhorse: avoid pow entirely
        total = coprime_row_sum<false>(z, N, [&](double nm, double) {
            return cplx(1.0 / (nm * nm), 0.0);
        });
    } else if (m == 0 && s.imag() == 0.0) {
        // real exponent fast path
        total = coprime_row_sum<false>(z, N, [&](double nm, double) {
            return cplx(std::pow(nm, -sigma), 0.0);
        });
    } else if (m == 0) {
        total = coprime_row_sum<false>(z, N, [&](double nm, double) {
            return std::exp(-s * std::log(nm));
        });
    } else {
        total = coprime_row_sum<true>(z, N, [&](double nm, double X0) {
            return std::exp(-s * std::log(nm) + cplx(0.0, -two_pi * double(m) * X0));
        });
    }
    ev.value = rpow(z.y, s) * total;
    ev.terms_used = (std::int64_t)(0.85 * N * N);
    return ev;
}

} // namespace

cplx scattering_phi(cplx s) {
    if (std::abs(s - 1.0) < 1e-12) throw pole_error("scattering_phi: pole at s = 1");
    if (std::abs(s) < 1e-12) return 0.0;         // Lambda(2s) pole dominates
    if (std::abs(s - 0.5) < 1e-12) return -1.0;  // both Lambda factors blow up; the limit is -1
    return lambda_completed(2.0 * s - 1.0) / lambda_completed(2.0 * s);
}

cplx fourier_phi_m(long m, cplx s) {
    if (m == 0) throw precondition_error("fourier_phi_m: m != 0");
    if (std::abs(s) < 1e-12) return 0.0;
    long am = m < 0 ? -m : m;
    cplx acc = 0.0;
    for (long a = 1; (long long)a * a <= am; ++a) {
        if (am % a) continue;
        long b = am / a;
        // divisor pair (a,b) and, when distinct, (b,a)
        acc += rpow(double(a) / double(b), s - 0.5);
        if (a != b) acc += rpow(double(b) / double(a), s - 0.5);
    }
    return 2.0 * acc / lambda_completed(2.0 * s);
}

namespace {

// |K_nu(x)| <= sqrt(2 pi / x) e^{-x + a^2/(2x)} with a = |Re nu|,
// from cosh(at) <= e^{at} and cosh t >= 1 + t^2/2.
double bessel_envelope(double a, double x) {
    return std::sqrt(two_pi / x) * std::exp(-x + a * a / (2.0 * x));
}

SeriesEvaluation epar_fourier(UhpPoint z0, cplx s, const PrecisionBudget& budget,
                              int mode_cap) {
    if (std::abs(s - 1.0) < 1e-12) throw pole_error("eis_par: fourier method has a pole at s = 1");
    auto [z, g] = reduce_to_fundamental(z0);
    (void)g;
    const double y = z.y, x = z.x;
    cplx val = rpow(y, s) + scattering_phi(s) * rpow(y, 1.0 - s);
    const double a = std::abs(s.real() - 0.5);
    const double lam2s = std::abs(lambda_completed(2.0 * s));
    const double sq_y = std::sqrt(y);
    int M = 0;
    double tail = 0.0;
    for (int m = 1; m <= mode_cap; ++m) {
        cplx kv = bessel_k(s - 0.5, two_pi * m * y);
        cplx term = fourier_phi_m(m, s) * sq_y * kv * 2.0 * std::cos(two_pi * m * x);
        val += term;
        M = m;
        // envelope of mode m+1 and beyond:
        // |phi_m| <= (4 sqrt m / |Lambda(2s)|) m^{|sigma - 1/2|}
        auto env = [&](int mm) {
            return 4.0 * std::pow(double(mm), 0.5 + a) / lam2s * sq_y *
                   bessel_envelope(a, two_pi * mm * y) * 2.0;
        };
        double r = env(m + 2) / std::max(env(m + 1), 1e-300);
        if (r < 1.0) {
            tail = env(m + 1) / (1.0 - r);
            if (tail < budget.target_abs_err) break;
        }
    }
    SeriesEvaluation ev;
    ev.value = val;
    ev.method = SumMethod::fourier;
    ev.truncation = M;
    ev.tail_bound = tail;
    ev.tail_kind = TailKind::rigorous;
    ev.terms_used = M;
    return ev;
}

} // namespace

SeriesEvaluation eis_par(UhpPoint z, cplx s, SumMethod method, const PrecisionBudget& budget,
                         std::optional<int> max_modes) {
    budget.validate();
    if (max_modes && *max_modes < 1) throw precondition_error("eis_par: max_modes >= 1");
    switch (method) {
        case SumMethod::direct: return epar_direct(z, s, 0, budget);
        case SumMethod::fourier: return epar_fourier(z, s, budget, max_modes.value_or(64));
        default: throw precondition_error("eis_par: method must be direct or fourier");
    }
}

SeriesEvaluation v_par(UhpPoint z, cplx s, long m, const PrecisionBudget& budget) {
    budget.validate();
    return epar_direct(z, s, m, budget);
}

// ---------------------------------------------------------------------------
// ball-sum series
// ---------------------------------------------------------------------------

namespace {

struct MultiAcc {
    std::vector<cplx> sums;
    void merge(const MultiAcc& o) {
        if (o.sums.empty()) return;
        if (sums.empty()) { sums = o.sums; return; }
        for (size_t i = 0; i < sums.size(); ++i) sums[i] += o.sums[i];
    }
};

double heuristic_ball_radius(double sigma, double target, double scale,
                             const PrecisionBudget& budget) {
    double kappa = fitted_shell_kappa();
    double R = std::log(std::max(4.0, scale * kappa / (target * (sigma - 1.0)))) / (sigma - 1.0);
    R = std::max(R, 5.0);
    if (2.5 * std::exp(R) > double(budget.max_terms))
        throw resource_limit_error("ball series: required radius exceeds max_terms");
    return R;
}

double heuristic_ball_tail(double sigma, double R, double scale) {
    return scale * fitted_shell_kappa() * std::exp((1.0 - sigma) * R) / (sigma - 1.0);
}

// sums of kernel^{-s_j} over the two-center ball, one enumeration pass
struct ApBallResult {
    std::vector<cplx> sums;  // not yet divided by n_e
    BallStats stats;
    double radius;
};

ApBallResult list_ball_sums(const EllipticAnchor& e, UhpPoint z,
                            const std::vector<cplx>& exponents, BallKernel kind,
                            const PrecisionBudget& budget, std::optional<double> radius) {
    double sigma_min = exponents[0].real();
    bool real_s = true;
    for (cplx s : exponents) {
        sigma_min = std::min(sigma_min, s.real());
        real_s = real_s && s.imag() == 0.0;
    }
    if (!(sigma_min > 1.0)) throw precondition_error("ball series requires Re(s) > 1");
    double R = radius ? *radius
                      : heuristic_ball_radius(sigma_min, budget.target_abs_err, 1.0, budget);
    if (2.5 * std::exp(R) > double(budget.max_terms))
        throw resource_limit_error("ball series: radius exceeds max_terms");

    // exponent ladders s, s+2, s+4, ... reduce to one exp and a recurrence
    const int count = int(exponents.size());
    bool ap = true;
    for (int k = 1; k < count; ++k)
        if (std::abs(exponents[(size_t)k] - exponents[0] - 2.0 * double(k)) > 1e-14) ap = false;

    ApBallResult out;
    out.radius = R;
    const bool sinh_kernel = (kind == BallKernel::sinh_pow);
    const cplx s0 = exponents[0];
    const std::vector<cplx>& exps = exponents;
    MultiAcc acc = ball_fold<MultiAcc>(
        e.location, z, R,
        [&](MultiAcc& a, double u, long long, long long, long long, long long) {
            if (sinh_kernel && u <= 0.0) return;  // exact coincidence guarded below
            if (a.sums.empty()) a.sums.assign(count, cplx(0.0));
            // ln of the kernel from u: sinh d = 2 sqrt(u(1+u)), cosh d = 1 + 2u
            double L = sinh_kernel ? 0.5 * (std::log(4.0 * u) + std::log1p(u))
                                   : std::log1p(2.0 * u);
            if (ap && real_s) {
                double r = std::exp(-2.0 * L);
                double t = std::exp(-s0.real() * L);
                for (int k = 0; k < count; ++k) { a.sums[k] += t; t *= r; }
            } else if (ap) {
                double r = std::exp(-2.0 * L);
                cplx t = std::exp(-s0 * L);
                for (int k = 0; k < count; ++k) { a.sums[k] += t; t *= r; }
            } else if (real_s) {
                for (int k = 0; k < count; ++k) a.sums[k] += std::exp(-exps[(size_t)k].real() * L);
            } else {
                for (int k = 0; k < count; ++k) a.sums[k] += std::exp(-exps[(size_t)k] * L);
            }
        },
        budget, &out.stats);
    if (acc.sums.empty()) acc.sums.assign(count, cplx(0.0));
    out.sums = std::move(acc.sums);

    if (sinh_kernel && dist_from_u(out.stats.min_u) < 1e-6)
        throw coincidence_error("elliptic series: z is within 1e-6 of the anchor orbit");
    return out;
}

ApBallResult ap_ball_sums(const EllipticAnchor& e, UhpPoint z, cplx s, int count,
                          BallKernel kind, const PrecisionBudget& budget,
                          std::optional<double> radius) {
    std::vector<cplx> exps;
    exps.reserve((size_t)count);
    for (int k = 0; k < count; ++k) exps.push_back(s + 2.0 * double(k));
    return list_ball_sums(e, z, exps, kind, budget, radius);
}

} // namespace

std::vector<SeriesEvaluation> ball_series_multi(const EllipticAnchor& e, UhpPoint z,
                                                const std::vector<cplx>& exponents,
                                                BallKernel kind, const PrecisionBudget& budget,
                                                std::optional<double> radius) {
    budget.validate();
    if (exponents.empty()) return {};
    ApBallResult r = list_ball_sums(e, z, exponents, kind, budget, radius);
    std::vector<SeriesEvaluation> out;
    for (size_t k = 0; k < exponents.size(); ++k) {
        SeriesEvaluation ev;
        ev.value = r.sums[k] / double(e.order);
        ev.method = SumMethod::direct;
        ev.truncation = r.radius;
        ev.tail_bound = heuristic_ball_tail(exponents[k].real(), r.radius, 1.0 / e.order);
        ev.tail_kind = TailKind::heuristic;
        ev.terms_used = r.stats.count;
        out.push_back(ev);
    }
    return out;
}

SeriesEvaluation poincare_ell(const EllipticAnchor& e, UhpPoint z, cplx s,
                              const PrecisionBudget& budget, std::optional<double> radius) {
    return ball_series_multi(e, z, {s}, BallKernel::cosh_pow, budget, radius)[0];
}

namespace {

SeriesEvaluation eis_ell_conjugacy(const EllipticAnchor& e, UhpPoint z, cplx s,
                                   const PrecisionBudget& budget, std::optional<double> radius) {
    if (!e.stab_generator)
        throw precondition_error("eis_ell: conjugacy form needs an elliptic anchor");
    double sigma = s.real();
    if (!(sigma > 1.0)) throw precondition_error("eis_ell: requires Re(s) > 1");
    double R = radius ? *radius
                      : heuristic_ball_radius(sigma, budget.target_abs_err, 1.0, budget);
    const ModularElement ge = *e.stab_generator;
    BallStats stats;
    struct Acc {
        cplx sum = 0.0;
        void merge(const Acc& o) { sum += o.sum; }
    };
    Acc acc = ball_fold<Acc>(
        e.location, z, R,
        [&](Acc& a, double, long long ea, long long eb, long long ec, long long ed) {
            ModularElement g{ea, eb, ec, ed};
            ModularElement conj = g.inverse() * ge * g;
            double uu = point_pair_u(z, conj.apply(z));
            a.sum += std::exp(-0.5 * s * std::log(uu));
        },
        budget, &stats);
    if (dist_from_u(stats.min_u) < 1e-6)
        throw coincidence_error("eis_ell: z is within 1e-6 of the anchor orbit");
    SeriesEvaluation ev;
    ev.value = rpow(std::sin(pi / e.order), s) * acc.sum / double(e.order);
    ev.method = SumMethod::conjugacy;
    ev.truncation = R;
    ev.tail_bound = heuristic_ball_tail(sigma, R, 1.0 / e.order);
    ev.tail_kind = TailKind::heuristic;
    ev.terms_used = stats.count;
    return ev;
}

} // namespace

SeriesEvaluation eis_ell(const EllipticAnchor& e, UhpPoint z, cplx s, SumMethod method,
                         const PrecisionBudget& budget, std::optional<double> radius) {
    budget.validate();
    if (method == SumMethod::conjugacy) return eis_ell_conjugacy(e, z, s, budget, radius);
    if (method != SumMethod::direct)
        throw precondition_error("eis_ell: method must be direct or conjugacy");
    return ball_series_multi(e, z, {s}, BallKernel::sinh_pow, budget, radius)[0];
}

LinkGapResult pochhammer_link_gap(const EllipticAnchor& e, UhpPoint z, cplx s, int K,
                                  const PrecisionBudget& budget, std::optional<double> radius) {
    budget.validate();
    if (K < 0) throw precondition_error("pochhammer_link_gap: K >= 0");
    double sigma = s.real();
    if (!(sigma > 1.0)) throw precondition_error("pochhammer_link_gap: requires Re(s) > 1");
    double R = radius ? *radius
                      : heuristic_ball_radius(sigma, budget.target_abs_err, 1.0, budget);

    ApBallResult ps = ap_ball_sums(e, z, s, K + 1, BallKernel::cosh_pow, budget, R);
    ApBallResult es = ap_ball_sums(e, z, s, 1, BallKernel::sinh_pow, budget, R);

    cplx link = 0.0;
    cplx coef = 1.0;
    for (int k = 0; k <= K; ++k) {
        link += coef * ps.sums[k];
        coef *= (s / 2.0 + double(k)) / double(k + 1);
    }
    double n_e = double(e.order);
    double gap = std::abs(es.sums[0] - link) / n_e;

    // k-tail of the link: |tau_{K+1}|/(1-r) with r the term ratio at the
    // minimal distance, C = cosh d_min; tau_{K+1} bounded by coef * P(s+2K)
    double C = 1.0 + 2.0 * ps.stats.min_u;
    double r = std::abs(s / 2.0 + double(K + 1)) / double(K + 2) / (C * C);
    double ktail = std::numeric_limits<double>::infinity();
    if (r < 1.0) ktail = std::abs(coef * ps.sums[K]) / (1.0 - r) / n_e;

    // ball tails: one sinh series plus the linked cosh series, whose summed
    // Pochhammer weights contribute at most (1 - C^{-2})^{-Re(s)/2}
    double weight = std::pow(1.0 - 1.0 / (C * C), -sigma / 2.0);
    LinkGapResult out;
    out.gap = gap;
    out.combined_tail =
        heuristic_ball_tail(sigma, R, 1.0 / n_e) * (1.0 + weight) + ktail;
    return out;
}

// ---------------------------------------------------------------------------
// I_m integrals
// ---------------------------------------------------------------------------

namespace {

// 16-point Gauss-Legendre on [-1, 1]
constexpr double gl16_x[8] = {
    0.0950125098376374402, 0.2816035507792589132, 0.4580167776572273863,
    0.6178762444026437484, 0.7554044083550030339, 0.8656312023878317439,
    0.9445750230732325761, 0.9894009349916499326};
constexpr double gl16_w[8] = {
    0.1894506104550684963, 0.1826034150449235889, 0.1691565193950025382,
    0.1495959888165767320, 0.1246289712555338720, 0.0951585116824927848,
    0.0622535239386478929, 0.0271524594117540949};

template <class F>
cplx gl16(F&& f, double a, double b) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx s = 0.0;
    for (int i = 0; i < 8; ++i) {
        s += gl16_w[i] * (f(c + h * gl16_x[i]) + f(c - h * gl16_x[i]));
    }
    return h * s;
}

// tanh-sinh quadrature on (-1, 1)
template <class F>
cplx tanh_sinh(F&& f, double target, int max_level = 12) {
    double h = 1.0;
    cplx prev = 0.0;
    cplx result = 0.0;
    for (int level = 0; level <= max_level; ++level) {
        cplx acc = 0.0;
        // at level 0 sum all nodes; afterwards only the new odd-indexed ones
        long jmax = (long)std::ceil(4.0 / h);
        for (long j = (level == 0 ? 0 : 1); j <= jmax; j += (level == 0 ? 1 : 2)) {
            for (int sgn = (j == 0 ? 1 : -1); sgn <= 1; sgn += 2) {
                double u = sgn * j * h;
                double sh = 0.5 * pi * std::sinh(u);
                double x = std::tanh(sh);
                double w = 0.5 * pi * std::cosh(u) / (std::cosh(sh) * std::cosh(sh));
                if (1.0 - std::abs(x) < 1e-17) continue;
                acc += w * f(x);
                if (j == 0) break;
            }
        }
        if (level == 0) result = h * acc;
        else result = 0.5 * result + h * acc;  // h has already been halved
        if (level >= 3 && std::abs(result - prev) < std::max(target, 1e-15 * std::abs(result)))
            return result;
        prev = result;
        h *= 0.5;
    }
    return result;
}

} // namespace

cplx im_integral(double y, cplx s, int k1, int k2, long m, const PrecisionBudget& budget) {
    budget.validate();
    if (!(y > 0.0)) throw precondition_error("im_integral: y > 0");
    if (k1 < 0 || k2 < 0) throw precondition_error("im_integral: k1, k2 >= 0");
    double p2 = 2.0 * s.real() + 2.0 * k1 + 2.0 * k2;  // decay exponent
    if (!(p2 > 1.0))
        throw nonconvergence_error("im_integral: needs 2 Re(s) + 2k1 + 2k2 > 1");

    if (m == 0) {
        // t = y tan(theta):  I = y^{1-2s-2k1-2k2} int cos^{2s+2k1+2k2-2} e^{2i(k2-k1)theta} dtheta
        cplx alpha = 2.0 * s + 2.0 * (k1 + k2) - 2.0;
        double osc = 2.0 * double(k2 - k1);
        auto f = [&](double t) {
            double theta = 0.5 * pi * t;
            double c = std::cos(theta);
            return std::exp(alpha * std::log(c) + cplx(0.0, osc * theta)) * (0.5 * pi);
        };
        cplx integral = tanh_sinh(f, budget.target_abs_err);
        return rpow(y, 1.0 - 2.0 * s - 2.0 * (k1 + k2)) * integral;
    }

    // oscillatory case: integrate in t with a rigorous truncation bound
    double T = std::pow(2.0 / ((p2 - 1.0) * budget.target_abs_err), 1.0 / (p2 - 1.0)) / y;
    T = std::max(T, 8.0 * y);
    if (T > 5e6) throw nonconvergence_error("im_integral: truncation horizon too large");
    cplx a = s + 2.0 * double(k1), b = s + 2.0 * double(k2);
    auto f = [&](double t) {
        return std::exp(-a * std::log(cplx(y, t)) - b * std::log(cplx(y, -t)) +
                        cplx(0.0, -two_pi * double(m) * t));
    };
    double panel = std::min(0.5 * y, 0.25 / std::abs(double(m)));
    long np = (long)std::ceil(T / panel);
    if (np > 40'000'000) throw resource_limit_error("im_integral: too many panels");
    cplx acc = 0.0;
    bool par = exec_mode() == ExecMode::parallel;
    std::vector<cplx> partials(2 * (size_t)np);
#pragma omp parallel for schedule(static) if (par)
    for (long j = 0; j < 2 * np; ++j) {
        long jj = j - np;  // panel [jj*panel, (jj+1)*panel]
        partials[(size_t)j] = gl16(f, jj * panel, (jj + 1) * panel);
    }
    for (auto& p : partials) acc += p;
    return acc;
}

// ---------------------------------------------------------------------------
// constant Fourier coefficient of the elliptic series
// ---------------------------------------------------------------------------

cplx h_factor_n(int n_e, cplx s) {
    return std::pow(2.0, s) * sqrt_pi * gamma(s - 0.5) * rgamma(s) / double(n_e);
}

cplx h_factor(const EllipticAnchor& e, cplx s) { return h_factor_n(e.order, s); }

namespace {

// sum_{k=k_lo..K} [(s-1/2)_k (s/2)_k / (k! (s/2+1/2)_k)] y^{1-s-2k} E(e, s+2k)
cplx a0_k_series(const EllipticAnchor& e, double y, cplx s, int k_lo, int K,
                 const PrecisionBudget& budget) {
    cplx acc = 0.0;
    cplx coef = 1.0;  // k = 0 value
    for (int k = 0; k <= K; ++k) {
        if (k >= k_lo) {
            // the k = 0 factor rides on the continuation; k >= 1 sits at
            // Re(s) + 2k > 1 where the same expansion is simply fast
            cplx ep = eis_par(e.location, s + 2.0 * double(k), SumMethod::fourier, budget).value;
            acc += coef * rpow(y, 1.0 - s - 2.0 * double(k)) * ep;
        }
        coef *= (s - 0.5 + double(k)) * (s / 2.0 + double(k)) /
                ((double(k) + 1.0) * (s / 2.0 + 0.5 + double(k)));
    }
    return acc;
}

} // namespace

cplx eis_ell_a0(const EllipticAnchor& e, double y, cplx s, int K, const PrecisionBudget& budget) {
    budget.validate();
    if (!(y > 1.0)) throw precondition_error("eis_ell_a0: requires y > 1");
    return h_factor(e, s) * a0_k_series(e, y, s, 0, K, budget);
}

cplx eis_ell_a0_subtracted(const EllipticAnchor& e, double y, cplx s, int K,
                           const PrecisionBudget& budget) {
    budget.validate();
    if (!(y > 1.0)) throw precondition_error("eis_ell_a0_subtracted: requires y > 1");
    cplx h = h_factor(e, s);
    cplx kpart = h * a0_k_series(e, y, s, 1, K, budget);
    cplx epar_s = eis_par(e.location, s, SumMethod::fourier, budget).value;
    cplx sub = h * scattering_phi(1.0 - s) * rpow(y, s) * epar_s;
    return kpart - sub;
}

} // namespace eisenlab
