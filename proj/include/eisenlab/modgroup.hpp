#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "eisenlab/hypgeo.hpp"
#include "eisenlab/specfun.hpp"

namespace eisenlab {

// Integer matrix in PSL(2,Z), canonical sign c > 0, or c = 0 and d > 0.
struct ModularElement {
    long long a = 1, b = 0, c = 0, d = 1;

    long long det() const { return a * d - b * c; }

    ModularElement normalized() const {
        if (c < 0 || (c == 0 && d < 0)) return {-a, -b, -c, -d};
        return *this;
    }
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

    ModularElement operator*(const ModularElement& h) const {
        ModularElement r{a * h.a + b * h.c, a * h.b + b * h.d,
                         c * h.a + d * h.c, c * h.b + d * h.d};
        return r.normalized();
    }
    ModularElement inverse() const { return ModularElement{d, -b, -c, a}.normalized(); }

    bool operator==(const ModularElement&) const = default;

    MoebiusMatrix moebius() const { return {double(a), double(b), double(c), double(d)}; }
    UhpPoint apply(UhpPoint z) const { return mobius_apply(moebius(), z); }

    static ModularElement identity() { return {}; }
    static ModularElement S() { return ModularElement{0, -1, 1, 0}; }
    static ModularElement T(long long n = 1) { return ModularElement{1, n, 0, 1}.normalized(); }
};

enum class AnchorLabel { i, rho, generic };

// Elliptic fixed point with its order, scaling matrix and stabilizer generator.
struct EllipticAnchor {
    AnchorLabel label = AnchorLabel::generic;
    UhpPoint location{0.0, 1.0};
    int order = 1;
    MoebiusMatrix sigma{};
    std::optional<ModularElement> stab_generator;
};

EllipticAnchor anchor_i();
EllipticAnchor anchor_rho();
EllipticAnchor make_anchor(UhpPoint w);  // order 1, vertical-affine scaling matrix

std::pair<double, double> right_angle_check(const EllipticAnchor& e, UhpPoint z);

// g z = z_reduced, |Re| <= 1/2, |z_reduced| >= 1.
std::pair<UhpPoint, ModularElement> reduce_to_fundamental(UhpPoint z);

// Coset representatives of Gamma_infty \ Gamma as bottom rows: (0,1) plus
// all (c,d) with c >= 1, gcd(c,d) = 1, c^2 + d^2 <= max_norm^2.
std::vector<std::pair<long long, long long>> enumerate_cosets_infinity(double max_norm);

struct BallEnumeration {
    UhpPoint center{0.0, 1.0};
    double radius = 0.0;
    std::vector<ModularElement> elements;    // canonical (c,d,t) order
    std::vector<long long> count_by_shell;   // shell k holds d(center, g center) in [k, k+1)

    // log-linear fit of shell counts; slope should sit near 1
    double shell_fit_exponent(int k_lo, int k_hi) const;
};

BallEnumeration enumerate_ball(UhpPoint z, double R, const PrecisionBudget& budget = {});

// Empirical counting constant: #{d(w, g z) <= R} ~ kappa e^R, measured on the
// enumeration itself and reused by the heuristic tail bounds downstream.
double fitted_shell_kappa();

enum class ExecMode { serial, parallel };
ExecMode& exec_mode();

struct BallStats {
    long long count = 0;
    double min_u = std::numeric_limits<double>::infinity();
};

namespace detail {

inline long long exgcd(long long a, long long b, long long& x, long long& y) {
    // returns g = gcd(a,b) with a x + b y = g
    long long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        long long q = a / b;
        long long t = a - q * b; a = b; b = t;
        t = x0 - q * x1; x0 = x1; x1 = t;
        t = y0 - q * y1; y0 = y1; y1 = t;
    }
    x = x0; y = y0;
    return a;
}

inline long long gcdll(long long a, long long b) {
    while (b) { long long t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
}

} // namespace detail

// Fold over {gamma in PSL(2,Z) : d(w, gamma z) <= R}.
//
// Bottom rows are scanned by c; the admissible |c z + d|^2 window comes from
// cosh d(w, gamma z) >= (q + 1/q)/2 with q = Im(gamma z)/Im(w), a consequence
// of |z - w|^2 >= (Im z - Im w)^2 applied to u(w, gamma z).  For each coprime
// row the top family a = a0 + t c, b = b0 + t d shifts gamma z by t, so
// u(w, gamma_t z) is quadratic in t and the integer window is solved directly.
//
// Work is partitioned by c value; each partial accumulator is combined in
// ascending c afterwards, so the result is bit-identical for any worker
// count.  Acc needs a default constructor and merge(const Acc&).
template <class Acc, class PerElem>
Acc ball_fold(UhpPoint w, UhpPoint z, double R, PerElem f,
              const PrecisionBudget& budget = {}, BallStats* stats = nullptr) {
    budget.validate();
    if (!(R >= 0.0)) throw precondition_error("ball_fold: R >= 0 required");
    double projected = 2.5 * std::exp(R) * std::max(1.0, 1.0 / w.y) + 64.0;
    if (projected > double(budget.max_terms))
        throw resource_limit_error("ball_fold: projected element count exceeds max_terms");

    const double coshR = std::cosh(R);
    const double U = (coshR - 1.0) / 2.0 + 1e-9;       // u threshold, small slack
    const double Bhi = z.y / w.y * std::exp(R) * (1.0 + 1e-12) + 1e-300;
    const double Blo = z.y / w.y * std::exp(-R) * (1.0 - 1e-12);
    const long long cmax = (long long)std::floor(std::sqrt(Bhi) / z.y);

    const double inv4w = 1.0 / (4.0 * w.y);

    auto process_c = [&](long long c, Acc& acc, BallStats& st) {
        if (c == 0) {
            // translations (1, t; 0, 1)
            double Y = z.y;
            double dy2 = (Y - w.y) * (Y - w.y);
            double Q = 4.0 * w.y * Y * U - dy2;
            if (Q < 0.0) return;
            double ctr = w.x - z.x;
            double hw = std::sqrt(Q);
            long long tmin = (long long)std::ceil(ctr - hw);
            long long tmax = (long long)std::floor(ctr + hw);
            double invn = inv4w / Y;
            for (long long t = tmin; t <= tmax; ++t) {
                double dx = z.x + double(t) - w.x;
                double uu = (dx * dx + dy2) * invn;
                if (uu > U) continue;
                st.count++;
                st.min_u = std::min(st.min_u, uu);
                f(acc, uu, (long long)1, t, (long long)0, (long long)1);
            }
            return;
        }
        double cy = double(c) * z.y;
        double cy2 = cy * cy;
        if (cy2 > Bhi) return;
        double hw_d = std::sqrt(Bhi - cy2);
        long long dlo = (long long)std::ceil(-double(c) * z.x - hw_d);
        long long dhi = (long long)std::floor(-double(c) * z.x + hw_d);
        for (long long d = dlo; d <= dhi; ++d) {
            double re = double(c) * z.x + double(d);
            double nm = re * re + cy2;  // |cz+d|^2
            if (nm < Blo || nm > Bhi) continue;
            if (detail::gcdll(c, d) != 1) continue;
            long long a0, b0;
            // a0 d - b0 c = 1 (exgcd may return -1 for negative inputs)
            long long g = detail::exgcd(d, c, a0, b0);
            if (g < 0) { a0 = -a0; b0 = -b0; }
            b0 = -b0;
            double Y = z.y / nm;
            double X0 = ((double(a0) * z.x + double(b0)) * re + double(a0) * z.y * cy) / nm;
            double dy2 = (Y - w.y) * (Y - w.y);
            double Q = 4.0 * w.y * Y * U - dy2;
            if (Q < 0.0) continue;
            double ctr = w.x - X0;
            double hw = std::sqrt(Q);
            long long tmin = (long long)std::ceil(ctr - hw);
            long long tmax = (long long)std::floor(ctr + hw);
            double invn = inv4w / Y;
            for (long long t = tmin; t <= tmax; ++t) {
                double dx = X0 + double(t) - w.x;
                double uu = (dx * dx + dy2) * invn;
                if (uu > U) continue;
                st.count++;
                st.min_u = std::min(st.min_u, uu);
                f(acc, uu, a0 + t * c, b0 + t * d, c, d);
            }
        }
    };

    std::vector<Acc> partials((size_t)cmax + 1);
    std::vector<BallStats> pstats((size_t)cmax + 1);
    bool par = exec_mode() == ExecMode::parallel;
#pragma omp parallel for schedule(dynamic, 8) if (par)
    for (long long c = 0; c <= cmax; ++c) process_c(c, partials[(size_t)c], pstats[(size_t)c]);

    Acc total;
    BallStats st;
    for (long long c = 0; c <= cmax; ++c) {
        total.merge(partials[(size_t)c]);
        st.count += pstats[(size_t)c].count;
        st.min_u = std::min(st.min_u, pstats[(size_t)c].min_u);
    }
    if (stats) *stats = st;
    return total;
}

} // namespace eisenlab
