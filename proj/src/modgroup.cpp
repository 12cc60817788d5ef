#include "eisenlab/modgroup.hpp"

#include <cmath>

namespace eisenlab {

namespace {
constexpr double rho_x = -0.5;
const double rho_y = std::sqrt(3.0) / 2.0;
} // namespace

EllipticAnchor anchor_i() {
    EllipticAnchor e;
    e.label = AnchorLabel::i;
    e.location = UhpPoint(0.0, 1.0);
    e.order = 2;
    e.sigma = MoebiusMatrix{};  // identity
    e.stab_generator = ModularElement::S();
    return e;
}

EllipticAnchor anchor_rho() {
    EllipticAnchor e;
    e.label = AnchorLabel::rho;
    e.location = UhpPoint(rho_x, rho_y);
    e.order = 3;
    double q = std::pow(3.0, 0.25);     // 3^{1/4}
    double s = 1.0 / std::sqrt(2.0);
    e.sigma = MoebiusMatrix{s * q, -s / q, 0.0, 2.0 * s / q};
    e.stab_generator = ModularElement{0, -1, 1, 1};
    return e;
}

EllipticAnchor make_anchor(UhpPoint w) {
    EllipticAnchor e;
    e.label = AnchorLabel::generic;
    e.location = w;
    e.order = 1;
    double r = std::sqrt(w.y);
    e.sigma = MoebiusMatrix{r, w.x / r, 0.0, 1.0 / r};
    return e;
}

std::pair<double, double> right_angle_check(const EllipticAnchor& e, UhpPoint z) {
    if (!e.stab_generator)
        throw precondition_error("right_angle_check: anchor has no stabilizer generator");
    return right_angle_check(e.location, e.order, e.stab_generator->moebius(), z);
}

std::pair<UhpPoint, ModularElement> reduce_to_fundamental(UhpPoint z) {
    ModularElement g;
    for (int it = 0; it < 10000; ++it) {
        double t = std::round(z.x);
        if (t != 0.0) {
            z = UhpPoint(z.x - t, z.y);
            g = ModularElement::T(-(long long)t) * g;
        }
        double n = z.x * z.x + z.y * z.y;
        if (n < 1.0 - 1e-15) {
            // z -> -1/z
            z = UhpPoint(-z.x / n, z.y / n);
            g = ModularElement::S() * g;
        } else {
            return {z, g};
        }
    }
    throw consistency_error("reduce_to_fundamental: did not terminate");
}

std::vector<std::pair<long long, long long>> enumerate_cosets_infinity(double max_norm) {
    if (!(max_norm >= 1.0)) throw precondition_error("enumerate_cosets_infinity: max_norm >= 1");
    std::vector<std::pair<long long, long long>> out;
    double n2 = max_norm * max_norm;
    out.emplace_back(0, 1);
    long long cmax = (long long)std::floor(max_norm);
    for (long long c = 1; c <= cmax; ++c) {
        double rem = n2 - double(c) * double(c);
        if (rem < 0.0) break;
        long long dmax = (long long)std::floor(std::sqrt(rem));
        for (long long d = -dmax; d <= dmax; ++d)
            if (detail::gcdll(c, d) == 1) out.emplace_back(c, d);
    }
    return out;
}

ExecMode& exec_mode() {
    static ExecMode m = ExecMode::parallel;
    return m;
}

namespace {

struct CollectAcc {
    std::vector<ModularElement> elems;
    void merge(const CollectAcc& o) {
        elems.insert(elems.end(), o.elems.begin(), o.elems.end());
    }
};

} // namespace

BallEnumeration enumerate_ball(UhpPoint z, double R, const PrecisionBudget& budget) {
    if (!(R >= 0.0 && R <= 25.0))
        throw precondition_error("enumerate_ball: requires 0 <= R <= 25");
    BallEnumeration ball;
    ball.center = z;
    ball.radius = R;
    CollectAcc acc = ball_fold<CollectAcc>(
        z, z, R,
        [](CollectAcc& a, double, long long ea, long long eb, long long ec, long long ed) {
            a.elems.push_back(ModularElement{ea, eb, ec, ed});
        },
        budget);
    ball.elements = std::move(acc.elems);
    ball.count_by_shell.assign((size_t)std::floor(R) + 1, 0);
    for (const auto& g : ball.elements) {
        double d = hyp_distance(z, g.apply(z));
        size_t k = (size_t)std::min(double(ball.count_by_shell.size() - 1), std::floor(d));
        ball.count_by_shell[k]++;
    }
    return ball;
}

double BallEnumeration::shell_fit_exponent(int k_lo, int k_hi) const {
    // least-squares slope of log(count) against shell midpoint
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int k = k_lo; k <= k_hi && k < (int)count_by_shell.size(); ++k) {
        if (count_by_shell[k] <= 0) continue;
        double x = k + 0.5, y = std::log(double(count_by_shell[k]));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    if (n < 2) throw precondition_error("shell_fit_exponent: not enough shells");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double fitted_shell_kappa() {
    // one-time fit at z = i over radii the guard allows cheaply
    static const double kappa = [] {
        struct CountAcc {
            long long n = 0;
            void merge(const CountAcc& o) { n += o.n; }
        };
        UhpPoint zi(0.0, 1.0);
        double R = 10.0;
        CountAcc acc = ball_fold<CountAcc>(
            zi, zi, R, [](CountAcc& a, double, long long, long long, long long, long long) { a.n++; });
        return double(acc.n) / std::exp(R);
    }();
    return kappa;
}

} // namespace eisenlab
