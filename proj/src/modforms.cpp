#include "eisenlab/modforms.hpp"

#include <cmath>
#include <limits>

namespace eisenlab {

namespace {
constexpr int q_order = 40;  // |q| <= e^{-pi sqrt 3} after reduction, tail < 1e-12 long before 40
constexpr double two_pi = 6.2831853071795864769;
} // namespace

std::complex<double> QExpansion::eval_q(std::complex<double> q) const {
    std::complex<double> acc = 0.0, qp = 1.0;
    for (size_t m = 0; m < coeffs.size(); ++m) {
        acc += double(coeffs[m]) * qp;
        qp *= q;
    }
    return acc;
}

double QExpansion::tail_bound(double abs_q) const {
    // |a_m| <= 523 m^6 holds for all three stored series: 240 sigma_3(m) and
    // 504 sigma_5(m) via sigma_k(m) <= zeta(k) m^k, and |tau(m)| <= 2 m^6
    // from the divisor count d(m) <= 2 sqrt(m) with Deligne's bound.
    if (abs_q >= 0.5) return std::numeric_limits<double>::infinity();
    double N1 = double(coeffs.size());
    return 523.0 * std::pow(N1, 6.0) * std::pow(abs_q, N1) / (1.0 - 2.0 * abs_q);
}

long long divisor_sigma(int k, long long m) {
    if (m < 1) throw precondition_error("divisor_sigma: m >= 1");
    long long s = 0;
    for (long long d = 1; d * d <= m; ++d) {
        if (m % d) continue;
        long long p = 1, q = 1, e = m / d;
        for (int j = 0; j < k; ++j) { p *= d; q *= e; }
        s += p;
        if (e != d) s += q;
    }
    return s;
}

const QExpansion& e4_expansion() {
    static const QExpansion e = [] {
        QExpansion x;
        x.weight = 4;
        x.coeffs.assign(q_order + 1, 0);
        x.coeffs[0] = 1;
        for (int m = 1; m <= q_order; ++m) x.coeffs[m] = 240 * divisor_sigma(3, m);
        return x;
    }();
    return e;
}

const QExpansion& e6_expansion() {
    static const QExpansion e = [] {
        QExpansion x;
        x.weight = 6;
        x.coeffs.assign(q_order + 1, 0);
        x.coeffs[0] = 1;
        // -504: the sign is forced by E6(i) = 0
        for (int m = 1; m <= q_order; ++m) x.coeffs[m] = -504 * divisor_sigma(5, m);
        return x;
    }();
    return e;
}

const QExpansion& delta_expansion() {
    static const QExpansion e = [] {
        // q prod_{n>=1} (1-q^n)^24, exact integer convolution up to q^order
        std::vector<long long> p(q_order, 0);  // coefficients of prod, degree < q_order
        p[0] = 1;
        for (int n = 1; n < q_order; ++n) {
            for (int rep = 0; rep < 24; ++rep) {
                for (int m = q_order - 1; m >= n; --m) p[m] -= p[m - n];
            }
        }
        QExpansion x;
        x.weight = 12;
        x.coeffs.assign(q_order + 1, 0);
        for (int m = 0; m < q_order; ++m) x.coeffs[m + 1] = p[m];
        return x;
    }();
    return e;
}

namespace {

struct ReducedQ {
    std::complex<double> q;
    std::complex<double> czd;  // c z + d of the reducing map
    UhpPoint zr{0.0, 1.0};
};

ReducedQ reduce_and_q(UhpPoint z) {
    auto [zr, g] = reduce_to_fundamental(z);
    ReducedQ r;
    r.zr = zr;
    r.czd = std::complex<double>(double(g.c) * z.x + double(g.d), double(g.c) * z.y);
    r.q = std::exp(std::complex<double>(0.0, two_pi) * zr.c());
    return r;
}

} // namespace

std::complex<double> eval_eisenstein_weight(int k, UhpPoint z) {
    if (k != 4 && k != 6) throw precondition_error("eval_eisenstein_weight: k in {4,6}");
    ReducedQ r = reduce_and_q(z);
    const QExpansion& e = (k == 4) ? e4_expansion() : e6_expansion();
    // E_k(z) = (cz+d)^{-k} E_k(z_reduced)
    return e.eval_q(r.q) * std::pow(r.czd, -double(k));
}

DeltaJ eval_delta_and_j(UhpPoint z) {
    ReducedQ r = reduce_and_q(z);
    std::complex<double> e4 = e4_expansion().eval_q(r.q);
    std::complex<double> e6 = e6_expansion().eval_q(r.q);
    std::complex<double> d_alg = (e4 * e4 * e4 - e6 * e6) / 1728.0;
    std::complex<double> d_prod = delta_expansion().eval_q(r.q);
    if (std::abs(d_alg - d_prod) > 1e-9 * std::abs(d_prod))
        throw consistency_error("eval_delta_and_j: Delta routes disagree");
    DeltaJ out;
    std::complex<double> cz12 = std::pow(r.czd, -12.0);
    out.delta = d_prod * cz12;
    out.j = e4 * e4 * e4 / d_prod;  // weight 0, no cocycle
    return out;
}

double modular_identity_gap(AnchorLabel anchor, UhpPoint z) {
    DeltaJ dj = eval_delta_and_j(z);
    std::complex<double> e4 = eval_eisenstein_weight(4, z);
    std::complex<double> e6 = eval_eisenstein_weight(6, z);
    double X, Y;
    if (anchor == AnchorLabel::i) {
        X = std::abs(1728.0 - dj.j);
        double r = std::abs(e6) / std::sqrt(std::abs(dj.delta));
        Y = r * r;
    } else if (anchor == AnchorLabel::rho) {
        X = std::abs(dj.j);
        double r = std::abs(e4) / std::cbrt(std::abs(dj.delta));
        Y = r * r * r;
    } else {
        throw precondition_error("modular_identity_gap: anchor must be i or rho");
    }
    // at the anchor orbit both sides vanish; below evaluation noise the gap is 0
    if (X < 1e-8 && Y < 1e-8) return 0.0;
    return std::abs(X - Y) / std::max(X, Y);
}

} // namespace eisenlab
