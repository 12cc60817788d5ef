#include "eisenlab/hypgeo.hpp"

#include <cmath>

namespace eisenlab {

MoebiusMatrix mobius_compose(const MoebiusMatrix& g, const MoebiusMatrix& h) {
    return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
            g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
}

double point_pair_u(UhpPoint z, UhpPoint w) {
    double dx = z.x - w.x, dy = z.y - w.y;
    return (dx * dx + dy * dy) / (4.0 * z.y * w.y);
}

double dist_from_u(double u) { return 2.0 * std::asinh(std::sqrt(u)); }

double hyp_distance(UhpPoint z, UhpPoint w) { return dist_from_u(point_pair_u(z, w)); }

double cosh_dist(UhpPoint z, UhpPoint w) { return 1.0 + 2.0 * point_pair_u(z, w); }

UhpPoint mobius_apply(const MoebiusMatrix& g, UhpPoint z) {
    // (az+b)/(cz+d); Im(gz) = Im(z)/|cz+d|^2
    double re = g.c * z.x + g.d;
    double im = g.c * z.y;
    double n = re * re + im * im;
    double ax = g.a * z.x + g.b;
    double ay = g.a * z.y;
    return UhpPoint((ax * re + ay * im) / n, z.y / n);
}

PolarCoords polar_coords(UhpPoint z) {
    PolarCoords p;
    p.rho = hyp_distance(UhpPoint(0.0, 1.0), z);
    // angle of the geodesic through i and z at i, measured from the y-axis;
    // the geodesic from i in direction theta hits k(theta/2) . (i e^rho)
    double u = point_pair_u(UhpPoint(0.0, 1.0), z);
    if (u == 0.0) {
        p.theta = 0.0;
        return p;
    }
    // invert polar_point: sin(theta) and cos(theta) share the positive factor
    // (e^{2 rho} - 1)/|denominator|^2, so atan2 on the unscaled pair is exact
    double c = (z.x * z.x + z.y * z.y - 1.0);
    p.theta = std::atan2(-2.0 * z.x, c);
    return p;
}

UhpPoint polar_point(double rho, double theta) {
    if (rho < 0.0) throw precondition_error("polar_point: rho >= 0");
    double t = theta / 2.0;
    MoebiusMatrix k{std::cos(t), std::sin(t), -std::sin(t), std::cos(t)};
    return mobius_apply(k, UhpPoint(0.0, std::exp(rho)));
}

std::pair<double, double> right_angle_check(UhpPoint e, int order_n,
                                            const MoebiusMatrix& stab_generator, UhpPoint z) {
    if (order_n < 2)
        throw precondition_error("right_angle_check: anchor must be elliptic (order >= 2)");
    double u_ez = point_pair_u(e, z);
    if (u_ez == 0.0) throw coincidence_error("right_angle_check: z equals the anchor");
    double d_ez = dist_from_u(u_ez);
    double lhs = std::sinh(d_ez);
    // sinh(d(z, gz)/2) = sqrt(u(z, gz))
    double u_rot = point_pair_u(z, mobius_apply(stab_generator, z));
    double rhs = std::sqrt(u_rot) / std::sin(M_PI / order_n);
    return {lhs, rhs};
}

} // namespace eisenlab
