#pragma once

#include <complex>
#include <utility>

#include "eisenlab/errors.hpp"

namespace eisenlab {

// Point x + iy of the upper half-plane.
struct UhpPoint {
    double x = 0.0;
    double y = 1.0;

    UhpPoint() = default;
    UhpPoint(double x_, double y_) : x(x_), y(y_) {
        if (!(y > 0.0)) throw precondition_error("UhpPoint: requires y > 0");
    }
    std::complex<double> c() const { return {x, y}; }
};

// Real Moebius matrix with det = 1.
struct MoebiusMatrix {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    double det() const { return a * d - b * c; }
    MoebiusMatrix inverse() const { return {d, -b, -c, a}; }
};

MoebiusMatrix mobius_compose(const MoebiusMatrix& g, const MoebiusMatrix& h);

// Hyperbolic polar coordinates centered at i (diagnostic use only; the
// series code works through u and distances).
struct PolarCoords {
    double rho = 0.0;
    double theta = 0.0;
};

// u(z,w) = |z-w|^2 / (4 Im z Im w); cosh d = 1 + 2u.
double point_pair_u(UhpPoint z, UhpPoint w);

// d = 2 asinh(sqrt(u)) -- exact in u, no cancellation near coincident points
// (sinh^2(d/2) = u).
double hyp_distance(UhpPoint z, UhpPoint w);
double dist_from_u(double u);
double cosh_dist(UhpPoint z, UhpPoint w);  // 1 + 2u directly

UhpPoint mobius_apply(const MoebiusMatrix& g, UhpPoint z);

PolarCoords polar_coords(UhpPoint z);
UhpPoint polar_point(double rho, double theta);  // inverse exp-map at i

// Right-angled-triangle identity at an elliptic point:
//   sinh d(e,z) = sin(pi/n)^{-1} sinh(d(z, g z)/2),  g the stabilizer generator.
// Takes the anchor data as primitives; modgroup provides the anchor wrapper.
std::pair<double, double> right_angle_check(UhpPoint e, int order_n,
                                            const MoebiusMatrix& stab_generator, UhpPoint z);

} // namespace eisenlab
