#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "eisenlab/modgroup.hpp"

namespace eisenlab {

// Integer q-expansion sum_{m=0..N} coeffs[m] q^m of a level-1 form.
struct QExpansion {
    int weight = 0;
    std::vector<long long> coeffs;
    int order() const { return int(coeffs.size()) - 1; }

    std::complex<double> eval_q(std::complex<double> q) const;
    // geometric envelope on the dropped terms, monotone in |q|
    double tail_bound(double abs_q) const;
};

long long divisor_sigma(int k, long long m);

const QExpansion& e4_expansion();
const QExpansion& e6_expansion();
const QExpansion& delta_expansion();  // from the q-product, independent of E4/E6

// Value at the original z: the argument is reduced to the fundamental domain
// and the weight-k cocycle (cz+d)^{-k} is applied back.
std::complex<double> eval_eisenstein_weight(int k, UhpPoint z);

struct DeltaJ {
    std::complex<double> delta;
    std::complex<double> j;
};

// Delta from (E4^3 - E6^2)/1728 cross-checked against the q-product route;
// throws consistency_error if the two disagree.  j = E4^3 / Delta.
DeltaJ eval_delta_and_j(UhpPoint z);

// Relative gap of the anchor identities
//   |j(i) - j(z)|   = (|E6| |Delta|^{-1/2})^2,
//   |j(rho) - j(z)| = (|E4| |Delta|^{-1/3})^3.
double modular_identity_gap(AnchorLabel anchor, UhpPoint z);

} // namespace eisenlab
