#pragma once

#include <complex>
#include <optional>

#include "eisenlab/autoseries.hpp"

namespace eisenlab {

struct GreenEvaluation {
    cplx value{};
    double truncation = 0.0;
    double tail_bound = 0.0;
    TailKind tail_kind = TailKind::heuristic;
    std::int64_t terms_used = 0;
};

// Free-space Green's function (1/4pi) Gamma(s)^2/Gamma(2s) u^{-s} F(s,s;2s;-1/u),
// evaluated through the hypergeometric series (direct or Pfaff-mapped).
cplx green_free(UhpPoint z, UhpPoint w, cplx s);

// The same function through the cosh-power series
//   (2^s/4pi) Gamma(s)^2/Gamma(2s) sum_k [(s/2)_k(s/2+1/2)_k/(k!(s+1/2)_k)] cosh(d)^{-s-2k};
// this is the kernel used inside ball sums, the hypergeometric form above is
// the cross-check.
cplx green_free_series(UhpPoint z, UhpPoint w, cplx s, const PrecisionBudget& budget = {});

// G(z,w,s) = sum_{gamma in Gamma} g_s(z, gamma w), Re(s) > 1.
GreenEvaluation green_automorphic(UhpPoint z, UhpPoint w, cplx s,
                                  const PrecisionBudget& budget = {},
                                  std::optional<double> radius = {});

// G^ell(e,z,s) = G(e.location, z, s)/n_e.
GreenEvaluation green_ell(const EllipticAnchor& e, UhpPoint z, cplx s,
                          const PrecisionBudget& budget = {},
                          std::optional<double> radius = {});

// c(s) = 2^{s+1} sqrt(pi) Gamma(s+1/2)/Gamma(s)  (equals 4pi Gamma(2s)/Gamma(s)^2).
cplx green_c_factor(cplx s);

// a_k(s) = 1 - (s/2+1/2)_k/(s+1/2)_k.
cplx green_relation_ak(cplx s, int k);

struct GreenRelationResult {
    double gap = 0.0;
    double combined_tail = 0.0;
};

// | E^ell(e,z,s) - c(s) G^ell(e,z,s) - sum_{k=1..K} (s/2)_k a_k(s)/k! P^ell(e,z,s+2k) |.
GreenRelationResult green_relation_gap(const EllipticAnchor& e, UhpPoint z, cplx s, int K,
                                       const PrecisionBudget& budget = {},
                                       std::optional<double> radius = {});

} // namespace eisenlab
