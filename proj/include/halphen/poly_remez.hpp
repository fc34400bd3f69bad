#ifndef HALPHEN_POLY_REMEZ_HPP
#define HALPHEN_POLY_REMEZ_HPP

#include <cstddef>

#include "halphen/chebyshev.hpp"
#include "halphen/equioscillation.hpp"
#include "halphen/interval.hpp"

namespace halphen {

struct PolyMinimaxResult {
    ChebSeries approximant;
    Real error;  // levelled minimax error E_k
    EquioscillationCertificate certificate;
    int iterations = 0;
};

struct RemezOptions {
    Real tol = Real(1e-12);       // relative levelness target on the reference
    Real cert_tol = Real(1e-3);   // acceptable residual defect when levelling
                                  // stalls at the arithmetic noise floor
    int max_iter = 100;
};

// Thrown when the exchange fails to level within max_iter; carries the best
// iterate so callers can still inspect it.
class RemezError : public std::runtime_error {
  public:
    RemezError(const std::string& what, PolyMinimaxResult best_iterate)
        : std::runtime_error(what), best(std::move(best_iterate)) {}
    PolyMinimaxResult best;
};

// Best degree-<=k polynomial approximation of f on the domain by Remez
// exchange from the Chebyshev-point reference, with golden-section extremum
// refinement and full multi-point exchange.
PolyMinimaxResult remez_poly(const RealFunction& f, std::size_t k, const Interval& domain,
                             const RemezOptions& opts = {});

// (1/2) * erfc(k / sqrt(n)): the error model for polynomial approximation of x^n.
Real newman_rivlin(std::size_t k, const Real& n);

}  // namespace halphen

#endif
