#ifndef HALPHEN_RATIONAL_REMEZ_HPP
#define HALPHEN_RATIONAL_REMEZ_HPP

#include <cstddef>

#include "halphen/aaa.hpp"
#include "halphen/barycentric.hpp"
#include "halphen/equioscillation.hpp"
#include "halphen/interval.hpp"
#include "halphen/lawson.hpp"

namespace halphen {

enum class SolveStatus { Converged, Stagnated };

struct RationalMinimaxResult {
    BarycentricRational approximant;
    Real error;  // dense-scan sup norm of the returned approximant
    EquioscillationCertificate certificate;
    std::size_t defect = 0;  // floor((2k+2 - alternation count)/2)
    SolveStatus status = SolveStatus::Converged;
};

struct RationalRemezOptions {
    std::size_t grid_size = 4096;  // Chebyshev-clustered sample/validation grid
    Real tol = Real(1e-3);         // certificate levelness tolerance
    int lawson_iters = 100;
    int max_polish = 30;
};

// Best type-(k,k) rational approximation of f on the domain:
// dense Chebyshev-clustered sampling -> aaa_fit -> lawson_refine -> exchange
// polish of golden-refined local extrema via the levelled reference system.
// Degenerate problems (fewer than 2k+2 persisting extrema) fall back to the
// type-(k-1,k-1) solve when that solve matches the achieved error.
RationalMinimaxResult rational_remez(const RealFunction& f, std::size_t k, const Interval& domain,
                                     const RationalRemezOptions& opts = {});

}  // namespace halphen

#endif
