#ifndef HALPHEN_LAWSON_HPP
#define HALPHEN_LAWSON_HPP

#include <cstddef>
#include <vector>

#include "halphen/barycentric.hpp"
#include "halphen/chebyshev.hpp"
#include "halphen/real.hpp"

namespace halphen {

struct LawsonResult {
    BarycentricRational rational;
    Real grid_error;                  // sup |f - r| over the grid, best iterate
    bool stagnated = false;           // Lawson weights collapsed onto one point
    std::vector<Real> merit_history;  // minimized weighted SSR per iteration
};

// Iteratively reweighted least-deviation refinement on the fixed support of r:
// numerator and denominator weights are re-solved against Lawson weights that
// are multiplied by the current error magnitudes each round. The support nodes
// never move. Returns the iterate with the smallest grid error, so the result
// is never worse than the input beyond roundoff.
LawsonResult lawson_refine(const BarycentricRational& r, const RealFunction& f,
                           const std::vector<Real>& grid, int iters);

}  // namespace halphen

#endif
