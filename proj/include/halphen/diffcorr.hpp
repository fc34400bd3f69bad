#ifndef HALPHEN_DIFFCORR_HPP
#define HALPHEN_DIFFCORR_HPP

#include <cstddef>
#include <vector>

#include "halphen/chebyshev.hpp"
#include "halphen/real.hpp"

namespace halphen {

struct DiffCorrOptions {
    Real rel_tol = Real(1e-10);  // stop when the error level improves less than this
    int max_iter = 60;
};

// Discrete type-(k,k) minimax error of f on the grid by the differential
// correction iteration: every step solves a linear program in the Chebyshev
// coefficients of p and q under the normalization max|q| <= 1 on the grid.
// The result is a lower bound for the continuous minimax error, and is wholly
// independent of the barycentric Remez pipeline.
Real differential_correction(const RealFunction& f, std::size_t k, const std::vector<Real>& grid,
                             const DiffCorrOptions& opts = {});

}  // namespace halphen

#endif
