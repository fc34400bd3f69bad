#ifndef HALPHEN_AAA_HPP
#define HALPHEN_AAA_HPP

#include <cstddef>
#include <vector>

#include "halphen/barycentric.hpp"
#include "halphen/real.hpp"

namespace halphen {

// Greedy adaptive barycentric fit of the samples (AAA): support points are
// chosen where the running residual is largest, weights come from the smallest
// singular vector of the Loewner matrix over the remaining samples. Stops when
// the residual drops to tol * max|F| or when max_degree is reached. Froissart
// doublets (pole-zero pairs closer than 1e-13) are pruned and the weights
// re-solved; if a doublet survives pruning the fit is rejected.
BarycentricRational aaa_fit(const std::vector<Real>& sample_points,
                            const std::vector<Real>& sample_values, std::size_t max_degree,
                            const Real& tol);

}  // namespace halphen

#endif
