#ifndef HALPHEN_BARYCENTRIC_HPP
#define HALPHEN_BARYCENTRIC_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "halphen/interval.hpp"
#include "halphen/linalg.hpp"
#include "halphen/real.hpp"

namespace halphen {

// Type-(m,m) rational in interpolatory barycentric form:
//   r(x) = sum_j w_j v_j / (x - t_j)  /  sum_j w_j / (x - t_j).
// With n nodes this represents type (n-1, n-1) <= (m, m).
struct BarycentricRational {
    std::vector<Real> nodes;    // distinct support points
    std::vector<Real> values;   // r(t_j)
    std::vector<Real> weights;  // not all zero
    std::size_t type_bound = 0; // m

    std::size_t support_size() const { return nodes.size(); }
    // Structural invariants: counts match, nodes distinct, some weight nonzero.
    bool structurally_valid() const;
};

// Barycentric evaluation. At a support node the stored value is returned
// exactly; at a pole the result is a signed infinity, never a crash.
Real eval_rational(const BarycentricRational& r, const Real& x);

// Denominator sum_j w_j/(x - t_j); blows up at the nodes by construction.
Real bary_denominator(const BarycentricRational& r, const Real& x);

// Poles/zeros as roots of the cleared-denominator polynomials.
std::vector<linalg::Cplx> rational_poles(const BarycentricRational& r);
std::vector<linalg::Cplx> rational_zeros(const BarycentricRational& r);

// First grid cell where the denominator changes sign with no support node
// inside (i.e. a real pole crossing), if any.
std::optional<Real> find_pole_on_grid(const BarycentricRational& r, const std::vector<Real>& grid);

}  // namespace halphen

#endif
