#ifndef HALPHEN_EQUIOSCILLATION_HPP
#define HALPHEN_EQUIOSCILLATION_HPP

#include <cstddef>
#include <vector>

#include "halphen/chebyshev.hpp"
#include "halphen/interval.hpp"
#include "halphen/real.hpp"

namespace halphen {

// Witness of minimaxity: points where the error attains +-levelled_error with
// alternating signs. residual_defect is the relative spread of |error| over
// the points at convergence.
struct EquioscillationCertificate {
    std::vector<Real> points;  // strictly increasing, inside the domain
    std::vector<int> signs;    // +-1, strictly alternating
    Real levelled_error = Real(0);
    Real residual_defect = Real(0);
    bool degenerate = false;  // target was exactly representable; no alternation set

    // Checks the structural invariants (ordering, alternation, containment).
    bool structurally_valid(const Interval& domain) const;
};

// One local extremum of |err| located by golden-section refinement inside [a, b].
struct Extremum {
    Real x;
    Real value;  // err(x), signed
};
Extremum golden_max_abs(const RealFunction& err, const Real& a, const Real& b);

// Alternating local extrema of the error for the exchange step: the domain is
// cut at a zero of the error between each sign change of consecutive reference
// values, and |err| is maximized on every piece (where it is single-signed).
std::vector<Extremum> exchange_extrema(const RealFunction& err, const std::vector<Real>& refs,
                                       const Interval& domain);

// Reduces a candidate list to at most `want` strictly alternating extrema:
// same-sign runs keep their largest member, then the weaker end points are
// trimmed. Returns fewer than `want` when the sign pattern cannot supply them.
std::vector<Extremum> select_alternating(std::vector<Extremum> cands, std::size_t want);

}  // namespace halphen

#endif
