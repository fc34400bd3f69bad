#ifndef HALPHEN_CHEBYSHEV_HPP
#define HALPHEN_CHEBYSHEV_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "halphen/interval.hpp"
#include "halphen/real.hpp"

namespace halphen {

using RealFunction = std::function<Real(const Real&)>;

// Polynomial in the Chebyshev-T basis of its interval; degree = coeffs.size()-1.
struct ChebSeries {
    std::vector<Real> coeffs;
    Interval domain;

    ChebSeries(std::vector<Real> c, Interval dom);

    std::size_t degree() const { return coeffs.size() - 1; }
};

// The m+1 Chebyshev points of the second kind mapped to the domain, ascending.
// Endpoints are exactly domain.lo / domain.hi, the middle point (even m) is
// exactly the midpoint, and the set is exactly symmetric about it.
std::vector<Real> cheb_points(std::size_t m, const Interval& domain);

// Interpolating Chebyshev series through samples taken at cheb_points(m, domain),
// m = samples.size()-1. Runs at guard precision internally so evaluation at the
// nodes reproduces the samples to a few ulps of working precision.
ChebSeries cheb_fit(const std::vector<Real>& samples, const Interval& domain);

// Clenshaw evaluation; x must lie inside the series' domain.
Real cheb_eval(const ChebSeries& s, const Real& x);

struct AdaptiveOptions {
    std::size_t initial_m = 16;
    std::size_t max_m = std::size_t(1) << 20;
};

// Thrown when the doubling grid reaches max_m without the coefficient tail
// falling below tol.
class NonResolvable : public std::runtime_error {
  public:
    explicit NonResolvable(const std::string& what) : std::runtime_error(what) {}
};

// Samples f on doubling Chebyshev grids until the coefficient tail drops below
// tol relative to the max coefficient over a plateau of length max(5, k/8),
// then chops to the minimal such degree k.
ChebSeries adaptive_fit(const RealFunction& f, const Interval& domain, const Real& tol,
                        const AdaptiveOptions& opts = {});

// Chopping rule used by adaptive_fit, exposed for direct testing: the smallest
// degree k such that |c_j| <= tol*max|c| for all j in (k, k+max(5,k/8)], with
// the whole plateau inside the coefficient vector. Returns coeffs.size() when
// no such k exists.
std::size_t chop_index(const std::vector<Real>& coeffs, const Real& tol);

}  // namespace halphen

#endif
