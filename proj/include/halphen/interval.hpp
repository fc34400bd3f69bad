#ifndef HALPHEN_INTERVAL_HPP
#define HALPHEN_INTERVAL_HPP

#include "halphen/real.hpp"

namespace halphen {

// Closed interval [lo, hi], lo < hi.
struct Interval {
    Real lo;
    Real hi;

    Interval(Real lo_, Real hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
        if (!(lo < hi)) throw std::invalid_argument("Interval requires lo < hi");
    }

    Real length() const { return hi - lo; }
    Real midpoint() const { return (lo + hi) / Real(2); }
    bool contains(const Real& x) const { return x >= lo && x <= hi; }

    // Affine maps to and from the reference interval [-1, 1].
    Real to_unit(const Real& x) const { return (Real(2) * x - lo - hi) / (hi - lo); }
    Real from_unit(const Real& t) const { return midpoint() + t * length() / Real(2); }

    static Interval unit() { return Interval(Real(-1), Real(1)); }
    static Interval zero_one() { return Interval(Real(0), Real(1)); }
};

}  // namespace halphen

#endif
