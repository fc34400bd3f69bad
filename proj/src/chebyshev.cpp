#include "halphen/chebyshev.hpp"

#include <algorithm>
#include <cmath>

namespace halphen {

namespace {

unsigned guard_bits(std::size_t m) {
    unsigned extra = 10;
    while ((std::size_t(1) << (extra - 8)) < m + 2) ++extra;  // ~2*log2(m) + 10
    return precision::bits() + 2 * (extra - 8) + 12;
}

}  // namespace

ChebSeries::ChebSeries(std::vector<Real> c, Interval dom)
    : coeffs(std::move(c)), domain(std::move(dom)) {
    if (coeffs.empty()) throw std::invalid_argument("ChebSeries requires at least one coefficient");
}

std::vector<Real> cheb_points(std::size_t m, const Interval& domain) {
    if (m < 1) throw std::invalid_argument("cheb_points: m must be >= 1");
    const unsigned work = precision::bits();
    precision::Scoped guard(guard_bits(m));
    const Real c = domain.midpoint();
    const Real h = domain.length() / Real(2);
    const Real step = pi() / Real(static_cast<unsigned long>(m));
    std::vector<Real> pts(m + 1);
    // Build symmetrically so endpoints, midpoint and mirror pairs are exact.
    pts[0] = domain.lo;
    pts[m] = domain.hi;
    for (std::size_t j = 1; 2 * j < m; ++j) {
        Real t = cos(step * Real(static_cast<unsigned long>(j)));  // in (0,1)
        Real off = (h * t).rounded_to(work);
        pts[m - j] = c + off;
        pts[j] = c - off;
    }
    if (m % 2 == 0 && m >= 2) pts[m / 2] = c;
    for (auto& p : pts) p = p.rounded_to(work);
    return pts;
}

ChebSeries cheb_fit(const std::vector<Real>& samples, const Interval& domain) {
    if (samples.size() < 2)
        throw std::invalid_argument("cheb_fit: need samples at cheb_points(m), m >= 1");
    const std::size_t m = samples.size() - 1;
    const unsigned work = precision::bits();
    precision::Scoped guard(guard_bits(m));

    // cos(pi*l/m) for l = 0..m, with the exact zero at l = m/2 when m is even.
    std::vector<Real> costab(m + 1);
    const Real step = pi() / Real(static_cast<unsigned long>(m));
    costab[0] = Real(1);
    costab[m] = Real(-1);
    for (std::size_t l = 1; 2 * l < m; ++l) {
        costab[l] = cos(step * Real(static_cast<unsigned long>(l)));
        costab[m - l] = -costab[l];
    }
    if (m % 2 == 0 && m >= 2) costab[m / 2] = Real(0);

    // g_j = f(cos(j*pi/m)) in the standard descending-node order.
    std::vector<Real> g(m + 1);
    for (std::size_t j = 0; j <= m; ++j) g[j] = samples[m - j];

    std::vector<Real> coeffs(m + 1);
    const Real half(0.5);
    for (std::size_t k = 0; k <= m; ++k) {
        Real acc = half * g[0];
        for (std::size_t j = 1; j < m; ++j) {
            std::size_t l = (k * j) % (2 * m);
            if (l > m) l = 2 * m - l;
            acc += g[j] * costab[l];
        }
        acc += (k % 2 == 0 ? half * g[m] : -half * g[m]);
        Real scale = (k == 0 || k == m) ? Real(1) : Real(2);
        coeffs[k] = (scale * acc / Real(static_cast<unsigned long>(m))).rounded_to(work);
    }
    return ChebSeries(std::move(coeffs), domain);
}

Real cheb_eval(const ChebSeries& s, const Real& x) {
    if (x < s.domain.lo || x > s.domain.hi)
        throw std::domain_error("cheb_eval: point outside series domain");
    const unsigned work = precision::bits();
    precision::Scoped guard(guard_bits(s.coeffs.size()));
    const Real t = s.domain.to_unit(x);
    const Real two_t = Real(2) * t;
    Real b1(0), b2(0);
    for (std::size_t i = s.coeffs.size(); i-- > 1;) {
        Real b0 = s.coeffs[i] + two_t * b1 - b2;
        b2 = std::move(b1);
        b1 = std::move(b0);
    }
    return (s.coeffs[0] + t * b1 - b2).rounded_to(work);
}

std::size_t chop_index(const std::vector<Real>& coeffs, const Real& tol) {
    const std::size_t n = coeffs.size();
    Real maxc(0);
    for (const auto& c : coeffs) maxc = max(maxc, abs(c));
    if (sign(maxc) == 0) return 0;
    const Real thr = tol * maxc;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t plateau = std::max<std::size_t>(5, (k + 7) / 8);
        if (k + plateau > n - 1) break;  // tail not observable at this grid
        bool flat = true;
        for (std::size_t j = k + 1; j <= k + plateau; ++j) {
            if (abs(coeffs[j]) > thr) {
                flat = false;
                break;
            }
        }
        if (flat) return k;
    }
    return n;
}

ChebSeries adaptive_fit(const RealFunction& f, const Interval& domain, const Real& tol,
                        const AdaptiveOptions& opts) {
    if (!(tol > Real(0) && tol < Real(1)))
        throw std::invalid_argument("adaptive_fit: tol must be in (0, 1)");
    const unsigned work = precision::bits();
    for (std::size_t m = opts.initial_m; m <= opts.max_m; m *= 2) {
        precision::Scoped guard(guard_bits(m));
        const auto pts = cheb_points(m, domain);
        std::vector<Real> samples(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) samples[i] = f(pts[i]);
        ChebSeries fit = cheb_fit(samples, domain);
        std::size_t k = chop_index(fit.coeffs, tol);
        if (k < fit.coeffs.size()) {
            std::vector<Real> kept(fit.coeffs.begin(), fit.coeffs.begin() + k + 1);
            for (auto& c : kept) c = c.rounded_to(work);
            return ChebSeries(std::move(kept), domain);
        }
    }
    throw NonResolvable("adaptive_fit: function not resolvable at requested tolerance");
}

}  // namespace halphen
