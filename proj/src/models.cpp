#include "halphen/models.hpp"

#include <stdexcept>

namespace halphen {

Real halphen_constant() { return Real(1) / Real(kHalphenReciprocalLiteral); }

Real halphen_model(std::size_t k) {
    Real H = halphen_constant();
    return Real(2) * pow(H, Real(static_cast<unsigned long>(k)) + Real(0.5));
}

MobiusMap::MobiusMap(Real n_) : n(std::move(n_)) {
    if (!(n > Real(0))) throw std::invalid_argument("MobiusMap: n must be positive");
}

Real MobiusMap::x_of_s(const Real& s) const {
    if (s == n) throw std::domain_error("MobiusMap::x_of_s: s = n is the pole of the map");
    return n / (n - s);
}

Real MobiusMap::s_of_x(const Real& x) const {
    if (sign(x) == 0) return Real::inf(-1);
    return n * (x - Real(1)) / x;
}

TransplantedTarget::TransplantedTarget(Real n_) : n(std::move(n_)) {
    if (!(n > Real(0))) throw std::invalid_argument("TransplantedTarget: n must be positive");
}

Real TransplantedTarget::operator()(const Real& s) const {
    if (isinf(s) && sign(s) < 0) return Real(0);
    return pow(Real(1) - s / n, -n);
}

HalflineMap::HalflineMap(Real c_) : c(std::move(c_)) {
    if (!(c > Real(0))) throw std::invalid_argument("HalflineMap: c must be positive");
}

Real HalflineMap::s_of_u(const Real& u) const {
    if (u == Real(-1)) return Real::inf(-1);
    return -c * (Real(1) - u) / (Real(1) + u);
}

Real HalflineMap::u_of_s(const Real& s) const {
    if (isinf(s) && sign(s) < 0) return Real(-1);
    return (c + s) / (c - s);
}

Lemma2Result lemma2_gap(const Real& n, const Lemma2ScanSpec& scan) {
    if (!(n > Real(0))) throw std::invalid_argument("lemma2_gap: n must be positive");
    // Both the gap near s -> 0- (which shrinks like s^2/n) and the derivative
    // sign at the bracket ends sit far below working roundoff; evaluate under
    // guard precision and round the results back.
    const unsigned work = precision::bits();
    precision::Scoped guard(work + 96);

    auto gap = [&](const Real& s) { return pow(Real(1) - s / n, -n) - exp(s); };
    // g'(s) = (1 - s/n)^-(n+1) - e^s
    auto dgap = [&](const Real& s) { return pow(Real(1) - s / n, -(n + Real(1))) - exp(s); };

    Lemma2Result out;

    // Scan on a log-spaced grid (the gap dies off both toward 0- and -inf).
    out.scan_max = Real(0);
    out.scan_min = Real::inf(+1);
    {
        Real llo = log(scan.s_hi_abs), lhi = log(abs(scan.s_lo));
        Real step = (lhi - llo) / Real(static_cast<unsigned long>(scan.points - 1));
        for (std::size_t i = 0; i < scan.points; ++i) {
            Real s = -exp(llo + step * Real(static_cast<unsigned long>(i)));
            Real g = gap(s);
            out.scan_max = max(out.scan_max, g);
            out.scan_min = min(out.scan_min, g);
        }
    }

    // The stationary point sits in (-(3 + 4/n), 0) for every n of interest;
    // verify the bracket sign condition rather than trusting it.
    Real a = -(Real(3) + Real(4) / n);
    Real b = Real(-1e-12);
    if (!(dgap(a) > Real(0)) || !(dgap(b) < Real(0))) {
        out.used_scan_fallback = true;
        // Re-scan, tracking the argmax.
        Real llo = log(scan.s_hi_abs), lhi = log(abs(scan.s_lo));
        Real step = (lhi - llo) / Real(static_cast<unsigned long>(scan.points - 1));
        Real best(0), arg = Real(-1);
        for (std::size_t i = 0; i < scan.points; ++i) {
            Real s = -exp(llo + step * Real(static_cast<unsigned long>(i)));
            Real g = gap(s);
            if (g > best) {
                best = g;
                arg = s;
            }
        }
        out.sigma = arg;
        out.max_gap = best;
    } else {
        for (int it = 0; it < 300; ++it) {
            Real mid = (a + b) / Real(2);
            if (sign(dgap(mid)) > 0)
                a = mid;
            else
                b = mid;
            if (b - a <= abs(mid) * machine_epsilon() * Real(4)) break;
        }
        out.sigma = (a + b) / Real(2);
        out.max_gap = gap(out.sigma);
    }

    Real closed_form = -out.sigma * exp(out.sigma) / n;
    out.identity_rel_err = abs(out.max_gap - closed_form) / abs(out.max_gap);

    out.sigma = out.sigma.rounded_to(work);
    out.max_gap = out.max_gap.rounded_to(work);
    out.scan_max = out.scan_max.rounded_to(work);
    out.scan_min = out.scan_min.rounded_to(work);
    out.identity_rel_err = out.identity_rel_err.rounded_to(work);
    return out;
}

Real exp_halfline_error(std::size_t k, const HalflineOptions& opts) {
    HalflineMap map(opts.c);
    RealFunction target = [map](const Real& u) {
        return exp(map.s_of_u(u));  // continuous at u = -1 with value 0
    };
    return rational_remez(target, k, Interval::unit(), opts.remez).error;
}

std::pair<long, std::size_t> even_reduction(long n, std::size_t k) {
    if (n < 0 || n % 2 != 0)
        throw std::invalid_argument(
            "even_reduction: n must be a nonnegative even integer; for odd n the "
            "[-1,1] errors are close to but not equal to the reduced problem's");
    return {n / 2, k / 2};
}

}  // namespace halphen
