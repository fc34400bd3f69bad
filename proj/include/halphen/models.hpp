#ifndef HALPHEN_MODELS_HPP
#define HALPHEN_MODELS_HPP

#include <cstddef>
#include <utility>

#include "halphen/chebyshev.hpp"
#include "halphen/rational_remez.hpp"
#include "halphen/real.hpp"

namespace halphen {

// Halphen's constant, stored via the 13-digit reciprocal literal.
inline constexpr const char* kHalphenReciprocalLiteral = "9.2890254919208";
Real halphen_constant();

// Model for type-(k,k) minimax errors of x^n: 2 * H^(k+1/2), independent of n.
Real halphen_model(std::size_t k);

// x = n/(n-s), s = n(x-1)/x; maps [0,1] to (-inf,0] with x=1 <-> s=0.
struct MobiusMap {
    Real n;
    explicit MobiusMap(Real n_);
    Real x_of_s(const Real& s) const;  // s == n is the pole and is rejected
    Real s_of_x(const Real& x) const;  // x == 0 returns -inf
};

// g_n(s) = (1 - s/n)^(-n) on (-inf, 0], the Moebius transplant of x^n.
struct TransplantedTarget {
    Real n;
    explicit TransplantedTarget(Real n_);
    Real operator()(const Real& s) const;
};

// Compactification [-1,1] <-> (-inf,0]:  s = -c(1-u)/(1+u).  Any c > 0 gives
// the same minimax error by Moebius invariance; c only affects conditioning.
struct HalflineMap {
    Real c;
    explicit HalflineMap(Real c_ = Real(4));
    Real s_of_u(const Real& u) const;  // u == -1 gives -inf
    Real u_of_s(const Real& s) const;
};

struct Lemma2ScanSpec {
    std::size_t points = 100000;   // log-spaced scan on [-|s_lo|, -s_hi_abs]
    Real s_lo = Real(-50);
    Real s_hi_abs = Real(1e-8);
};

struct Lemma2Result {
    Real sigma;              // stationary point of g(s) = (1-s/n)^(-n) - e^s
    Real max_gap;            // g(sigma)
    Real scan_max;           // max of g over the scan grid
    Real scan_min;           // min of g over the scan grid (positivity witness)
    Real identity_rel_err;   // |g(sigma) + sigma e^sigma / n| / g(sigma)
    bool used_scan_fallback = false;
};

// Locates the maximum of the Lemma-2 gap by bisection on g' and verifies the
// stationary-value identity g(sigma) = -sigma e^sigma / n. Falls back to the
// scan maximum if the bisection bracket fails its sign check.
Lemma2Result lemma2_gap(const Real& n, const Lemma2ScanSpec& spec = {});

struct HalflineOptions {
    Real c = Real(4);
    RationalRemezOptions remez;
};

// F_kk: type-(k,k) minimax error of e^s on (-inf,0], computed on the
// compactified interval (rational type is Moebius-invariant).
Real exp_halfline_error(std::size_t k, const HalflineOptions& opts = {});

// Even-symmetry reduction: approximating x^n on [-1,1] (n even) is the
// type-(floor(k/2), floor(k/2)) problem for x^(n/2) on [0,1].
std::pair<long, std::size_t> even_reduction(long n, std::size_t k);

}  // namespace halphen

#endif
