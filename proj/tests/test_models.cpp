#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "halphen/models.hpp"
#include "halphen/poly_remez.hpp"
#include "oracles.hpp"

using namespace halphen;

namespace {
RealFunction xn(double n) {
    return [n](const Real& x) { return power(x, Real(n)); };
}
}  // namespace

TEST_CASE("Halphen constant and the 2H^(k+1/2) model") {
    precision::set_bits(53);
    Real H = halphen_constant();
    CHECK(abs(Real(1) / H - Real("9.2890254919208")) <= Real(1e-13));
    CHECK(abs(H - Real("0.10765391922648")) <= Real(1e-13));
    CHECK(H > Real(0));
    CHECK(H < Real(1) / Real(9));

    CHECK(abs(halphen_model(0) - Real(2) * sqrt(H)) <= Real(1e-15));
    CHECK(abs(to_double(halphen_model(0)) - 0.65622) < 1e-5);
    // Geometric law: consecutive ratio is exactly H.
    for (std::size_t k : {0, 3, 7})
        CHECK(abs(halphen_model(k + 1) / halphen_model(k) - H) <= Real(1e-15));
    CHECK(abs(to_double(halphen_model(5)) - 1.5e-5) < 1e-6);
}

TEST_CASE("Moebius map anchors and round trip") {
    precision::set_bits(53);
    MobiusMap any(Real(137));
    CHECK(any.x_of_s(Real(0)) == Real(1));

    MobiusMap two(Real(2));
    CHECK(two.x_of_s(Real(1)) == Real(2));  // x = 1 + 1/(n-1) at s = 1

    MobiusMap big(Real(1000));
    Real s(-7.3);
    CHECK(abs(big.s_of_x(big.x_of_s(s)) - s) <= abs(s) * Real(1e-13));

    CHECK(isinf(big.s_of_x(Real(0))));
    CHECK(sign(big.s_of_x(Real(0))) < 0);
    CHECK_THROWS_AS(big.x_of_s(Real(1000)), std::domain_error);
    CHECK_THROWS_AS(MobiusMap(Real(0)), std::invalid_argument);
}

TEST_CASE("transplanted target: endpoint values, growth, lower bound") {
    precision::set_bits(53);
    TransplantedTarget g(Real(50));
    CHECK(g(Real(0)) == Real(1));
    CHECK(g(Real::inf(-1)) == Real(0));
    Real prev(0);
    for (int i = 40; i >= 1; --i) {
        Real s = -Real(i) / Real(4);
        Real v = g(s);
        CHECK(v > prev);       // strictly increasing toward s = 0
        CHECK(v > exp(s));     // the Lemma-2 lower bound
        prev = v;
    }
}

TEST_CASE("lemma2_gap: bound, positivity, identity, limits") {
    precision::set_bits(53);
    const Real e1 = exp(Real(1));
    for (long n : {1L, 10L, 100L, 1000L, 10000L}) {
        auto res = lemma2_gap(Real(n));
        CHECK(!res.used_scan_fallback);
        CHECK(max(res.max_gap, res.scan_max) <= Real(1) / (e1 * Real(n)));
        CHECK(res.scan_min > Real(0));
        CHECK(res.identity_rel_err <= Real(1e-10));
    }
    // The stationary point drifts to -2, making max_gap*e*n -> 2/e (the 1/(en)
    // bound uses the looser sup of -s e^s over all s).
    auto res = lemma2_gap(Real(10000));
    Real limit = res.max_gap * e1 * Real(10000);
    CHECK(abs(limit - Real(2) / e1) <= Real(2) / e1 * Real(0.02));
    CHECK(abs(res.sigma + Real(2)) <= Real(0.01));
}

TEST_CASE("lemma2_gap at n=1 matches a brute-force scan") {
    precision::set_bits(53);
    auto res = lemma2_gap(Real(1));
    // 10^6-point log-spaced scan of g(s) = (1-s)^(-1) - e^s.
    precision::Scoped guard(53 + 96);
    Real best(0);
    const std::size_t N = 1000000;
    Real llo = log(Real(1e-8)), lhi = log(Real(50));
    Real step = (lhi - llo) / Real(static_cast<unsigned long>(N - 1));
    for (std::size_t i = 0; i < N; ++i) {
        Real s = -exp(llo + step * Real(static_cast<unsigned long>(i)));
        best = max(best, Real(1) / (Real(1) - s) - exp(s));
    }
    CHECK(abs(best - res.max_gap) <= abs(res.max_gap) * Real(1e-8));
}

TEST_CASE("F_kk: half-line exponential errors") {
    precision::set_bits(53);
    CHECK(abs(exp_halfline_error(0) - Real(0.5)) <= Real(1e-12));

    // The conditioning constant of the compactification is immaterial.
    HalflineOptions c2, c9;
    c2.c = Real(2);
    c9.c = Real(9);
    Real f2 = exp_halfline_error(2, c2);
    Real f9 = exp_halfline_error(2, c9);
    Real f4 = exp_halfline_error(2);
    CHECK(abs(f2 - f4) <= f4 * Real(1e-6));
    CHECK(abs(f9 - f4) <= f4 * Real(1e-6));
}

TEST_CASE("F_kk approaches 2H^(k+1/2) from below at the conjectured rate") {
    precision::set_bits(53);
    std::vector<Real> F;
    for (std::size_t k = 4; k <= 8; ++k) {
        Real f = exp_halfline_error(k);
        Real ratio = f / halphen_model(k);
        CHECK(ratio >= Real(0.9));
        CHECK(ratio <= Real(1.1));
        F.push_back(f);
    }
    // Self-test of the stored constant: the fitted geometric decay of F_kk
    // for k = 5..8 recovers H to 1%.
    Real logsum(0);
    for (std::size_t i = 1; i < F.size(); ++i) logsum += log(F[i] / F[i - 1]);
    Real H_fit = exp(logsum / Real(static_cast<unsigned long>(F.size() - 1)));
    CHECK(abs(H_fit - halphen_constant()) <= halphen_constant() * Real(0.01));
}

TEST_CASE("limit law |E_kk^(n) - F_kk| <= 1/(e n) for moderate cells") {
    precision::set_bits(53);
    const Real e1 = exp(Real(1));
    for (std::size_t k : {1, 2}) {
        Real F = exp_halfline_error(k);
        for (long n : {100L, 1000L}) {
            Real E = rational_remez(xn(static_cast<double>(n)), k, Interval::zero_one()).error;
            CHECK(abs(E - F) <= Real(1) / (e1 * Real(n)));
        }
    }
    for (std::size_t k : {3, 4, 5}) {  // the full k range at n = 1000
        Real F = exp_halfline_error(k);
        Real E = rational_remez(xn(1000), k, Interval::zero_one()).error;
        CHECK(abs(E - F) <= Real(1) / (e1 * Real(1000)));
    }
}

TEST_CASE("even_reduction arithmetic and the odd-n rejection") {
    precision::set_bits(53);
    CHECK(even_reduction(100, 4) == std::pair<long, std::size_t>(50, 2));
    CHECK(even_reduction(100, 5) == std::pair<long, std::size_t>(50, 2));  // odd k collapses
    CHECK(even_reduction(0, 3) == std::pair<long, std::size_t>(0, 1));
    CHECK_THROWS_AS(even_reduction(99, 4), std::invalid_argument);
    CHECK_THROWS_AS(even_reduction(-2, 4), std::invalid_argument);
}

TEST_CASE("even reduction: both sides computed independently agree") {
    precision::set_bits(53);
    Real lhs = rational_remez(xn(100), 4, Interval::unit()).error;
    Real rhs = rational_remez(xn(50), 2, Interval::zero_one()).error;
    CHECK(abs(lhs - rhs) <= lhs * Real(1e-6));
}

TEST_CASE("Halphen model is n-independent across large n at k=3") {
    precision::set_bits(53);
    Real lo = Real::inf(+1), hi(0);
    for (long n : {500L, 1000L, 2000L, 4000L}) {
        Real e = rational_remez(xn(static_cast<double>(n)), 3, Interval::zero_one()).error;
        lo = min(lo, e);
        hi = max(hi, e);
    }
    CHECK((hi - lo) / hi <= Real(0.10));
}
