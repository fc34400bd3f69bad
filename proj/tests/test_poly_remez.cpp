#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "halphen/poly_remez.hpp"
#include "oracles.hpp"

using namespace halphen;

namespace {
RealFunction xn(double n) {
    return [n](const Real& x) { return power(x, Real(n)); };
}
}  // namespace

TEST_CASE("best constant of a monotone target is the midpoint of its range") {
    precision::set_bits(53);
    for (double n : {1.0, 7.0, 250.0}) {
        auto r = remez_poly(xn(n), 0, Interval::zero_one());
        CHECK(abs(r.error - Real(0.5)) <= Real(1e-14));
    }
}

TEST_CASE("x^2 by a line: analytic 1/8 and the brute-force oracle agree") {
    precision::set_bits(53);
    auto r = remez_poly(xn(2), 1, Interval::zero_one());
    // Classical equioscillation solution p(x) = x - 1/8.
    CHECK(abs(r.error - Real(0.125)) <= Real(1e-14));

    Real brute = oracles::brute_force_line_minimax([](const Real& x) { return x * x; },
                                                   0.8, 1.2, -0.3, 0.1);
    CHECK(abs(brute - Real(0.125)) <= Real(2e-6));
    CHECK(abs(r.error - brute) <= Real(2e-6));

    // p itself: x - 1/8 at a few points.
    for (double x : {0.0, 0.3, 1.0})
        CHECK(abs(cheb_eval(r.approximant, Real(x)) - (Real(x) - Real(0.125))) <= Real(1e-13));
}

TEST_CASE("exactly representable targets return the degenerate flag") {
    precision::set_bits(53);
    for (std::size_t k : {3, 5}) {
        auto r = remez_poly(xn(3), k, Interval::zero_one());
        CHECK(r.certificate.degenerate);
        CHECK(r.error <= Real(1e-14));
    }
}

TEST_CASE("Newman-Rivlin model values") {
    precision::set_bits(53);
    CHECK(newman_rivlin(0, Real(17)) == Real(0.5));
    // k = sqrt(n): (1/2) erfc(1), from the quadrature oracle of erfc.
    Real want = oracles::erfc_quadrature(Real(1)) / Real(2);
    CHECK(abs(newman_rivlin(10, Real(100)) - want) <= abs(want) * Real(1e-14));
    CHECK(abs(to_double(want) - 0.0786496) < 1e-7);
    CHECK_THROWS_AS(newman_rivlin(3, Real(0)), std::invalid_argument);
}

TEST_CASE("large-power regime: error within a factor 3 of the erfc model") {
    precision::set_bits(53);
    auto r = remez_poly(xn(250), 35, Interval::zero_one());
    Real model = newman_rivlin(35, Real(250));
    CHECK(r.error <= Real(3) * model);
    CHECK(r.error >= model / Real(3));
}

TEST_CASE("certificate: structure, levelness and the dense-scan invariant") {
    precision::set_bits(53);
    auto dom = Interval::zero_one();
    auto r = remez_poly(xn(40), 12, dom);
    REQUIRE(!r.certificate.degenerate);
    CHECK(r.certificate.points.size() == 14);  // k+2
    CHECK(r.certificate.structurally_valid(dom));
    CHECK(r.certificate.residual_defect <= Real(1e-3));
    CHECK(abs(r.certificate.levelled_error - r.error) <=
          r.error * (r.certificate.residual_defect + Real(1e-15)));

    // Independent dense scan: 2048 Chebyshev-distributed points never exceed
    // error*(1 + 10*tol).
    RealFunction approx = [&](const Real& x) { return cheb_eval(r.approximant, x); };
    Real sup = oracles::sup_norm_scan(xn(40), approx, dom, 2048);
    CHECK(sup <= r.error * (Real(1) + Real(10) * Real(1e-3)));
}

TEST_CASE("E_k is nonincreasing in k") {
    precision::set_bits(53);
    Real prev = Real::inf(+1);
    for (std::size_t k = 0; k <= 40; k += 4) {
        Real e = remez_poly(xn(250), k, Interval::zero_one()).error;
        CHECK(e <= prev * (Real(1) + Real(1e-12)));
        prev = e;
    }
}

TEST_CASE("non-convergence carries the best iterate") {
    precision::set_bits(53);
    RemezOptions opts;
    opts.max_iter = 1;  // force failure on a target needing several exchanges
    opts.tol = Real(1e-12);
    opts.cert_tol = Real(1e-12);
    try {
        remez_poly(xn(250), 20, Interval::zero_one(), opts);
        FAIL("expected RemezError");
    } catch (const RemezError& e) {
        CHECK(e.best.error > Real(0));
        CHECK(e.best.error < Real(1));
    }
}
