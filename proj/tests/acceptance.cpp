// Acceptance suite: every criterion pinned to its stated tolerance, one
// pass/fail line per criterion. Run with no arguments for all criteria or
// with an index (1..9) for a single one. Exit code = number of failures.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "halphen/chebyshev.hpp"
#include "halphen/diffcorr.hpp"
#include "halphen/equioscillation.hpp"
#include "halphen/experiments.hpp"
#include "halphen/models.hpp"
#include "halphen/poly_remez.hpp"
#include "halphen/rational_remez.hpp"

using namespace halphen;

namespace {

RealFunction xn(double n) {
    return [n](const Real& x) { return power(x, Real(n)); };
}

struct Criterion {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << (detail.tellp() > 0 ? "; " : "") << "FAILED: " << what;
        }
    }
    void note(const std::string& what) {
        detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
};

unsigned threads() { return 2; }

std::string fmt(const Real& x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", to_double(x));
    return buf;
}

// ---- 1. Halphen law at n = 1000, k = 1..6, 128-bit ------------------------
Criterion criterion1() {
    Criterion c;
    RunConfig cfg;
    cfg.precision_bits = 128;
    cfg.threads = threads();
    auto rows = run_figure2(Real(1000), 6, cfg);

    Real worst_lo(10), worst_hi(0);
    for (const auto& r : rows) {
        if (r.experiment != "figure2" || r.k < 1) continue;
        c.require(r.status == "ok", "cell k=" + std::to_string(r.k) + " status " + r.status);
        c.require(r.ratio >= Real(0.5) && r.ratio <= Real(2.0),
                  "ratio " + fmt(r.ratio) + " at k=" + std::to_string(r.k) + " outside [0.5,2]");
        worst_lo = min(worst_lo, r.ratio);
        worst_hi = max(worst_hi, r.ratio);
    }
    const auto& slope = rows.back();
    c.require(slope.experiment == "figure2_slope", "missing slope summary row");
    Real target = log(Real(1) / Real("9.2890254919208"));
    Real rel = abs(slope.computed_error - target) / abs(target);
    c.require(rel <= Real(0.05), "slope off by " + fmt(rel * Real(100)) + "%");
    c.note("ratios in [" + fmt(worst_lo) + "," + fmt(worst_hi) + "], slope " +
           fmt(slope.computed_error) + " vs " + fmt(target));
    return c;
}

// ---- 2. n-independence of E_33 --------------------------------------------
Criterion criterion2() {
    Criterion c;
    precision::set_bits(53);
    Real lo = Real::inf(+1), hi(0);
    for (long n : {500L, 1000L, 2000L, 4000L}) {
        Real e = rational_remez(xn(static_cast<double>(n)), 3, Interval::zero_one()).error;
        lo = min(lo, e);
        hi = max(hi, e);
    }
    Real spread = (hi - lo) / hi;
    c.require(spread < Real(0.10), "spread " + fmt(spread));
    c.note("E_33 spread over n in {500..4000}: " + fmt(spread * Real(100)) + "%");
    return c;
}

// ---- 3. Newman-Rivlin law for the polynomial sweep -------------------------
Criterion criterion3() {
    Criterion c;
    RunConfig cfg;
    cfg.threads = threads();
    auto rows = run_figure1({Real(250), Real(1000)}, 0, cfg);

    for (const Real& want_n : {Real(250), Real(1000)}) {
        Real wlo(10), whi(0);
        std::vector<Real> xs, ys;
        for (const auto& r : rows) {
            if (r.n != want_n) continue;
            if (r.model_error < Real(1e-10) || r.model_error > Real(1e-1)) continue;
            c.require(r.status == "ok", "cell n=" + fmt(r.n) + " k=" + std::to_string(r.k) +
                                            " status " + r.status);
            c.require(r.ratio >= Real(1) / Real(3) && r.ratio <= Real(3),
                      "ratio " + fmt(r.ratio) + " at n=" + fmt(want_n) +
                          " k=" + std::to_string(r.k));
            wlo = min(wlo, r.ratio);
            whi = max(whi, r.ratio);
            xs.push_back(Real(r.k) * Real(r.k));
            ys.push_back(log(r.computed_error));
        }
        c.require(xs.size() >= 10, "band too small at n=" + fmt(want_n));
        // R^2 of log E against k^2.
        Real sx(0), sy(0), sxx(0), sxy(0), syy(0);
        Real m(static_cast<unsigned long>(xs.size()));
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
            syy += ys[i] * ys[i];
        }
        Real num = m * sxy - sx * sy;
        Real r2 = num * num / ((m * sxx - sx * sx) * (m * syy - sy * sy));
        c.require(r2 >= Real(0.99), "R^2 " + fmt(r2) + " at n=" + fmt(want_n));
        c.note("n=" + fmt(want_n) + ": ratios [" + fmt(wlo) + "," + fmt(whi) + "], R^2 " +
               fmt(r2));
    }
    return c;
}

// ---- 4. Table 1 adaptive degrees -------------------------------------------
Criterion criterion4() {
    Criterion c;
    RunConfig cfg;
    cfg.threads = threads();
    auto rows = run_table1(cfg);
    std::ostringstream got;
    for (const auto& r : rows) {
        c.require(r.status == "pass", "n=" + fmt(r.n) + " degree " + std::to_string(r.k) +
                                          " vs reference " + fmt(r.model_error));
        got << (got.tellp() > 0 ? " " : "") << r.k;
    }
    c.note("degrees " + got.str());
    return c;
}

// ---- 5. lemma2 gap bound ----------------------------------------------------
Criterion criterion5() {
    Criterion c;
    precision::set_bits(53);
    const Real e1 = exp(Real(1));
    for (long n : {1L, 10L, 100L, 1000L, 10000L}) {
        auto res = lemma2_gap(Real(n));
        Real bound = Real(1) / (e1 * Real(n));
        c.require(max(res.scan_max, res.max_gap) <= bound,
                  "gap exceeds 1/(en) at n=" + std::to_string(n));
        c.require(res.scan_min > Real(0), "gap not positive at n=" + std::to_string(n));
        c.require(res.identity_rel_err <= Real(1e-10),
                  "stationary identity off by " + fmt(res.identity_rel_err) +
                      " at n=" + std::to_string(n));
    }
    auto big = lemma2_gap(Real(10000));
    c.note("max_gap*e*n at n=1e4: " + fmt(big.max_gap * e1 * Real(10000)) + " (bound 1)");
    return c;
}

// ---- 6. Limit law -----------------------------------------------------------
Criterion criterion6() {
    Criterion c;
    precision::set_bits(53);
    const Real e1 = exp(Real(1));
    Real worst(0);
    for (std::size_t k : {1, 2, 3}) {
        Real F = exp_halfline_error(k);
        for (long n : {100L, 1000L, 10000L}) {
            Real E = rational_remez(xn(static_cast<double>(n)), k, Interval::zero_one()).error;
            Real gap = abs(E - F);
            Real bound = Real(1) / (e1 * Real(n));
            c.require(gap <= bound, "|E-F| " + fmt(gap) + " > " + fmt(bound) + " at k=" +
                                        std::to_string(k) + " n=" + std::to_string(n));
            worst = max(worst, gap / bound);
        }
    }
    c.note("worst |E-F| / bound: " + fmt(worst));
    return c;
}

// ---- 7. even-symmetry reduction ---------------------------------------------
Criterion criterion7() {
    Criterion c;
    precision::set_bits(53);
    Real e44 = rational_remez(xn(100), 4, Interval::unit()).error;
    Real e22 = rational_remez(xn(50), 2, Interval::zero_one()).error;
    Real e55 = rational_remez(xn(100), 5, Interval::unit()).error;
    Real even_rel = abs(e44 - e22) / e44;
    Real odd_rel = abs(e55 - e44) / e44;
    c.require(even_rel <= Real(1e-6), "even reduction discrepancy " + fmt(even_rel));
    c.require(odd_rel <= Real(1e-6), "odd collapse discrepancy " + fmt(odd_rel));
    c.note("even rel " + fmt(even_rel) + ", odd rel " + fmt(odd_rel));
    return c;
}

// ---- 8. Oracle equivalence --------------------------------------------------
Criterion criterion8() {
    Criterion c;
    precision::set_bits(53);
    auto grid = cheb_points(2048, Interval::zero_one());
    Real worst(0);
    for (auto [n, k] : std::vector<std::pair<double, std::size_t>>{{100, 2}, {1000, 3}, {1000, 5}}) {
        Real dc = differential_correction(xn(n), k, grid);
        Real rr = rational_remez(xn(n), k, Interval::zero_one()).error;
        Real rel = abs(dc - rr) / rr;
        c.require(rel <= Real(1e-3), "DC/Remez disagree by " + fmt(rel) + " at n=" +
                                         std::to_string(static_cast<long>(n)) + " k=" +
                                         std::to_string(k));
        worst = max(worst, rel);
    }
    Real e1 = remez_poly(xn(2), 1, Interval::zero_one()).error;
    c.require(abs(e1 - Real(0.125)) <= Real(1e-12),
              "E_1(x^2) = " + fmt(e1) + " differs from 1/8");
    c.note("worst oracle gap " + fmt(worst) + ", E_1(x^2) - 1/8 = " + fmt(e1 - Real(0.125)));
    return c;
}

// ---- 9. Property suite at 53 bits ------------------------------------------
Criterion criterion9() {
    Criterion c;
    precision::set_bits(53);
    const Interval unit = Interval::unit();
    const Interval zo = Interval::zero_one();

    // Chebyshev round trip within 10 ulps.
    {
        const Real ulp10 = machine_epsilon() * Real(10);
        for (std::size_t m : {5, 64, 512}) {
            auto pts = cheb_points(m, unit);
            std::vector<Real> samples;
            Real scale(0);
            for (const auto& x : pts) {
                Real v = exp(x) + x * x;
                samples.push_back(v);
                scale = max(scale, abs(v));
            }
            auto s = cheb_fit(samples, unit);
            for (std::size_t i = 0; i < pts.size(); ++i)
                c.require(abs(cheb_eval(s, pts[i]) - samples[i]) <= ulp10 * scale,
                          "cheb round trip at m=" + std::to_string(m));
        }
    }
    // Adaptive degree monotone in tol.
    for (double n : {4.0, 64.0, 1024.0}) {
        std::size_t prev = 0;
        for (double t : {1e-6, 1e-9, 1e-12, 1e-15}) {
            std::size_t deg = adaptive_fit(xn(n), zo, Real(t)).degree();
            c.require(deg >= prev, "adaptive degree not monotone at n=" + fmt(Real(n)));
            prev = deg;
        }
    }
    // erfc symmetry and monotonicity.
    {
        Real prev = Real::inf(+1);
        for (int i = -10; i <= 10; ++i) {
            Real x = Real(i) / Real(2);
            c.require(abs(erfc(x) + erfc(-x) - Real(2)) <= Real(2e-14), "erfc symmetry");
            Real cur = erfc(x);
            c.require(cur < prev, "erfc not strictly decreasing");
            prev = cur;
        }
    }
    // Polynomial Remez: monotone in k, zero case, certificate scan validity.
    {
        Real prev = Real::inf(+1);
        for (std::size_t k = 0; k <= 40; k += 5) {
            Real e = remez_poly(xn(250), k, zo).error;
            c.require(e <= prev * (Real(1) + Real(1e-12)), "E_k not monotone");
            prev = e;
        }
        c.require(remez_poly(xn(6), 8, zo).error <= Real(1e-14), "zero case");
        auto r = remez_poly(xn(40), 12, zo);
        Real sup(0);
        const std::size_t N = 2048;
        auto pts = cheb_points(N - 1, zo);
        for (const auto& x : pts)
            sup = max(sup, abs(power(x, Real(40)) - cheb_eval(r.approximant, x)));
        c.require(sup <= r.error * (Real(1) + Real(10) * Real(1e-3)), "certificate scan validity");
    }
    // Rational: monotone in k, rational <= polynomial, oracle sandwich cell,
    // pole-free validation grid, Moebius invariance.
    {
        Real prev = Real::inf(+1);
        for (std::size_t k = 0; k <= 3; ++k) {
            Real ekk = rational_remez(xn(100), k, zo).error;
            Real ek = remez_poly(xn(100), k, zo).error;
            c.require(ekk < prev, "E_kk not decreasing");
            c.require(ekk <= ek * (Real(1) + Real(1e-10)), "rational worse than polynomial");
            prev = ekk;
        }
        auto r = rational_remez(xn(100), 2, zo);
        c.require(!find_pole_on_grid(r.approximant, cheb_points(4095, zo)).has_value(),
                  "pole on validation grid");
        Real dc = differential_correction(xn(100), 2, cheb_points(2048, zo));
        c.require(dc <= r.error * (Real(1) + Real(1e-3)), "oracle sandwich lower bound");
        c.require(abs(dc - r.error) <= r.error * Real(1e-3), "oracle sandwich spread");

        MobiusMap map(Real(100));
        TransplantedTarget g(Real(100));
        Real sup(0);
        for (const auto& x : r.certificate.points)
            if (sign(x) > 0)
                sup = max(sup, abs(g(map.s_of_x(x)) - eval_rational(r.approximant, map.x_of_s(map.s_of_x(x)))));
        for (int i = 0; i <= 100; ++i) {
            Real s = -exp(Real(-10) + Real(16) * Real(i) / Real(100));
            sup = max(sup, abs(g(s) - eval_rational(r.approximant, map.x_of_s(s))));
        }
        c.require(abs(sup - r.error) <= r.error * Real(1e-6), "Moebius invariance of the error");
    }
    // lemma1 equivalence (both solves independent).
    {
        for (auto [nn, k] : std::vector<std::pair<double, std::size_t>>{{100, 2}, {1000, 3}}) {
            Real ed = rational_remez(xn(nn), k, zo).error;
            HalflineMap map{Real(4)};
            TransplantedTarget g{Real(nn)};
            RealFunction target = [&](const Real& u) { return g(map.s_of_u(u)); };
            Real eh = rational_remez(target, k, unit).error;
            c.require(abs(ed - eh) / ed <= Real(1e-6),
                      "lemma1 equivalence at n=" + fmt(Real(nn)));
        }
    }
    // lemma2 positivity over the scan for the stated n values.
    for (long n : {1L, 10L, 100L, 1000L}) {
        auto res = lemma2_gap(Real(n));
        c.require(res.scan_min > Real(0), "lemma2 positivity at n=" + std::to_string(n));
    }
    // CSV byte-exact round trip and exit-code semantics.
    {
        RunConfig cfg;
        cfg.threads = threads();
        auto rows = run_table1(cfg);
        std::ostringstream a;
        write_rows_csv(a, rows);
        std::istringstream in(a.str());
        std::ostringstream b;
        write_rows_csv(b, parse_rows_csv(in));
        c.require(a.str() == b.str(), "CSV round trip not byte-identical");
        c.require(all_rows_pass(rows), "table1 rows failed");
    }
    c.note("chebyshev/adaptive/erfc/poly/rational/lemma/CSV property set green");
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    static const char* kNames[] = {
        "Halphen law (figure 2)",      "n-independence of E_33",
        "Newman-Rivlin law (figure 1)", "table 1 adaptive degrees",
        "lemma2 gap bound",            "limit law E_kk -> F_kk",
        "even-symmetry reduction",     "oracle equivalence",
        "property suites"};
    static const std::function<Criterion()> kRun[] = {
        criterion1, criterion2, criterion3, criterion4, criterion5,
        criterion6, criterion7, criterion8, criterion9};

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    if (argc > 1 && (only < 1 || only > 9)) {
        std::fprintf(stderr, "usage: %s [1..9]\n", argv[0]);
        return 2;
    }

    int failures = 0;
    for (int i = 1; i <= 9; ++i) {
        if (only && i != only) continue;
        Criterion c;
        try {
            c = kRun[i - 1]();
        } catch (const std::exception& e) {
            c.pass = false;
            c.note(std::string("exception: ") + e.what());
        }
        std::printf("[criterion %d] %s %s - %s\n", i, c.pass ? "PASS" : "FAIL", kNames[i - 1],
                    c.detail.str().c_str());
        std::fflush(stdout);
        if (!c.pass) ++failures;
    }
    return failures;
}
