#include "halphen/rational_remez.hpp"

#include <algorithm>
#include <optional>

namespace halphen {

namespace {

struct TwoVector {
    std::vector<Real> nodes;
    std::vector<Real> alpha;
    std::vector<Real> beta;

    Real eval(const Real& x) const {
        Real num(0), den(0);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            Real d = x - nodes[j];
            if (sign(d) == 0) return alpha[j] / beta[j];
            num += alpha[j] / d;
            den += beta[j] / d;
        }
        return num / den;
    }

    void normalize() {
        Real m(0);
        for (const auto& b : beta) m = max(m, abs(b));
        for (const auto& a : alpha) m = max(m, abs(a));
        if (sign(m) == 0) return;
        for (auto& a : alpha) a /= m;
        for (auto& b : beta) b /= m;
    }

    BarycentricRational to_rational(std::size_t type_bound) const {
        BarycentricRational r;
        r.type_bound = type_bound;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (sign(beta[j]) == 0) continue;
            r.nodes.push_back(nodes[j]);
            r.values.push_back(alpha[j] / beta[j]);
            r.weights.push_back(beta[j]);
        }
        return r;
    }
};

// Denominator sign change between consecutive grid points with no support node
// inside is a real pole.
bool has_pole(const TwoVector& tv, const std::vector<Real>& grid) {
    BarycentricRational probe;
    probe.nodes = tv.nodes;
    probe.values.assign(tv.nodes.size(), Real(0));
    probe.weights = tv.beta;
    probe.type_bound = tv.nodes.size();
    return find_pole_on_grid(probe, grid).has_value();
}

// Solves the levelled reference system N(x_i) - (f_i - s_i h) D(x_i) = 0 as a
// generalized eigenproblem in h by Rayleigh-style inverse iteration, seeded
// with the current iterate and error level.
struct LevelledSolve {
    TwoVector tv;
    Real h;
    bool ok = false;
};

LevelledSolve levelled_solve(const std::vector<Real>& nodes, const std::vector<Real>& refx,
                             const std::vector<int>& sigma, const std::vector<Real>& fref,
                             const Real& h_seed, const TwoVector& seed) {
    const std::size_t n = nodes.size();
    const std::size_t R = refx.size();
    LevelledSolve out;
    if (R != 2 * n) return out;

    // Cauchy rows; a reference that coincides with a support node uses the
    // cleared limit row alpha_j - (f - sigma*h) beta_j = 0 instead.
    linalg::Mat C(R, n);
    std::vector<std::ptrdiff_t> hit(R, -1);
    for (std::size_t i = 0; i < R; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Real d = refx[i] - nodes[j];
            if (sign(d) == 0) {
                hit[i] = static_cast<std::ptrdiff_t>(j);
                break;
            }
            C(i, j) = Real(1) / d;
        }
    }

    std::vector<Real> w(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
        w[j] = seed.alpha[j];
        w[n + j] = seed.beta[j];
    }
    Real mu = h_seed;

    auto apply_B = [&](const std::vector<Real>& v) {
        // B w = diag(sigma) * (denominator values at the references)
        std::vector<Real> r(R, Real(0));
        for (std::size_t i = 0; i < R; ++i) {
            Real acc(0);
            if (hit[i] >= 0) {
                acc = v[n + static_cast<std::size_t>(hit[i])];
            } else {
                for (std::size_t j = 0; j < n; ++j) acc += C(i, j) * v[n + j];
            }
            r[i] = sigma[i] > 0 ? acc : -acc;
        }
        return r;
    };

    for (int outer = 0; outer < 10; ++outer) {
        linalg::Mat Mshift(R, 2 * n);
        for (std::size_t i = 0; i < R; ++i) {
            Real coef = fref[i] - (sigma[i] > 0 ? mu : -mu);
            if (hit[i] >= 0) {
                auto j = static_cast<std::size_t>(hit[i]);
                Mshift(i, j) = Real(-1);
                Mshift(i, n + j) = coef;
            } else {
                for (std::size_t j = 0; j < n; ++j) {
                    Mshift(i, j) = -C(i, j);
                    Mshift(i, n + j) = coef * C(i, j);
                }
            }
        }
        std::vector<Real> rhs = apply_B(w);
        for (std::size_t i = 0; i < R; ++i) {  // row equilibration
            Real rowmax(0);
            for (std::size_t j = 0; j < 2 * n; ++j) rowmax = max(rowmax, abs(Mshift(i, j)));
            if (sign(rowmax) == 0) return out;
            for (std::size_t j = 0; j < 2 * n; ++j) Mshift(i, j) /= rowmax;
            rhs[i] /= rowmax;
        }
        std::vector<Real> y;
        try {
            y = linalg::lu_solve(std::move(Mshift), std::move(rhs));
        } catch (const std::runtime_error&) {
            mu = mu * (Real(1) + Real(1e-8));
            continue;
        }
        Real nrm(0);
        for (const auto& yi : y) nrm = max(nrm, abs(yi));
        if (sign(nrm) == 0) return out;
        for (auto& yi : y) yi /= nrm;
        w = std::move(y);

        // Implied level from the new iterate.
        Real hsum(0);
        for (std::size_t i = 0; i < R; ++i) {
            Real N(0), D(0);
            if (hit[i] >= 0) {
                auto j = static_cast<std::size_t>(hit[i]);
                N = w[j];
                D = w[n + j];
            } else {
                for (std::size_t j = 0; j < n; ++j) {
                    N += C(i, j) * w[j];
                    D += C(i, j) * w[n + j];
                }
            }
            if (sign(D) == 0) return out;
            Real e = fref[i] - N / D;
            hsum += sigma[i] > 0 ? e : -e;
        }
        Real mu_new = hsum / Real(static_cast<unsigned long>(R));
        bool settled = abs(mu_new - mu) <= abs(mu) * Real(1e-9);
        mu = mu_new;
        if (settled) break;
    }

    if (!(mu > Real(0)) || mu > h_seed * Real(8) || mu < h_seed / Real(8)) return out;
    out.tv.nodes = nodes;
    out.tv.alpha.assign(w.begin(), w.begin() + n);
    out.tv.beta.assign(w.begin() + n, w.end());
    out.tv.normalize();
    out.h = mu;
    out.ok = true;
    return out;
}

struct ScanResult {
    std::vector<Extremum> extrema;  // refined local extrema of the error, ascending
    Real sup;                       // sup |e| over grid and extrema
};

ScanResult scan_error(const RealFunction& err, const std::vector<Real>& grid) {
    const std::size_t M = grid.size();
    std::vector<Real> ev(M);
    Real sup(0);
    for (std::size_t i = 0; i < M; ++i) {
        ev[i] = err(grid[i]);
        sup = max(sup, abs(ev[i]));
    }
    const Real floor_cut = sup * Real(0.02);

    ScanResult out;
    out.sup = sup;
    if (abs(ev[0]) >= abs(ev[1]) && abs(ev[0]) >= floor_cut)
        out.extrema.push_back({grid[0], ev[0]});
    for (std::size_t i = 1; i + 1 < M; ++i) {
        if (abs(ev[i]) < floor_cut) continue;
        if (abs(ev[i]) >= abs(ev[i - 1]) && abs(ev[i]) >= abs(ev[i + 1])) {
            Extremum e = golden_max_abs(err, grid[i - 1], grid[i + 1]);
            out.extrema.push_back(e);
            out.sup = max(out.sup, abs(e.value));
        }
    }
    if (abs(ev[M - 1]) >= abs(ev[M - 2]) && abs(ev[M - 1]) >= floor_cut)
        out.extrema.push_back({grid[M - 1], ev[M - 1]});
    std::sort(out.extrema.begin(), out.extrema.end(),
              [](const Extremum& a, const Extremum& b) { return a.x < b.x; });
    return out;
}

RationalMinimaxResult finalize_from(const TwoVector& tv, std::size_t k, const RealFunction& f,
                                    const std::vector<Real>& grid, SolveStatus status) {
    RealFunction err = [&](const Real& x) { return f(x) - tv.eval(x); };
    ScanResult scan = scan_error(err, grid);
    auto sel = select_alternating(scan.extrema, 2 * k + 2);

    RationalMinimaxResult out;
    out.approximant = tv.to_rational(k);
    if (find_pole_on_grid(out.approximant, grid))
        throw std::runtime_error("rational_remez: approximant has a pole on the domain");
    out.error = scan.sup;
    out.status = status;
    std::size_t count = sel.size();
    out.defect = count >= 2 * k + 2 ? 0 : (2 * k + 2 - count) / 2;
    if (count < 2) {
        out.certificate.degenerate = true;
        out.certificate.levelled_error = scan.sup;
        return out;
    }
    Real maxa(0), mina = Real::inf(+1);
    for (const auto& e : sel) {
        maxa = max(maxa, abs(e.value));
        mina = min(mina, abs(e.value));
        out.certificate.points.push_back(e.x);
        out.certificate.signs.push_back(sign(e.value) >= 0 ? 1 : -1);
    }
    out.certificate.levelled_error = (maxa + mina) / Real(2);
    out.certificate.residual_defect = (maxa - mina) / (maxa + mina);
    return out;
}

}  // namespace

RationalMinimaxResult rational_remez(const RealFunction& f, std::size_t k, const Interval& domain,
                                     const RationalRemezOptions& opts) {
    if (opts.grid_size < 257) throw std::invalid_argument("rational_remez: grid_size must be >= 257");
    const std::vector<Real> grid = cheb_points(opts.grid_size - 1, domain);
    std::vector<Real> F(grid.size());
    Real fbar(0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        F[i] = f(grid[i]);
        fbar = max(fbar, abs(F[i]));
    }
    const Real eps = machine_epsilon();

    if (sign(fbar) == 0) {
        // f vanishes on the grid: the zero constant is exact.
        TwoVector tv{{domain.midpoint()}, {Real(0)}, {Real(1)}};
        auto out = finalize_from(tv, k, f, grid, SolveStatus::Converged);
        out.certificate.degenerate = true;
        out.defect = k + 1;
        return out;
    }

    // AAA initialization on the dense grid, run to full support unless the
    // target is exactly representable first.
    BarycentricRational r0 = aaa_fit(grid, F, k, eps * Real(8));
    {
        Real resid(0);
        for (std::size_t i = 0; i < grid.size(); ++i)
            resid = max(resid, abs(F[i] - eval_rational(r0, grid[i])));
        if (resid <= eps * Real(64) * fbar) {
            TwoVector tv;
            tv.nodes = r0.nodes;
            for (std::size_t j = 0; j < r0.nodes.size(); ++j) {
                tv.beta.push_back(r0.weights[j]);
                tv.alpha.push_back(r0.weights[j] * r0.values[j]);
            }
            auto out = finalize_from(tv, k, f, grid, SolveStatus::Converged);
            out.certificate.degenerate = true;
            out.defect = k + 1 - std::min(r0.nodes.size(), k + 1);
            return out;
        }
    }

    // Lawson refinement on a subsampled grid; the polish phase works against f
    // directly, so the coarser grid only seeds it.
    std::vector<Real> lawson_grid;
    for (std::size_t i = 0; i < grid.size(); i += 4) lawson_grid.push_back(grid[i]);
    if (lawson_grid.back() != grid.back()) lawson_grid.push_back(grid.back());
    LawsonResult law = lawson_refine(r0, f, lawson_grid, opts.lawson_iters);

    TwoVector tv;
    tv.nodes = law.rational.nodes;
    for (std::size_t j = 0; j < tv.nodes.size(); ++j) {
        tv.beta.push_back(law.rational.weights[j]);
        tv.alpha.push_back(law.rational.weights[j] * law.rational.values[j]);
    }
    tv.normalize();

    const std::size_t n = tv.nodes.size();
    const std::size_t want = 2 * n;  // 2k+2 when the support is full

    std::optional<TwoVector> best_tv;
    Real best_sup = Real::inf(+1);
    Real best_defect = Real::inf(+1);
    bool converged = false;

    Real prev_defect = Real::inf(+1);
    int no_progress = 0;

    for (int it = 0; it <= opts.max_polish; ++it) {
        RealFunction err = [&](const Real& x) { return f(x) - tv.eval(x); };
        ScanResult scan = scan_error(err, grid);
        auto sel = select_alternating(scan.extrema, want);

        if (sel.size() < want) {
            if (!best_tv || scan.sup < best_sup) {
                best_tv = tv;
                best_sup = scan.sup;
            }
            break;
        }

        Real maxa(0), mina = Real::inf(+1);
        for (const auto& e : sel) {
            maxa = max(maxa, abs(e.value));
            mina = min(mina, abs(e.value));
        }
        Real defect = (maxa - mina) / maxa;
        Real level = (maxa + mina) / Real(2);

        if (scan.sup < best_sup || defect < best_defect) {
            best_tv = tv;
            best_sup = scan.sup;
            best_defect = defect;
        }

        // Stop when level within tolerance and nothing on the grid exceeds it.
        const Real noise = eps * Real(32) * fbar / level;
        const Real stop_floor = max(Real(1e-12), noise);
        if (defect <= stop_floor) {
            converged = true;
            break;
        }
        no_progress = (defect > prev_defect * Real(0.8)) ? no_progress + 1 : 0;
        if (no_progress >= 3) {
            converged = best_defect <= opts.tol;
            break;
        }
        prev_defect = defect;
        if (it == opts.max_polish) {
            converged = best_defect <= opts.tol;
            break;
        }

        std::vector<Real> refx(want), fref(want);
        std::vector<int> sigma(want);
        for (std::size_t i = 0; i < want; ++i) {
            refx[i] = sel[i].x;
            fref[i] = f(sel[i].x);
            sigma[i] = sign(sel[i].value) >= 0 ? 1 : -1;
        }
        LevelledSolve ls = levelled_solve(tv.nodes, refx, sigma, fref, level, tv);
        if (!ls.ok || has_pole(ls.tv, grid)) {
            converged = best_defect <= opts.tol;
            break;
        }
        tv = std::move(ls.tv);
    }

    if (best_tv) tv = *best_tv;

    // Degenerate fallback: when the alternation set cannot reach 2k+2 points,
    // the optimum may live in type (k-1,k-1); accept that solve when it
    // reproduces the achieved error.
    if (!converged && k >= 1) {
        RationalMinimaxResult sub = rational_remez(f, k - 1, domain, opts);
        if (sub.error <= best_sup * (Real(1) + Real(1e-6))) {
            sub.approximant.type_bound = k;
            std::size_t count = sub.certificate.points.size();
            sub.defect = count >= 2 * k + 2 ? 0 : (2 * k + 2 - count) / 2;
            return sub;
        }
    }
    SolveStatus status =
        (converged && best_defect <= opts.tol) ? SolveStatus::Converged : SolveStatus::Stagnated;
    auto out = finalize_from(tv, k, f, grid, status);
    if (out.certificate.residual_defect > opts.tol && !out.certificate.degenerate)
        out.status = SolveStatus::Stagnated;
    return out;
}

}  // namespace halphen
