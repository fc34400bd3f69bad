#include "halphen/poly_remez.hpp"

#include <algorithm>

namespace halphen {

namespace {

// Second-form barycentric interpolant through (nodes, values) with weights w.
Real bary_eval(const std::vector<Real>& nodes, const std::vector<Real>& values,
               const std::vector<Real>& weights, const Real& x) {
    Real num(0), den(0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        Real d = x - nodes[i];
        if (sign(d) == 0) return values[i];
        Real t = weights[i] / d;
        num += t * values[i];
        den += t;
    }
    return num / den;
}

std::vector<Real> bary_weights(const std::vector<Real>& nodes) {
    const std::size_t n = nodes.size();
    std::vector<Real> w(n, Real(1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) w[i] /= nodes[i] - nodes[j];
    return w;
}

}  // namespace

Real newman_rivlin(std::size_t k, const Real& n) {
    if (!(n > Real(0))) throw std::invalid_argument("newman_rivlin: n must be positive");
    return erfc(Real(static_cast<unsigned long>(k)) / sqrt(n)) / Real(2);
}

PolyMinimaxResult remez_poly(const RealFunction& f, std::size_t k, const Interval& domain,
                             const RemezOptions& opts) {
    const std::size_t K = k + 2;
    std::vector<Real> ref = cheb_points(k + 1, domain);

    Real fscale(0);
    for (const auto& x : ref) fscale = max(fscale, abs(f(x)));
    const Real zero_tol = machine_epsilon() * Real(64) * max(fscale, Real(1));

    auto build_series = [&](const std::vector<Real>& nodes, const std::vector<Real>& values,
                            const std::vector<Real>& weights) {
        auto pts = cheb_points(std::max<std::size_t>(k, 1), domain);
        std::vector<Real> samples(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i)
            samples[i] = bary_eval(nodes, values, weights, pts[i]);
        ChebSeries s = cheb_fit(samples, domain);
        if (k == 0) s.coeffs.resize(1);  // cheb_fit needs m >= 1; constant keeps c0
        return s;
    };

    auto finalize = [&](const ChebSeries& series, int iters) {
        RealFunction err = [&](const Real& x) { return f(x) - cheb_eval(series, x); };
        auto extrema = select_alternating(exchange_extrema(err, ref, domain), K);

        PolyMinimaxResult out{series, Real(0), {}, iters};
        Real maxa(0), mina = Real::inf(+1);
        for (const auto& e : extrema) {
            maxa = max(maxa, abs(e.value));
            mina = min(mina, abs(e.value));
        }
        if (extrema.size() < K || maxa <= zero_tol) {
            out.error = maxa;
            out.certificate.degenerate = true;
            out.certificate.levelled_error = maxa;
            return out;
        }
        Real level = (maxa + mina) / Real(2);
        out.error = level;
        out.certificate.levelled_error = level;
        out.certificate.residual_defect = (maxa - mina) / (maxa + mina);
        for (const auto& e : extrema) {
            out.certificate.points.push_back(e.x);
            out.certificate.signs.push_back(sign(e.value) >= 0 ? 1 : -1);
        }
        return out;
    };

    Real prev_defect = Real::inf(+1);
    int stalled = 0;
    Real best_defect = Real::inf(+1);
    ChebSeries best_series(std::vector<Real>{Real(0)}, domain);
    int best_iter = 0;

    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        std::vector<Real> fv(K);
        for (std::size_t i = 0; i < K; ++i) fv[i] = f(ref[i]);

        auto w = bary_weights(ref);
        Real num(0), den(0);
        for (std::size_t i = 0; i < K; ++i) {
            num += w[i] * fv[i];
            den += (i % 2 == 0) ? w[i] : -w[i];
        }
        Real h = num / den;

        std::vector<Real> pv(K);
        for (std::size_t i = 0; i < K; ++i) pv[i] = fv[i] - ((i % 2 == 0) ? h : -h);

        RealFunction err = [&](const Real& x) { return f(x) - bary_eval(ref, pv, w, x); };
        auto extrema = select_alternating(exchange_extrema(err, ref, domain), K);

        Real maxa(0), mina = Real::inf(+1);
        for (const auto& e : extrema) {
            maxa = max(maxa, abs(e.value));
            mina = min(mina, abs(e.value));
        }

        if (maxa <= zero_tol || extrema.size() < K) {
            // Exactly representable target (or alternation collapsed into it).
            ChebSeries series = build_series(ref, pv, w);
            ref.clear();
            return finalize(series, iter);
        }

        Real defect = (maxa - mina) / maxa;
        if (defect < best_defect) {
            best_defect = defect;
            best_series = build_series(ref, pv, w);
            best_iter = iter;
        }

        bool levelled = defect <= opts.tol;
        // Levelling cannot pass below the arithmetic noise floor; accept a
        // stalled exchange once the defect is within the certificate tolerance.
        stalled = (defect > prev_defect * Real(0.7)) ? stalled + 1 : 0;
        bool noise_floor = stalled >= 2 && defect <= opts.cert_tol;
        prev_defect = defect;

        if (levelled || noise_floor) {
            ChebSeries series = build_series(ref, pv, w);
            std::vector<Real> new_ref;
            for (const auto& e : extrema) new_ref.push_back(e.x);
            ref = std::move(new_ref);
            return finalize(series, iter);
        }
        std::vector<Real> new_ref;
        for (const auto& e : extrema) new_ref.push_back(e.x);
        ref = std::move(new_ref);
    }

    PolyMinimaxResult best = finalize(best_series, best_iter);
    throw RemezError("remez_poly: no equioscillation within max_iter", std::move(best));
}

}  // namespace halphen
