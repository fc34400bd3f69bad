#include "halphen/lawson.hpp"

#include <stdexcept>

namespace halphen {

LawsonResult lawson_refine(const BarycentricRational& r, const RealFunction& f,
                           const std::vector<Real>& grid, int iters) {
    const std::size_t n = r.support_size();
    const std::size_t M = grid.size();
    if (M < 2 * n) throw std::invalid_argument("lawson_refine: grid too small for the support");
    if (find_pole_on_grid(r, grid))
        throw std::invalid_argument("lawson_refine: input has a pole on the grid hull");

    std::vector<Real> F(M);
    for (std::size_t i = 0; i < M; ++i) F[i] = f(grid[i]);

    // Cauchy rows 1/(x_i - t_j), cached once since the support never moves.
    // Rows exactly on a node are flagged; they use the cleared residual
    // f_j*beta_j - alpha_j instead.
    std::vector<std::ptrdiff_t> node_of(M, -1);
    linalg::Mat C(M, n);
    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Real d = grid[i] - r.nodes[j];
            if (sign(d) == 0) {
                node_of[i] = static_cast<std::ptrdiff_t>(j);
                break;
            }
            C(i, j) = Real(1) / d;
        }
    }

    auto eval_row = [&](std::size_t i, const std::vector<Real>& a, const std::vector<Real>& b) {
        if (node_of[i] >= 0) {
            auto j = static_cast<std::size_t>(node_of[i]);
            return a[j] / b[j];
        }
        Real num(0), den(0);
        for (std::size_t j = 0; j < n; ++j) {
            num += a[j] * C(i, j);
            den += b[j] * C(i, j);
        }
        return num / den;
    };

    std::vector<Real> alpha(n), beta(n);
    for (std::size_t j = 0; j < n; ++j) {
        beta[j] = r.weights[j];
        alpha[j] = r.weights[j] * r.values[j];
    }

    auto grid_sup = [&](const std::vector<Real>& a, const std::vector<Real>& b) {
        Real sup(0);
        for (std::size_t i = 0; i < M; ++i) sup = max(sup, abs(F[i] - eval_row(i, a, b)));
        return sup;
    };

    LawsonResult out;
    out.rational = r;
    const Real input_error = grid_sup(alpha, beta);
    out.grid_error = input_error;

    std::vector<Real> lam(M, Real(1) / Real(static_cast<unsigned long>(M)));
    std::vector<Real> best_alpha = alpha, best_beta = beta;
    bool improved = false;

    for (int it = 0; it < iters; ++it) {
        // Weighted linearized residual rows sqrt(lam_i) * (F_i*C_i.beta - C_i.alpha).
        linalg::Mat A(M, 2 * n);
        for (std::size_t i = 0; i < M; ++i) {
            Real s = sqrt(lam[i]);
            if (node_of[i] >= 0) {
                auto j = static_cast<std::size_t>(node_of[i]);
                A(i, j) = -s;
                A(i, n + j) = s * F[i];
            } else {
                for (std::size_t j = 0; j < n; ++j) {
                    A(i, j) = -s * C(i, j);
                    A(i, n + j) = s * F[i] * C(i, j);
                }
            }
        }
        auto sv = linalg::smallest_singular_vector(A);
        out.merit_history.push_back(sv.sigma_min * sv.sigma_min);

        for (std::size_t j = 0; j < n; ++j) {
            alpha[j] = sv.v[j];
            beta[j] = sv.v[n + j];
        }

        Real sup(0);
        std::vector<Real> errs(M);
        for (std::size_t i = 0; i < M; ++i) {
            errs[i] = F[i] - eval_row(i, alpha, beta);
            sup = max(sup, abs(errs[i]));
        }
        if (sup < out.grid_error) {
            out.grid_error = sup;
            best_alpha = alpha;
            best_beta = beta;
            improved = true;
        }

        // Lawson update on the true error magnitudes. The linearized-residual
        // variant would make the recorded merit exactly monotone but steers
        // toward the denominator-weighted minimax; with the true errors the
        // merit can wiggle at the 1e-3 scale while the sup error converges to
        // the plain minimax, which is what the pipeline needs. All the mass
        // collapsing onto one point leaves the reweighting nothing to balance.
        Real tot(0);
        for (std::size_t i = 0; i < M; ++i) {
            lam[i] *= abs(errs[i]);
            tot += lam[i];
        }
        if (sign(tot) == 0) break;
        Real lmax(0);
        for (std::size_t i = 0; i < M; ++i) {
            lam[i] /= tot;
            lmax = max(lmax, lam[i]);
        }
        if (lmax >= Real(1) - Real(1e-12)) {
            out.stagnated = true;
            break;
        }
    }

    if (!improved) return out;  // input was already at least as good

    // Convert the best iterate back to interpolatory form. A node with an
    // exactly zero denominator weight but nonzero numerator weight is a
    // genuine pole at the node; keep the input iterate instead.
    BarycentricRational ref;
    ref.type_bound = r.type_bound;
    for (std::size_t j = 0; j < n; ++j) {
        if (sign(best_beta[j]) == 0) {
            if (sign(best_alpha[j]) != 0) {
                out.rational = r;
                out.grid_error = input_error;
                out.stagnated = true;
                return out;
            }
            continue;  // exact common factor; drop the node
        }
        ref.nodes.push_back(r.nodes[j]);
        ref.values.push_back(best_alpha[j] / best_beta[j]);
        ref.weights.push_back(best_beta[j]);
    }
    out.rational = std::move(ref);
    return out;
}

}  // namespace halphen
