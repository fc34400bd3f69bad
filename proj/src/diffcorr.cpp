#include "halphen/diffcorr.hpp"

#include <algorithm>
#include <stdexcept>

#include "halphen/linalg.hpp"

namespace halphen {

namespace {

// One differential-correction step is the LP
//     min t  over p, q (Chebyshev coefficients) and t, subject to
//     +-(f_i q_i - p_i) - delta q_i <= t qhat_i   and   0 <= q_i <= 1
// on the grid, solved through its dual, whose basis has only 2k+3 rows; the
// primal (p, q, t) coefficients are the simplex multipliers at optimality.
// Columns are generated on demand from the cached basis table.
//
// For targets like x^n the optimal sup-normalized denominator dips many
// orders of magnitude near x = 1 (its roots sit at distance ~|s_j|/n from the
// interval), so the caller runs the whole iteration under generous guard
// precision; at working precision the q values hit the roundoff cliff before
// the descent finishes.
class DiffCorrLP {
  public:
    DiffCorrLP(const linalg::Mat& basis_tab, const std::vector<Real>& fvals)
        : B_(basis_tab), f_(fvals), N_(fvals.size()), kk_(basis_tab.cols), m_(2 * kk_ + 1) {}

    // Returns the primal solution (a | b | t) for the current (delta, qhat).
    std::vector<Real> solve(const Real& delta, const std::vector<Real>& qhat) {
        delta_ = delta;
        qhat_ = &qhat;

        const std::size_t ncols = 4 * N_;
        basis_.resize(m_);
        for (std::size_t r = 0; r < m_; ++r) basis_[r] = ncols + r;  // artificials

        const Real eps = machine_epsilon();
        Real scale(1);
        for (const auto& fi : f_) scale = max(scale, abs(fi));
        const Real tol_r = pow(eps, Real(2) / Real(3)) * scale;
        const Real tol_u = pow(eps, Real(2) / Real(3));

        bool phase1 = true;
        int stall = 0, iter = 0;
        Real last_obj = Real::inf(+1);

        for (;; ++iter) {
            linalg::Mat Bmat(m_, m_), Bt(m_, m_);
            for (std::size_t c = 0; c < m_; ++c) {
                auto col = column(basis_[c]);
                for (std::size_t r = 0; r < m_; ++r) {
                    Bmat(r, c) = col[r];
                    Bt(c, r) = col[r];
                }
            }
            std::vector<Real> cb(m_);
            for (std::size_t c = 0; c < m_; ++c) cb[c] = cost(basis_[c], phase1);
            std::vector<Real> piv = linalg::lu_solve(Bt, cb);
            std::vector<Real> xb = linalg::lu_solve(Bmat, rhs());

            Real obj(0);
            for (std::size_t c = 0; c < m_; ++c) obj += cb[c] * xb[c];
            stall = (obj < last_obj - tol_r) ? 0 : stall + 1;
            last_obj = obj;
            const bool bland = stall > 30;

            if (iter > 6000) {
                if (phase1)
                    throw std::runtime_error(
                        "differential_correction: LP infeasible (phase 1 stalled)");
                // A stalled phase-2 basis still yields a feasible descent
                // candidate; the outer iteration validates it.
                std::vector<Real> z(piv);
                z[2 * kk_] = -piv[2 * kk_];
                return z;
            }

            // Pricing: per grid point, two dot products cover all four columns.
            std::vector<Real> pa(kk_), pb(kk_);
            for (std::size_t j = 0; j < kk_; ++j) {
                pa[j] = piv[j];
                pb[j] = piv[kk_ + j];
            }
            const Real pit = piv[2 * kk_];

            std::size_t enter = ncols + m_;
            Real best_r(0);
            for (std::size_t i = 0; i < N_; ++i) {
                Real u(0), v(0);
                for (std::size_t j = 0; j < kk_; ++j) {
                    u += B_(i, j) * pa[j];
                    v += B_(i, j) * pb[j];
                }
                // t-row negated to make the rhs nonnegative; +- rows carry the
                // 1/qhat scaling so the t entry is uniform.
                Real invq = Real(1) / (*qhat_)[i];
                Real rp = -((-u + (f_[i] - delta_) * v) * invq + pit);
                Real rm = -((u + (-f_[i] - delta_) * v) * invq + pit);
                Real rU = (phase1 ? Real(0) : Real(1)) - v;
                Real rL = v;
                const Real rr[4] = {rp, rm, rU, rL};
                for (std::size_t s = 0; s < 4; ++s) {
                    if (rr[s] < -tol_r) {
                        std::size_t e = 4 * i + s;
                        if (is_basic(e)) continue;
                        if (bland) {
                            if (enter == ncols + m_ || e < enter) enter = e;
                        } else if (rr[s] < best_r) {
                            best_r = rr[s];
                            enter = e;
                        }
                    }
                }
            }

            if (enter == ncols + m_) {
                if (phase1) {
                    if (obj > pow(eps, Real(0.5)))
                        throw std::runtime_error("differential_correction: LP infeasible");
                    phase1 = false;
                    last_obj = Real::inf(+1);
                    stall = 0;
                    continue;
                }
                // Optimal: multipliers are the primal solution; undo the
                // t-row negation.
                std::vector<Real> z(piv);
                z[2 * kk_] = -pit;
                return z;
            }

            auto acol = column(enter);
            std::vector<Real> dir = linalg::lu_solve(Bmat, acol);

            Real min_ratio = Real::inf(+1);
            for (std::size_t r = 0; r < m_; ++r)
                if (dir[r] > tol_u) min_ratio = min(min_ratio, max(xb[r], Real(0)) / dir[r]);
            if (isinf(min_ratio))
                throw std::runtime_error("differential_correction: LP unbounded");
            std::size_t leave = m_;
            const Real tie = min_ratio + tol_u * (Real(1) + min_ratio);
            for (std::size_t r = 0; r < m_; ++r) {
                if (dir[r] > tol_u && max(xb[r], Real(0)) / dir[r] <= tie) {
                    if (leave == m_ || basis_[r] < basis_[leave]) leave = r;
                }
            }
            basis_[leave] = enter;
        }
    }

  private:
    bool is_basic(std::size_t e) const {
        return std::find(basis_.begin(), basis_.end(), e) != basis_.end();
    }

    // Dual equality rows: k+1 numerator rows, k+1 denominator rows, then the
    // (negated) t row.
    std::vector<Real> column(std::size_t e) const {
        std::vector<Real> col(m_, Real(0));
        if (e >= 4 * N_) {  // artificial
            col[e - 4 * N_] = Real(1);
            return col;
        }
        const std::size_t i = e / 4, s = e % 4;
        switch (s) {
            case 0:  // y+ : [-B_i ; (f-delta)B_i ; qhat] / qhat
                for (std::size_t j = 0; j < kk_; ++j) {
                    col[j] = -B_(i, j) / (*qhat_)[i];
                    col[kk_ + j] = (f_[i] - delta_) * B_(i, j) / (*qhat_)[i];
                }
                col[2 * kk_] = Real(1);
                break;
            case 1:  // y- : [+B_i ; (-f-delta)B_i ; qhat] / qhat
                for (std::size_t j = 0; j < kk_; ++j) {
                    col[j] = B_(i, j) / (*qhat_)[i];
                    col[kk_ + j] = (-f_[i] - delta_) * B_(i, j) / (*qhat_)[i];
                }
                col[2 * kk_] = Real(1);
                break;
            case 2:  // y_U : [0 ; B_i ; 0] from q_i <= 1
                for (std::size_t j = 0; j < kk_; ++j) col[kk_ + j] = B_(i, j);
                break;
            default:  // y_L : [0 ; -B_i ; 0] from -q_i <= 0
                for (std::size_t j = 0; j < kk_; ++j) col[kk_ + j] = -B_(i, j);
                break;
        }
        return col;
    }

    Real cost(std::size_t e, bool phase1) const {
        if (e >= 4 * N_) return phase1 ? Real(1) : Real(0);
        if (phase1) return Real(0);
        return (e % 4 == 2) ? Real(1) : Real(0);  // only q_i <= 1 has nonzero rhs
    }

    std::vector<Real> rhs() const {
        // The exact rhs is a unit vector, which makes every dual vertex
        // massively degenerate. A deterministic micro-perturbation breaks the
        // ties; it only nudges the primal objective, so the recovered iterate
        // stays feasible and the outer iteration still descends.
        std::vector<Real> d(m_, Real(0));
        const Real tiny = machine_epsilon() * Real(4096);
        for (std::size_t r = 0; r < m_; ++r)
            d[r] = tiny * Real(static_cast<unsigned long>(r + 1));
        d[2 * kk_] += Real(1);  // t row negated: original rhs is -1
        return d;
    }

    const linalg::Mat& B_;
    const std::vector<Real>& f_;
    const std::size_t N_;
    const std::size_t kk_;  // k+1
    const std::size_t m_;   // 2k+3 dual rows
    Real delta_ = Real(0);
    const std::vector<Real>* qhat_ = nullptr;
    std::vector<std::size_t> basis_;
};

struct DcOutcome {
    Real delta;                 // best achieved grid error
    std::vector<Real> pcoeffs;  // numerator of the best iterate
    std::vector<Real> qcoeffs;  // denominator of the best iterate
};

// The outer differential-correction descent on one grid level.
DcOutcome dc_core(const linalg::Mat& B, const std::vector<Real>& fv, Real delta,
                  std::vector<Real> qhat, const Real& floor_abs, const DiffCorrOptions& opts) {
    const std::size_t N = fv.size(), kk = B.cols;
    DiffCorrLP lp(B, fv);
    DcOutcome out{Real::inf(+1), std::vector<Real>(kk, Real(0)), std::vector<Real>(kk, Real(0))};
    out.qcoeffs[0] = Real(1);

    for (int it = 0; it < opts.max_iter; ++it) {
        std::vector<Real> z = lp.solve(delta, qhat);

        std::vector<Real> qnew(N), pnew(N);
        Real qmin = Real::inf(+1);
        for (std::size_t i = 0; i < N; ++i) {
            Real qi(0), pi(0);
            for (std::size_t j = 0; j < kk; ++j) {
                pi += z[j] * B(i, j);
                qi += z[kk + j] * B(i, j);
            }
            qnew[i] = qi;
            pnew[i] = pi;
            qmin = min(qmin, qi);
        }
        if (!(qmin > Real(0)))
            throw std::runtime_error("differential_correction: denominator lost positivity");

        Real dnew(0);
        for (std::size_t i = 0; i < N; ++i) dnew = max(dnew, abs(fv[i] - pnew[i] / qnew[i]));

        if (dnew < out.delta) {
            out.delta = dnew;
            out.pcoeffs.assign(z.begin(), z.begin() + kk);
            out.qcoeffs.assign(z.begin() + kk, z.begin() + 2 * kk);
        }
        if (dnew > delta * (Real(1) + Real(1e-9))) break;  // roundoff wiggle at the bottom
        bool converged = it >= 1 && (delta - dnew) <= opts.rel_tol * max(dnew, floor_abs);
        delta = dnew;
        qhat = std::move(qnew);
        if (converged || dnew <= floor_abs) break;
    }
    return out;
}

}  // namespace

Real differential_correction(const RealFunction& f, std::size_t k, const std::vector<Real>& grid,
                             const DiffCorrOptions& opts) {
    const std::size_t N = grid.size();
    if (N < 4 * k + 4)
        throw std::invalid_argument("differential_correction: grid needs >= 4k+4 points");
    const unsigned work = precision::bits();
    precision::Scoped guard(work + 160);

    Real lo = grid[0], hi = grid[0];
    for (const auto& x : grid) {
        lo = min(lo, x);
        hi = max(hi, x);
    }
    if (!(lo < hi)) throw std::invalid_argument("differential_correction: degenerate grid");

    // Chebyshev basis values on the mapped grid.
    const std::size_t kk = k + 1;
    linalg::Mat B(N, kk);
    std::vector<Real> fv(N);
    for (std::size_t i = 0; i < N; ++i) {
        fv[i] = f(grid[i]);
        if (!isfinite(fv[i]))
            throw std::invalid_argument("differential_correction: f unbounded on grid");
        Real xh = (Real(2) * grid[i] - lo - hi) / (hi - lo);
        B(i, 0) = Real(1);
        if (kk > 1) B(i, 1) = xh;
        for (std::size_t j = 2; j < kk; ++j)
            B(i, j) = Real(2) * xh * B(i, j - 1) - B(i, j - 2);
    }

    Real fbar(0);
    for (const auto& v : fv) fbar = max(fbar, abs(v));
    const Real floor_abs = machine_epsilon() * Real(16) * max(fbar, Real(1));
    if (fbar <= floor_abs) return Real(0);

    Real delta0 = fbar;
    std::vector<Real> qhat0(N, Real(1));

    // Coarse-grid warm start: the expensive fine-grid LPs then run only the
    // final stretch of the descent.
    const std::size_t coarse_target = std::max<std::size_t>(129, 8 * k + 8);
    if (N >= 2 * coarse_target) {
        const std::size_t stride = N / coarse_target;
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < N; i += stride) idx.push_back(i);
        if (idx.back() != N - 1) idx.push_back(N - 1);
        linalg::Mat Bc(idx.size(), kk);
        std::vector<Real> fvc(idx.size());
        Real fbarc(0);
        for (std::size_t r = 0; r < idx.size(); ++r) {
            fvc[r] = fv[idx[r]];
            fbarc = max(fbarc, abs(fvc[r]));
            for (std::size_t j = 0; j < kk; ++j) Bc(r, j) = B(idx[r], j);
        }
        DcOutcome coarse =
            dc_core(Bc, fvc, fbarc, std::vector<Real>(idx.size(), Real(1)), floor_abs, opts);
        // The warm start must be an error the coarse iterate actually achieves
        // on the full grid: that keeps delta above the discrete minimax, which
        // is what guarantees the LP keeps the denominator positive.
        if (isfinite(coarse.delta)) {
            Real achieved(0);
            Real qmin = Real::inf(+1);
            std::vector<Real> qwarm(N);
            for (std::size_t i = 0; i < N && sign(qmin) > 0; ++i) {
                Real qi(0), pi(0);
                for (std::size_t j = 0; j < kk; ++j) {
                    qi += coarse.qcoeffs[j] * B(i, j);
                    pi += coarse.pcoeffs[j] * B(i, j);
                }
                qwarm[i] = qi;
                qmin = min(qmin, qi);
                if (sign(qi) > 0) achieved = max(achieved, abs(fv[i] - pi / qi));
            }
            if (qmin > Real(0) && achieved < fbar) {
                delta0 = achieved;
                qhat0 = std::move(qwarm);
            }
        }
    }

    return dc_core(B, fv, delta0, std::move(qhat0), floor_abs, opts).delta.rounded_to(work);
}

}  // namespace halphen
