#include "halphen/aaa.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace halphen {

namespace {

// Least-squares weights on the current support: smallest right singular vector
// of the Loewner matrix L_ij = (F_i - f_j)/(z_i - t_j) over non-support rows.
std::vector<Real> solve_weights(const std::vector<Real>& Z, const std::vector<Real>& F,
                                const std::vector<std::size_t>& support,
                                const std::vector<bool>& in_support) {
    const std::size_t m1 = support.size();
    linalg::Mat L(Z.size() - m1, m1);
    std::size_t row = 0;
    for (std::size_t i = 0; i < Z.size(); ++i) {
        if (in_support[i]) continue;
        for (std::size_t j = 0; j < m1; ++j)
            L(row, j) = (F[i] - F[support[j]]) / (Z[i] - Z[support[j]]);
        ++row;
    }
    return linalg::smallest_singular_vector(L).v;
}

BarycentricRational assemble(const std::vector<Real>& Z, const std::vector<Real>& F,
                             const std::vector<std::size_t>& support,
                             const std::vector<Real>& w, std::size_t max_degree) {
    BarycentricRational r;
    r.type_bound = max_degree;
    for (std::size_t j = 0; j < support.size(); ++j) {
        r.nodes.push_back(Z[support[j]]);
        r.values.push_back(F[support[j]]);
        r.weights.push_back(w[j]);
    }
    return r;
}

}  // namespace

BarycentricRational aaa_fit(const std::vector<Real>& Z, const std::vector<Real>& F,
                            std::size_t max_degree, const Real& tol) {
    if (Z.size() != F.size()) throw std::invalid_argument("aaa_fit: point/value length mismatch");
    if (Z.size() < 2 * max_degree + 2)
        throw std::invalid_argument("aaa_fit: need at least 2*max_degree + 2 sample points");
    {
        std::vector<Real> zs = Z;
        std::sort(zs.begin(), zs.end());
        for (std::size_t i = 0; i + 1 < zs.size(); ++i)
            if (zs[i] == zs[i + 1])
                throw std::invalid_argument("aaa_fit: sample points must be distinct");
    }

    const std::size_t M = Z.size();
    Real fbar(0);
    for (const auto& v : F) fbar = max(fbar, abs(v));
    const Real target = tol * max(fbar, Real(1e-300));

    Real meanF = std::accumulate(F.begin(), F.end(), Real(0)) / Real(static_cast<unsigned long>(M));
    std::vector<Real> R(M, meanF);
    std::vector<bool> in_support(M, false);
    std::vector<std::size_t> support;
    std::vector<Real> w;

    for (std::size_t m = 0; m <= max_degree; ++m) {
        std::size_t jmax = M;
        Real emax(-1);
        for (std::size_t i = 0; i < M; ++i) {
            if (in_support[i]) continue;
            Real e = abs(F[i] - R[i]);
            if (e > emax) {
                emax = e;
                jmax = i;
            }
        }
        if (!support.empty() && emax <= target) break;
        if (support.empty() && emax <= target) {
            // Constant data: a single-node interpolant is exact.
            support.push_back(jmax);
            in_support[jmax] = true;
            w.assign(1, Real(1));
            break;
        }

        support.push_back(jmax);
        in_support[jmax] = true;
        w = solve_weights(Z, F, support, in_support);

        BarycentricRational cur = assemble(Z, F, support, w, max_degree);
        for (std::size_t i = 0; i < M; ++i)
            if (!in_support[i]) R[i] = eval_rational(cur, Z[i]);
    }

    BarycentricRational r = assemble(Z, F, support, w, max_degree);

    // Froissart cleanup: prune the support node nearest an offending pole.
    const Real doublet_tol(1e-13);
    for (int pass = 0; pass < 4; ++pass) {
        auto poles = rational_poles(r);
        auto zeros = rational_zeros(r);
        std::optional<linalg::Cplx> offender;
        for (const auto& p : poles) {
            for (const auto& z : zeros) {
                if (cabs(p - z) <= doublet_tol * max(Real(1), cabs(p))) {
                    offender = p;
                    break;
                }
            }
            if (offender) break;
        }
        if (!offender) return r;
        if (support.size() <= 1)
            throw std::runtime_error("aaa_fit: unresolvable Froissart doublet");

        std::size_t drop = 0;
        Real bestd = Real::inf(+1);
        for (std::size_t j = 0; j < support.size(); ++j) {
            Real d = cabs(linalg::Cplx(Z[support[j]], Real(0)) - *offender);
            if (d < bestd) {
                bestd = d;
                drop = j;
            }
        }
        in_support[support[drop]] = false;
        support.erase(support.begin() + drop);
        w = solve_weights(Z, F, support, in_support);
        r = assemble(Z, F, support, w, max_degree);
    }
    throw std::runtime_error("aaa_fit: unresolvable Froissart doublet");
}

}  // namespace halphen
