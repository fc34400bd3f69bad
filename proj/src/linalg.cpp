#include "halphen/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace halphen::linalg {

std::vector<Real> lu_solve(Mat A, std::vector<Real> b) {
    const std::size_t n = A.rows;
    if (A.cols != n || b.size() != n) throw std::invalid_argument("lu_solve: shape mismatch");
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        Real best = abs(A(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            Real cand = abs(A(i, k));
            if (cand > best) {
                best = cand;
                p = i;
            }
        }
        if (sign(best) == 0) throw std::runtime_error("lu_solve: singular matrix");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
            std::swap(b[k], b[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            Real m = A(i, k) / A(k, k);
            if (sign(m) != 0) {
                for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= m * A(k, j);
                b[i] -= m * b[k];
            }
            A(i, k) = Real(0);
        }
    }
    std::vector<Real> x(n, Real(0));
    for (std::size_t i = n; i-- > 0;) {
        Real acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= A(i, j) * x[j];
        x[i] = acc / A(i, i);
    }
    return x;
}

SmallestSingular smallest_singular_vector(const Mat& A) {
    const std::size_t n = A.rows, m = A.cols;
    if (n < m || m == 0) throw std::invalid_argument("smallest_singular_vector: need rows >= cols >= 1");

    // Householder QR; only R is kept.
    Mat R = A;
    for (std::size_t k = 0; k < m; ++k) {
        Real norm2(0);
        for (std::size_t i = k; i < n; ++i) norm2 += R(i, k) * R(i, k);
        Real norm = sqrt(norm2);
        if (sign(norm) == 0) continue;
        Real alpha = sign(R(k, k)) >= 0 ? -norm : norm;
        std::vector<Real> v(n - k, Real(0));
        v[0] = R(k, k) - alpha;
        for (std::size_t i = k + 1; i < n; ++i) v[i - k] = R(i, k);
        Real vtv(0);
        for (const auto& vi : v) vtv += vi * vi;
        R(k, k) = alpha;
        for (std::size_t i = k + 1; i < n; ++i) R(i, k) = Real(0);
        if (sign(vtv) == 0) continue;
        for (std::size_t j = k + 1; j < m; ++j) {
            Real dot(0);
            for (std::size_t i = k; i < n; ++i) dot += v[i - k] * R(i, j);
            Real beta = Real(2) * dot / vtv;
            for (std::size_t i = k; i < n; ++i) R(i, j) -= beta * v[i - k];
        }
    }

    // One-sided Jacobi on the m x m block of R, accumulating V.
    Mat B(m, m), V(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        V(i, i) = Real(1);
        for (std::size_t j = 0; j < m; ++j) B(i, j) = R(i, j);
    }
    const Real eps = machine_epsilon();
    const Real tol = eps * Real(4);
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                Real app(0), aqq(0), apq(0);
                for (std::size_t i = 0; i < m; ++i) {
                    app += B(i, p) * B(i, p);
                    aqq += B(i, q) * B(i, q);
                    apq += B(i, p) * B(i, q);
                }
                if (abs(apq) <= tol * sqrt(app * aqq)) continue;
                rotated = true;
                Real tau = (aqq - app) / (Real(2) * apq);
                Real t = sign(tau) >= 0 ? Real(1) / (tau + sqrt(Real(1) + tau * tau))
                                        : Real(-1) / (-tau + sqrt(Real(1) + tau * tau));
                Real c = Real(1) / sqrt(Real(1) + t * t);
                Real s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    Real bip = B(i, p), biq = B(i, q);
                    B(i, p) = c * bip - s * biq;
                    B(i, q) = s * bip + c * biq;
                    Real vip = V(i, p), viq = V(i, q);
                    V(i, p) = c * vip - s * viq;
                    V(i, q) = s * vip + c * viq;
                }
            }
        }
        if (!rotated) break;
    }

    std::size_t jmin = 0, jmax = 0;
    Real smin = Real::inf(+1), smax(0);
    for (std::size_t j = 0; j < m; ++j) {
        Real nj(0);
        for (std::size_t i = 0; i < m; ++i) nj += B(i, j) * B(i, j);
        nj = sqrt(nj);
        if (nj < smin) {
            smin = nj;
            jmin = j;
        }
        if (nj > smax) {
            smax = nj;
            jmax = j;
        }
    }
    (void)jmax;
    SmallestSingular out;
    out.v.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.v[i] = V(i, jmin);
    out.sigma_min = smin;
    out.sigma_max = smax;
    return out;
}

Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Cplx operator/(const Cplx& a, const Cplx& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Real cabs(const Cplx& a) { return sqrt(a.re * a.re + a.im * a.im); }

std::vector<Cplx> poly_roots(const std::vector<Real>& coeffs_in) {
    std::vector<Real> c = coeffs_in;
    Real maxc(0);
    for (const auto& ci : c) maxc = max(maxc, abs(ci));
    if (sign(maxc) == 0) return {};
    const Real drop = machine_epsilon() * Real(64) * maxc;
    while (c.size() > 1 && abs(c.back()) <= drop) c.pop_back();
    const std::size_t deg = c.size() - 1;
    if (deg == 0) return {};

    // Durand–Kerner from staggered points on a circle enclosing all roots.
    Real radius(1);
    for (std::size_t i = 0; i < deg; ++i) radius = max(radius, Real(2) * abs(c[i] / c[deg]));
    std::vector<Cplx> z(deg);
    const Real theta0 = Real(0.4);  // avoid real-axis symmetry traps
    for (std::size_t i = 0; i < deg; ++i) {
        Real ang = theta0 + Real(2) * pi() * Real(static_cast<unsigned long>(i)) /
                                Real(static_cast<unsigned long>(deg));
        Real rr, ri;
        mpfr_sin_cos(ri.raw(), rr.raw(), ang.raw(), MPFR_RNDN);
        z[i] = Cplx(radius * rr, radius * ri);
    }

    auto eval = [&](const Cplx& x) {
        Cplx acc(c[deg], Real(0));
        for (std::size_t i = deg; i-- > 0;) acc = acc * x + Cplx(c[i], Real(0));
        return acc;
    };

    const Real tol = machine_epsilon() * Real(16);
    for (int iter = 0; iter < 200; ++iter) {
        Real worst(0);
        for (std::size_t i = 0; i < deg; ++i) {
            Cplx denom(c[deg], Real(0));
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i) denom = denom * (z[i] - z[j]);
            Cplx delta = eval(z[i]) / denom;
            z[i] = z[i] - delta;
            worst = max(worst, cabs(delta) / max(Real(1), cabs(z[i])));
        }
        if (worst < tol) break;
    }
    return z;
}

}  // namespace halphen::linalg
