#ifndef HALPHEN_LINALG_HPP
#define HALPHEN_LINALG_HPP

#include <cstddef>
#include <vector>

#include "halphen/real.hpp"

namespace halphen::linalg {

// Dense row-major matrix of Reals; only the small shapes the solvers need.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<Real> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Real(0)) {}

    Real& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Real& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Solves A x = b by LU with partial pivoting (A copied). Throws on singular A.
std::vector<Real> lu_solve(Mat A, std::vector<Real> b);

// Right singular vector for the smallest singular value of A (rows >= cols),
// via Householder QR followed by one-sided Jacobi on R. Also reports the
// smallest and largest singular values.
struct SmallestSingular {
    std::vector<Real> v;
    Real sigma_min;
    Real sigma_max;
};
SmallestSingular smallest_singular_vector(const Mat& A);

struct Cplx {
    Real re, im;
    Cplx() : re(0), im(0) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
};

Cplx operator+(const Cplx& a, const Cplx& b);
Cplx operator-(const Cplx& a, const Cplx& b);
Cplx operator*(const Cplx& a, const Cplx& b);
Cplx operator/(const Cplx& a, const Cplx& b);
Real cabs(const Cplx& a);

// All complex roots of c_0 + c_1 z + ... + c_n z^n (Durand–Kerner iteration).
// Near-zero leading coefficients are deflated first; degenerate inputs give
// an empty result.
std::vector<Cplx> poly_roots(const std::vector<Real>& coeffs);

}  // namespace halphen::linalg

#endif
