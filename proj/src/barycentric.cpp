#include "halphen/barycentric.hpp"

#include <algorithm>

namespace halphen {

bool BarycentricRational::structurally_valid() const {
    const std::size_t n = nodes.size();
    if (n == 0 || values.size() != n || weights.size() != n) return false;
    if (n > type_bound + 1) return false;
    bool any = false;
    for (const auto& w : weights) any = any || sign(w) != 0;
    if (!any) return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (nodes[i] == nodes[j]) return false;
    return true;
}

Real eval_rational(const BarycentricRational& r, const Real& x) {
    if (r.nodes.size() == 1) return r.values[0];  // constant, exactly
    Real num(0), den(0);
    for (std::size_t j = 0; j < r.nodes.size(); ++j) {
        Real d = x - r.nodes[j];
        if (sign(d) == 0) return r.values[j];
        Real t = r.weights[j] / d;
        num += t * r.values[j];
        den += t;
    }
    return num / den;  // den == 0 yields a signed infinity
}

Real bary_denominator(const BarycentricRational& r, const Real& x) {
    Real den(0);
    for (std::size_t j = 0; j < r.nodes.size(); ++j) den += r.weights[j] / (x - r.nodes[j]);
    return den;
}

namespace {

// Coefficients of prod_i (z - t_i).
std::vector<Real> node_polynomial(const std::vector<Real>& t) {
    std::vector<Real> c{Real(1)};
    for (const auto& ti : t) {
        std::vector<Real> nc(c.size() + 1, Real(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
            nc[i + 1] += c[i];
            nc[i] -= ti * c[i];
        }
        c = std::move(nc);
    }
    return c;
}

// Synthetic division of poly by (z - root); the remainder is dropped.
std::vector<Real> deflate(const std::vector<Real>& c, const Real& root) {
    std::vector<Real> q(c.size() - 1, Real(0));
    Real carry = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        q[i] = carry;
        carry = c[i] + root * carry;
    }
    return q;
}

std::vector<linalg::Cplx> cleared_roots(const BarycentricRational& r,
                                        const std::vector<Real>& coeff_weights) {
    const auto node_poly = node_polynomial(r.nodes);
    std::vector<Real> acc(r.nodes.size(), Real(0));  // degree <= n-1
    for (std::size_t j = 0; j < r.nodes.size(); ++j) {
        if (sign(coeff_weights[j]) == 0) continue;
        auto lj = deflate(node_poly, r.nodes[j]);
        for (std::size_t i = 0; i < lj.size(); ++i) acc[i] += coeff_weights[j] * lj[i];
    }
    return linalg::poly_roots(acc);
}

}  // namespace

std::vector<linalg::Cplx> rational_poles(const BarycentricRational& r) {
    return cleared_roots(r, r.weights);
}

std::vector<linalg::Cplx> rational_zeros(const BarycentricRational& r) {
    std::vector<Real> wv(r.nodes.size());
    for (std::size_t j = 0; j < r.nodes.size(); ++j) wv[j] = r.weights[j] * r.values[j];
    return cleared_roots(r, wv);
}

std::optional<Real> find_pole_on_grid(const BarycentricRational& r, const std::vector<Real>& grid) {
    auto at_node = [&](const Real& x) {
        return std::any_of(r.nodes.begin(), r.nodes.end(),
                           [&](const Real& t) { return t == x; });
    };
    std::optional<Real> prev_x;
    int prev_sign = 0;
    for (const auto& x : grid) {
        if (at_node(x)) continue;
        Real d = bary_denominator(r, x);
        int s = sign(d);
        if (s == 0) return x;  // exact pole hit
        if (prev_sign != 0 && s != prev_sign) {
            bool node_between = std::any_of(r.nodes.begin(), r.nodes.end(), [&](const Real& t) {
                return t > *prev_x && t < x;
            });
            if (!node_between) return (*prev_x + x) / Real(2);
        }
        prev_sign = s;
        prev_x = x;
    }
    return std::nullopt;
}

}  // namespace halphen
