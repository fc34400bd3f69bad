#include "halphen/real.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

namespace halphen {

namespace precision {

namespace {
std::atomic<unsigned> g_default_bits{kMinBits};
thread_local unsigned t_bits = 0;  // 0 = not yet initialized on this thread
}  // namespace

unsigned bits() {
    if (t_bits == 0) t_bits = g_default_bits.load(std::memory_order_relaxed);
    return t_bits;
}

void set_bits(unsigned b) {
    if (b < kMinBits) throw std::invalid_argument("precision must be at least 53 bits");
    g_default_bits.store(b, std::memory_order_relaxed);
    t_bits = b;
}

unsigned process_default() { return g_default_bits.load(std::memory_order_relaxed); }

Scoped::Scoped(unsigned b) : saved_(bits()) {
    t_bits = b > saved_ ? b : saved_;
}

Scoped::~Scoped() { t_bits = saved_; }

unsigned required_bits(double error_target) {
    return error_target < 1e-11 ? 128u : kMinBits;
}

}  // namespace precision

Real::Real() { mpfr_init2(v_, precision::bits()); mpfr_set_zero(v_, +1); }

Real::Real(double d) { mpfr_init2(v_, precision::bits()); mpfr_set_d(v_, d, MPFR_RNDN); }

Real::Real(int i) { mpfr_init2(v_, precision::bits()); mpfr_set_si(v_, i, MPFR_RNDN); }

Real::Real(long i) { mpfr_init2(v_, precision::bits()); mpfr_set_si(v_, i, MPFR_RNDN); }

Real::Real(unsigned long i) { mpfr_init2(v_, precision::bits()); mpfr_set_ui(v_, i, MPFR_RNDN); }

Real::Real(const std::string& decimal) {
    mpfr_init2(v_, precision::bits());
    if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
        mpfr_clear(v_);
        throw std::invalid_argument("malformed decimal literal: " + decimal);
    }
}

Real::Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

// Moved-from values are flagged by a null limb pointer so the destructor can
// skip mpfr_clear; mpfr_t exposes this field in its public struct.
Real::Real(Real&& o) noexcept {
    v_[0] = o.v_[0];
    o.v_[0]._mpfr_d = nullptr;
}

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    if (this != &o) {
        if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
        v_[0] = o.v_[0];
        o.v_[0]._mpfr_d = nullptr;
    }
    return *this;
}

Real::~Real() {
    if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
}

Real& Real::operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
Real& Real::operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

Real Real::operator-() const {
    Real r;
    mpfr_set_prec(r.v_, mpfr_get_prec(v_));
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::rounded_to(unsigned bits) const {
    Real r;
    mpfr_set_prec(r.v_, bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

Real Real::nan() { Real r; mpfr_set_nan(r.v_); return r; }
Real Real::inf(int s) { Real r; mpfr_set_inf(r.v_, s); return r; }

#define HALPHEN_BINOP(name, fn)                       \
    Real name(const Real& a, const Real& b) {         \
        Real r;                                       \
        fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);     \
        return r;                                     \
    }

HALPHEN_BINOP(operator+, mpfr_add)
HALPHEN_BINOP(operator-, mpfr_sub)
HALPHEN_BINOP(operator*, mpfr_mul)
HALPHEN_BINOP(operator/, mpfr_div)
HALPHEN_BINOP(pow, mpfr_pow)
HALPHEN_BINOP(min, mpfr_min)
HALPHEN_BINOP(max, mpfr_max)
#undef HALPHEN_BINOP

bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
bool operator!=(const Real& a, const Real& b) { return !(a == b); }

#define HALPHEN_UNOP(name, fn)          \
    Real name(const Real& x) {          \
        Real r;                         \
        fn(r.raw(), x.raw(), MPFR_RNDN);\
        return r;                       \
    }

HALPHEN_UNOP(abs, mpfr_abs)
HALPHEN_UNOP(sqrt, mpfr_sqrt)
HALPHEN_UNOP(exp, mpfr_exp)
HALPHEN_UNOP(log, mpfr_log)
HALPHEN_UNOP(cos, mpfr_cos)
HALPHEN_UNOP(erfc, mpfr_erfc)
#undef HALPHEN_UNOP

Real floor(const Real& x) { Real r; mpfr_floor(r.raw(), x.raw()); return r; }
Real ceil(const Real& x) { Real r; mpfr_ceil(r.raw(), x.raw()); return r; }

Real pow(const Real& x, long n) {
    Real r;
    mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
    return r;
}

int sign(const Real& x) { return mpfr_sgn(x.raw()); }

bool isnan(const Real& x) { return mpfr_nan_p(x.raw()) != 0; }
bool isinf(const Real& x) { return mpfr_inf_p(x.raw()) != 0; }
bool isfinite(const Real& x) { return mpfr_number_p(x.raw()) != 0; }

Real pi() { Real r; mpfr_const_pi(r.raw(), MPFR_RNDN); return r; }

Real machine_epsilon() {
    Real r(1);
    mpfr_div_2ui(r.raw(), r.raw(), precision::bits() - 1, MPFR_RNDN);
    return r;
}

double to_double(const Real& x) { return mpfr_get_d(x.raw(), MPFR_RNDN); }
long to_long(const Real& x) { return mpfr_get_si(x.raw(), MPFR_RNDN); }
bool is_integer(const Real& x) { return mpfr_integer_p(x.raw()) != 0; }

std::string to_decimal(const Real& x) {
    // ceil(bits*log10(2)) + 2 significant digits: enough that parsing at the
    // same precision recovers the exact binary value.
    int digits = static_cast<int>(std::ceil(static_cast<double>(mpfr_get_prec(x.raw())) *
                                            0.30102999566398120)) + 2;
    int need = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, x.raw());
    std::vector<char> buf(static_cast<size_t>(need) + 1);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, x.raw());
    return std::string(buf.data());
}

Real parse_real(const std::string& s) { return Real(s); }

std::ostream& operator<<(std::ostream& os, const Real& x) { return os << to_decimal(x); }

Real power(const Real& x, const Real& n) {
    if (sign(x) == 0) {
        if (sign(n) > 0) return Real(0);
        if (sign(n) == 0) return Real(1);
        return Real::inf(+1);
    }
    if (sign(x) < 0 && !is_integer(n))
        throw std::domain_error("power: negative base requires integer exponent");
    return pow(x, n);
}

}  // namespace halphen
