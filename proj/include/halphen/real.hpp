#ifndef HALPHEN_REAL_HPP
#define HALPHEN_REAL_HPP

#include <mpfr.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace halphen {

// Run-wide significand size in bits. There is one process-wide default and a
// thread-local working value; worker threads pick up the process default the
// first time they touch a Real. 53 bits is the floor everywhere.
namespace precision {

inline constexpr unsigned kMinBits = 53;

unsigned bits();                  // current working precision (this thread)
void set_bits(unsigned bits);     // sets process default + this thread
unsigned process_default();

// Temporarily raises this thread's working precision (guard digits inside
// transforms); never lowers it below the entry value.
class Scoped {
  public:
    explicit Scoped(unsigned bits);
    ~Scoped();
    Scoped(const Scoped&) = delete;
    Scoped& operator=(const Scoped&) = delete;

  private:
    unsigned saved_;
};

// Bits needed for an experiment targeting errors of the given magnitude:
// 53 by default, 128 once the target drops below 1e-11.
unsigned required_bits(double error_target);

}  // namespace precision

// Arbitrary-precision real number, correctly rounded (MPFR, round-to-nearest)
// at the precision that was current when the value was created. Values are
// immutable in spirit: arithmetic returns fresh values at the current working
// precision; copies preserve the source value exactly.
class Real {
  public:
    Real();
    Real(double d);
    Real(int i);
    Real(long i);
    Real(unsigned long i);
    explicit Real(const std::string& decimal);  // parses at current precision

    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real operator-() const;

    // Same value rounded to the given precision.
    Real rounded_to(unsigned bits) const;

    static Real nan();
    static Real inf(int sign = +1);

  private:
    mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);

bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);
bool operator!=(const Real& a, const Real& b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real cos(const Real& x);
Real floor(const Real& x);
Real ceil(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);
int sign(const Real& x);  // -1, 0, +1

bool isnan(const Real& x);
bool isinf(const Real& x);
bool isfinite(const Real& x);

Real pi();
// Unit roundoff at the current working precision, 2^(1-bits).
Real machine_epsilon();

double to_double(const Real& x);
long to_long(const Real& x);
bool is_integer(const Real& x);

// Full-precision decimal (scientific form, round-trips exactly when parsed
// back at the same precision).
std::string to_decimal(const Real& x);
Real parse_real(const std::string& s);  // throws on malformed input

std::ostream& operator<<(std::ostream& os, const Real& x);

// x^n for real n >= 0 with the convention 0^n = 0 for n > 0 and 0^0 = 1.
// Negative x requires integer n.
Real power(const Real& x, const Real& n);

// Complementary error function at the current working precision.
Real erfc(const Real& x);

}  // namespace halphen

#endif
