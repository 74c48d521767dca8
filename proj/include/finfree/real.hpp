#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace finfree {

inline constexpr int kDefaultPrecisionBits = 256;

// Precision taken from FINFREE_PRECISION_BITS when set, otherwise the default.
int default_precision_bits();

// Arbitrary precision binary floating point value backed by MPFR.
// Every value carries its own precision; binary operations produce a result
// at the larger of the operand precisions. Rounding is to nearest.
class Real {
public:
    Real();
    Real(long value, int bits);
    Real(int value, int bits) : Real(static_cast<long>(value), bits) {}
    Real(double value, int bits);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    ~Real();

    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;

    // Parses a decimal string ("1.25", "-3e-7", "nan" rejected).
    static Real from_string(std::string_view text, int bits);
    static Real pi(int bits);
    // 2^e at the given precision.
    static Real exp2i(long e, int bits);

    int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }
    // Copy rounded to a new precision.
    Real rounded(int bits) const;

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
    // Shortest decimal string that reads back to the same value at this precision.
    std::string to_string() const;
    // Decimal string with a fixed number of significant digits.
    std::string to_string(int digits) const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    long exponent() const { return mpfr_get_exp(v_); }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);
    Real& operator+=(long o);
    Real& operator-=(long o);
    Real& operator*=(long o);
    Real& operator/=(long o);

    Real operator-() const;

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator+(const Real& a, long b);
Real operator-(const Real& a, long b);
Real operator*(const Real& a, long b);
Real operator/(const Real& a, long b);
Real operator+(long a, const Real& b);
Real operator-(long a, const Real& b);
Real operator*(long a, const Real& b);
Real operator/(long a, const Real& b);

bool operator==(const Real& a, const Real& b);
std::partial_ordering operator<=>(const Real& a, const Real& b);
bool operator==(const Real& a, long b);
std::partial_ordering operator<=>(const Real& a, long b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real log1p(const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long n);
Real floor(const Real& x);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

// Binomial coefficient C(n, k) rounded to the given precision.
Real binomial(long n, long k, int bits);
// Relative difference |a-b| / max(|a|,|b|); zero when both vanish.
Real relative_difference(const Real& a, const Real& b);

}  // namespace finfree
