#include "finfree/real.hpp"

#include <gmp.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace finfree {

namespace {

int checked_bits(int bits) {
    if (bits < 2 || bits > (1 << 24))
        throw std::invalid_argument("precision out of range: " + std::to_string(bits));
    return bits;
}

int max_prec(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

int default_precision_bits() {
    static const int bits = [] {
        const char* env = std::getenv("FINFREE_PRECISION_BITS");
        if (env == nullptr || *env == '\0') return kDefaultPrecisionBits;
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 53 || v > (1 << 20))
            throw std::invalid_argument("FINFREE_PRECISION_BITS must be an integer >= 53");
        return static_cast<int>(v);
    }();
    return bits;
}

Real::Real() {
    mpfr_init2(v_, kDefaultPrecisionBits);
    mpfr_set_zero(v_, 1);
}

Real::Real(long value, int bits) {
    mpfr_init2(v_, checked_bits(bits));
    mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(double value, int bits) {
    mpfr_init2(v_, checked_bits(bits));
    mpfr_set_d(v_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    // steal the limbs and leave the source a valid zero of minimal precision
    *v_ = *other.v_;
    mpfr_init2(other.v_, MPFR_PREC_MIN);
    mpfr_set_zero(other.v_, 1);
}

Real::~Real() { mpfr_clear(v_); }

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        if (mpfr_get_prec(v_) != mpfr_get_prec(other.v_)) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        }
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    if (this != &other) mpfr_swap(v_, other.v_);
    return *this;
}

Real Real::from_string(std::string_view text, int bits) {
    Real r(0L, bits);
    std::string s(text);
    // trim surrounding blanks only
    auto b = s.find_first_not_of(" \t\n\r");
    auto e = s.find_last_not_of(" \t\n\r");
    if (b == std::string::npos) throw std::invalid_argument("empty number");
    s = s.substr(b, e - b + 1);
    char* end = nullptr;
    mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (end == s.c_str() || *end != '\0')
        throw std::invalid_argument("malformed number: '" + s + "'");
    if (!r.is_finite()) throw std::invalid_argument("non-finite number: '" + s + "'");
    return r;
}

Real Real::pi(int bits) {
    Real r(0L, bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Real Real::exp2i(long e, int bits) {
    Real r(1L, bits);
    mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
}

Real Real::rounded(int bits) const {
    Real r(0L, bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string Real::to_string() const { return to_string(0); }

std::string Real::to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return mpfr_signbit(v_) ? "-0" : "0";
    mpfr_exp_t exp10 = 0;
    char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(std::max(digits, 0)), v_,
                             MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    std::string out;
    if (mant.front() == '-') {
        out.push_back('-');
        mant.erase(0, 1);
    }
    while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
    out.push_back(mant[0]);
    if (mant.size() > 1) {
        out.push_back('.');
        out.append(mant, 1, std::string::npos);
    }
    long e = static_cast<long>(exp10) - 1;
    if (e != 0) out += "e" + std::to_string(e);
    return out;
}

Real& Real::operator+=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator-=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator*=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator/=(const Real& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator+=(long o) {
    mpfr_add_si(v_, v_, o, MPFR_RNDN);
    return *this;
}
Real& Real::operator-=(long o) {
    mpfr_sub_si(v_, v_, o, MPFR_RNDN);
    return *this;
}
Real& Real::operator*=(long o) {
    mpfr_mul_si(v_, v_, o, MPFR_RNDN);
    return *this;
}
Real& Real::operator/=(long o) {
    mpfr_div_si(v_, v_, o, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const {
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, const Real& b) {
    Real r(0L, max_prec(a, b));
    mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real operator-(const Real& a, const Real& b) {
    Real r(0L, max_prec(a, b));
    mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real operator*(const Real& a, const Real& b) {
    Real r(0L, max_prec(a, b));
    mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real operator/(const Real& a, const Real& b) {
    Real r(0L, max_prec(a, b));
    mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
    return r;
}
Real operator+(const Real& a, long b) { return Real(a) += b; }
Real operator-(const Real& a, long b) { return Real(a) -= b; }
Real operator*(const Real& a, long b) { return Real(a) *= b; }
Real operator/(const Real& a, long b) { return Real(a) /= b; }
Real operator+(long a, const Real& b) { return Real(b) += a; }
Real operator-(long a, const Real& b) {
    Real r(0L, b.precision());
    mpfr_si_sub(r.get(), a, b.get(), MPFR_RNDN);
    return r;
}
Real operator*(long a, const Real& b) { return Real(b) *= a; }
Real operator/(long a, const Real& b) {
    Real r(0L, b.precision());
    mpfr_si_div(r.get(), a, b.get(), MPFR_RNDN);
    return r;
}

bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.get(), b.get())) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.get(), b.get());
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

bool operator==(const Real& a, long b) { return !mpfr_nan_p(a.get()) && mpfr_cmp_si(a.get(), b) == 0; }

std::partial_ordering operator<=>(const Real& a, long b) {
    if (mpfr_nan_p(a.get())) return std::partial_ordering::unordered;
    int c = mpfr_cmp_si(a.get(), b);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

Real abs(const Real& x) {
    Real r(x);
    mpfr_abs(r.get(), r.get(), MPFR_RNDN);
    return r;
}
Real sqrt(const Real& x) {
    Real r(0L, x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}
Real log(const Real& x) {
    Real r(0L, x.precision());
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}
Real exp(const Real& x) {
    Real r(0L, x.precision());
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}
Real log1p(const Real& x) {
    Real r(0L, x.precision());
    mpfr_log1p(r.get(), x.get(), MPFR_RNDN);
    return r;
}
Real pow(const Real& x, const Real& y) {
    Real r(0L, max_prec(x, y));
    mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}
Real pow(const Real& x, long n) {
    Real r(0L, x.precision());
    mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
    return r;
}
Real floor(const Real& x) {
    Real r(0L, x.precision());
    mpfr_floor(r.get(), x.get());
    return r;
}
Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real binomial(long n, long k, int bits) {
    if (k < 0 || k > n || n < 0) return Real(0L, bits);
    mpz_t z;
    mpz_init(z);
    mpz_bin_uiui(z, static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    Real r(0L, bits);
    mpfr_set_z(r.get(), z, MPFR_RNDN);
    mpz_clear(z);
    return r;
}

Real relative_difference(const Real& a, const Real& b) {
    Real scale = max(abs(a), abs(b));
    if (scale.is_zero()) return Real(0L, max_prec(a, b));
    return abs(a - b) / scale;
}

}  // namespace finfree
