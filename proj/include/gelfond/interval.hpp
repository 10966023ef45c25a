#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace gelfond {

// Owning wrapper around mpfr_t. Copies keep the precision of the source.
class BigFloat {
public:
    explicit BigFloat(long bits = 128);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    long bits() const { return static_cast<long>(mpfr_get_prec(v_)); }

    // Decimal rendering rounded in the given direction.
    std::string str(mpfr_rnd_t rnd, int digits = 25) const;

private:
    mpfr_t v_;
};

// Closed real interval [lo, hi] with outward-rounded endpoints. Endpoints may
// be infinite (log of an exact zero is [-inf, -inf]).
class Interval {
public:
    explicit Interval(long bits = 128);
    static Interval from_q(const mpq_class& q, long bits);
    static Interval from_z(const mpz_class& z, long bits);
    static Interval from_si(long v, long bits);
    static Interval from_bounds(const BigFloat& lo, const BigFloat& hi);
    static Interval pos_inf(long bits);
    static Interval neg_inf(long bits);

    const BigFloat& lo() const { return lo_; }
    const BigFloat& hi() const { return hi_; }
    BigFloat& lo() { return lo_; }
    BigFloat& hi() { return hi_; }
    long bits() const { return lo_.bits(); }

    bool has_nan() const;
    bool contains_zero() const;
    bool is_point() const;
    bool positive() const;  // lo > 0
    // Width hi - lo rounded up.
    BigFloat width() const;
    bool contains(const Interval& inner) const;
    // Midpoint (rounded to nearest) as an exact rational; finite intervals only.
    mpq_class mid_q() const;

    std::string lo_str(int digits = 25) const { return lo_.str(MPFR_RNDD, digits); }
    std::string hi_str(int digits = 25) const { return hi_.str(MPFR_RNDU, digits); }

private:
    BigFloat lo_, hi_;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);  // b must not contain 0
Interval scale(const Interval& a, const mpq_class& k);     // k*a, with 0*inf = 0

Interval sqr(const Interval& a);
Interval abs(const Interval& a);
Interval sqrt(const Interval& a);  // a >= 0
Interval exp(const Interval& a);
Interval log(const Interval& a);   // a >= 0; log 0 = -inf
Interval pow_ui(const Interval& a, unsigned long k);
Interval pow(const Interval& base, const Interval& e);  // base > 0 (or base = 0, e > 0)
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);
Interval hull(const Interval& a, const Interval& b);

Interval log_q(const mpq_class& q, long bits);  // q > 0
Interval exp_q(const mpq_class& q, long bits);

// Rectangular complex enclosure.
struct ComplexInterval {
    Interval re, im;
    explicit ComplexInterval(long bits = 128) : re(bits), im(bits) {}
    ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
    static ComplexInterval from_q(const mpq_class& r, const mpq_class& i, long bits);
    long bits() const { return re.bits(); }
    bool contains(const ComplexInterval& inner) const;
};

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
Interval abs(const ComplexInterval& z);

}  // namespace gelfond
