#include "gelfond/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace gelfond {

BigFloat::BigFloat(long bits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

std::string BigFloat::str(mpfr_rnd_t rnd, int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
    if (mpfr_zero_p(v_)) return "0";
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*R*e", digits - 1, rnd, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

namespace {

long prec2(const Interval& a, const Interval& b) { return std::max(a.bits(), b.bits()); }

// a*b with 0*inf treated as 0 (interval endpoint convention).
void mul_dir(mpfr_ptr r, mpfr_srcptr a, mpfr_srcptr b, mpfr_rnd_t rnd) {
    if (mpfr_zero_p(a) || mpfr_zero_p(b)) {
        mpfr_set_zero(r, 1);
        return;
    }
    mpfr_mul(r, a, b, rnd);
}

}  // namespace

Interval::Interval(long bits) : lo_(bits), hi_(bits) {}

Interval Interval::from_q(const mpq_class& q, long bits) {
    Interval r(bits);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from_z(const mpz_class& z, long bits) {
    Interval r(bits);
    mpfr_set_z(r.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from_si(long v, long bits) {
    Interval r(bits);
    mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
    return r;
}

Interval Interval::from_bounds(const BigFloat& lo, const BigFloat& hi) {
    Interval r(std::max(lo.bits(), hi.bits()));
    mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
    return r;
}

Interval Interval::pos_inf(long bits) {
    Interval r(bits);
    mpfr_set_inf(r.lo_.get(), 1);
    mpfr_set_inf(r.hi_.get(), 1);
    return r;
}

Interval Interval::neg_inf(long bits) {
    Interval r(bits);
    mpfr_set_inf(r.lo_.get(), -1);
    mpfr_set_inf(r.hi_.get(), -1);
    return r;
}

bool Interval::has_nan() const { return mpfr_nan_p(lo_.get()) || mpfr_nan_p(hi_.get()); }

bool Interval::contains_zero() const {
    return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool Interval::is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }

bool Interval::positive() const { return !has_nan() && mpfr_sgn(lo_.get()) > 0; }

BigFloat Interval::width() const {
    BigFloat w(bits());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w;
}

bool Interval::contains(const Interval& inner) const {
    return mpfr_lessequal_p(lo_.get(), inner.lo_.get()) &&
           mpfr_greaterequal_p(hi_.get(), inner.hi_.get());
}

mpq_class Interval::mid_q() const {
    if (!mpfr_number_p(lo_.get()) || !mpfr_number_p(hi_.get()))
        throw std::domain_error("midpoint of an unbounded interval");
    BigFloat m(bits() + 1);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), m.get());
    return q;
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval r(prec2(a, b));
    mpfr_add(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_add(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r(prec2(a, b));
    mpfr_sub(r.lo().get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
    mpfr_sub(r.hi().get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a) {
    Interval r(a.bits());
    mpfr_neg(r.lo().get(), a.hi().get(), MPFR_RNDD);
    mpfr_neg(r.hi().get(), a.lo().get(), MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    long p = prec2(a, b);
    Interval r(p);
    BigFloat t(p);
    const mpfr_srcptr as[2] = {a.lo().get(), a.hi().get()};
    const mpfr_srcptr bs[2] = {b.lo().get(), b.hi().get()};
    bool first = true;
    for (auto x : as)
        for (auto y : bs) {
            mul_dir(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), r.lo().get())) mpfr_set(r.lo().get(), t.get(), MPFR_RNDD);
            mul_dir(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), r.hi().get())) mpfr_set(r.hi().get(), t.get(), MPFR_RNDU);
            first = false;
        }
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw std::domain_error("interval division by an interval containing 0");
    long p = prec2(a, b);
    Interval inv(p);
    mpfr_ui_div(inv.lo().get(), 1, b.hi().get(), MPFR_RNDD);
    mpfr_ui_div(inv.hi().get(), 1, b.lo().get(), MPFR_RNDU);
    return a * inv;
}

Interval scale(const Interval& a, const mpq_class& k) {
    if (k == 0) return Interval(a.bits());
    return a * Interval::from_q(k, a.bits());
}

Interval sqr(const Interval& a) { return pow_ui(a, 2); }

Interval abs(const Interval& a) {
    if (mpfr_sgn(a.lo().get()) >= 0) return a;
    if (mpfr_sgn(a.hi().get()) <= 0) return -a;
    Interval r(a.bits());
    mpfr_set_zero(r.lo().get(), 1);
    mpfr_neg(r.hi().get(), a.lo().get(), MPFR_RNDU);
    if (mpfr_greater_p(a.hi().get(), r.hi().get())) mpfr_set(r.hi().get(), a.hi().get(), MPFR_RNDU);
    return r;
}

Interval sqrt(const Interval& a) {
    Interval r(a.bits());
    if (mpfr_sgn(a.lo().get()) <= 0)
        mpfr_set_zero(r.lo().get(), 1);
    else
        mpfr_sqrt(r.lo().get(), a.lo().get(), MPFR_RNDD);
    mpfr_sqrt(r.hi().get(), a.hi().get(), MPFR_RNDU);
    return r;
}

Interval exp(const Interval& a) {
    Interval r(a.bits());
    mpfr_exp(r.lo().get(), a.lo().get(), MPFR_RNDD);
    mpfr_exp(r.hi().get(), a.hi().get(), MPFR_RNDU);
    return r;
}

Interval log(const Interval& a) {
    Interval r(a.bits());
    if (mpfr_sgn(a.lo().get()) <= 0)
        mpfr_set_inf(r.lo().get(), -1);
    else
        mpfr_log(r.lo().get(), a.lo().get(), MPFR_RNDD);
    if (mpfr_sgn(a.hi().get()) <= 0)
        mpfr_set_inf(r.hi().get(), -1);
    else
        mpfr_log(r.hi().get(), a.hi().get(), MPFR_RNDU);
    return r;
}

Interval pow_ui(const Interval& a, unsigned long k) {
    if (k == 0) return Interval::from_si(1, a.bits());
    Interval b = (k % 2 == 0) ? abs(a) : a;
    Interval r(a.bits());
    mpfr_pow_ui(r.lo().get(), b.lo().get(), k, MPFR_RNDD);
    mpfr_pow_ui(r.hi().get(), b.hi().get(), k, MPFR_RNDU);
    return r;
}

Interval pow(const Interval& base, const Interval& e) {
    if (mpfr_sgn(base.lo().get()) < 0) throw std::domain_error("pow of a possibly negative base");
    return exp(e * log(base));
}

Interval max(const Interval& a, const Interval& b) {
    Interval r(prec2(a, b));
    mpfr_max(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_max(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
    return r;
}

Interval min(const Interval& a, const Interval& b) {
    Interval r(prec2(a, b));
    mpfr_min(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_min(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
    return r;
}

Interval hull(const Interval& a, const Interval& b) {
    Interval r(prec2(a, b));
    mpfr_min(r.lo().get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
    mpfr_max(r.hi().get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
    return r;
}

Interval log_q(const mpq_class& q, long bits) {
    if (q == 1) return Interval(bits);
    return log(Interval::from_q(q, bits + 16));
}

Interval exp_q(const mpq_class& q, long bits) {
    if (q == 0) return Interval::from_si(1, bits);
    return exp(Interval::from_q(q, bits + 16));
}

ComplexInterval ComplexInterval::from_q(const mpq_class& r, const mpq_class& i, long bits) {
    return {Interval::from_q(r, bits), Interval::from_q(i, bits)};
}

bool ComplexInterval::contains(const ComplexInterval& inner) const {
    return re.contains(inner.re) && im.contains(inner.im);
}

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re + b.re, a.im + b.im};
}

ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re - b.re, a.im - b.im};
}

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Interval abs(const ComplexInterval& z) {
    if (z.im.is_point() && mpfr_zero_p(z.im.lo().get())) return abs(z.re);
    if (z.re.is_point() && mpfr_zero_p(z.re.lo().get())) return abs(z.im);
    return sqrt(sqr(z.re) + sqr(z.im));
}

}  // namespace gelfond
