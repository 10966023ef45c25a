#pragma once

#include "gelfond/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

namespace gelfond {

template <class R>
class Poly;

template <class R>
bool scalar_is_zero(const R& x) {
    return x == 0;
}
template <class R>
bool scalar_is_zero(const Poly<R>& x) {
    return x.is_zero();
}

inline bool scalar_exact_div(const Rational& a, const Rational& b, Rational& out) {
    out = a / b;
    return true;
}
inline bool scalar_exact_div(const Integer& a, const Integer& b, Integer& out) {
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return false;
    mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return true;
}
template <class R>
bool scalar_exact_div(const Poly<R>& a, const Poly<R>& b, Poly<R>& out);

// Dense univariate polynomial over a commutative ring R, coefficients indexed
// by power. The zero polynomial has no coefficients.
template <class R>
class Poly {
public:
    using Scalar = R;

    Poly() = default;
    explicit Poly(std::vector<R> c) : c_(std::move(c)) { trim(); }
    Poly(const R& constant) {  // NOLINT: implicit scalar embedding
        if (!scalar_is_zero(constant)) c_.push_back(constant);
    }
    static Poly monomial(const R& c, std::size_t k) {
        if (scalar_is_zero(c)) return Poly();
        std::vector<R> v(k + 1, R{});
        v[k] = c;
        return Poly(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const {
        if (c_.empty()) throw DomainError("degree of the zero polynomial");
        return static_cast<int>(c_.size()) - 1;
    }
    // Degree with the zero polynomial mapped to -1.
    int degree_or_neg() const { return static_cast<int>(c_.size()) - 1; }
    std::size_t size() const { return c_.size(); }
    const std::vector<R>& coeffs() const { return c_; }
    R coeff(std::size_t i) const { return i < c_.size() ? c_[i] : R{}; }
    const R& operator[](std::size_t i) const { return c_[i]; }
    const R& lead() const {
        if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
        return c_.back();
    }
    bool is_constant() const { return c_.size() <= 1; }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R{});
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R{});
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) {
        *this = *this * o;
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) {
        std::vector<R> v(a.c_);
        for (auto& x : v) x = -x;
        return Poly(std::move(v));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<R> v(a.c_.size() + b.c_.size() - 1, R{});
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (scalar_is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(v));
    }
    Poly scaled(const R& k) const {
        std::vector<R> v(c_);
        for (auto& x : v) x *= k;
        return Poly(std::move(v));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Horner evaluation in an arbitrary ring S, with conv: R -> S.
    template <class S, class Conv>
    S horner(const S& x, Conv conv) const {
        if (c_.empty()) return conv(R{});
        S acc = conv(c_.back());
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + conv(c_[i]);
        return acc;
    }

    Poly pow(unsigned k) const {
        Poly r(R(1)), b = *this;
        while (k) {
            if (k & 1u) r = r * b;
            k >>= 1u;
            if (k) b = b * b;
        }
        return r;
    }

    // Multiplication by T^k.
    Poly shifted(std::size_t k) const {
        if (is_zero()) return Poly();
        std::vector<R> v(k, R{});
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(std::move(v));
    }

private:
    void trim() {
        while (!c_.empty() && scalar_is_zero(c_.back())) c_.pop_back();
    }
    std::vector<R> c_;
};

// Exact division in R[T] when the quotient has coefficients in R.
template <class R>
bool try_exact_div(const Poly<R>& a, const Poly<R>& b, Poly<R>& q) {
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    if (a.is_zero()) {
        q = Poly<R>();
        return true;
    }
    if (a.degree() < b.degree()) return false;
    std::vector<R> rem(a.coeffs());
    std::size_t db = static_cast<std::size_t>(b.degree());
    std::vector<R> quo(rem.size() - db, R{});
    for (std::size_t k = rem.size() - db; k-- > 0;) {
        R c;
        if (!scalar_exact_div(rem[k + db], b.lead(), c)) return false;
        quo[k] = c;
        if (scalar_is_zero(c)) continue;
        for (std::size_t i = 0; i <= db; ++i) rem[k + i] -= c * b[i];
    }
    for (const auto& x : rem)
        if (!scalar_is_zero(x)) return false;
    q = Poly<R>(std::move(quo));
    return true;
}

template <class R>
bool scalar_exact_div(const Poly<R>& a, const Poly<R>& b, Poly<R>& out) {
    return try_exact_div(a, b, out);
}

using RatPoly = Poly<Rational>;
using IntPoly = Poly<Integer>;

}  // namespace gelfond
