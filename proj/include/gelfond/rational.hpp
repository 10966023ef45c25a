#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace gelfond {

using Rational = mpq_class;
using Integer = mpz_class;

// Raised when an operation is asked for an undefined quantity
// (degree of 0, content of the zero vector, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised on malformed text input.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Accepts "p", "p/q", and plain decimals such as "-1.25" or "3.5e-2".
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Rational content(const std::vector<Rational>& v);
Rational norm_max(const std::vector<Rational>& v);
Rational height_point(const std::vector<Rational>& v);
Rational height_rational(const Rational& x);

Integer binomial(unsigned long n, unsigned long k);
Integer factorial(unsigned long n);
Rational pow_q(const Rational& q, long k);

// Exact Gaussian rational re + i*im.
struct GaussRat {
    Rational re, im;
    GaussRat() = default;
    GaussRat(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    Rational norm2() const { return re * re + im * im; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
};

GaussRat operator+(const GaussRat& a, const GaussRat& b);
GaussRat operator-(const GaussRat& a, const GaussRat& b);
GaussRat operator*(const GaussRat& a, const GaussRat& b);
GaussRat operator*(const Rational& a, const GaussRat& b);

}  // namespace gelfond
