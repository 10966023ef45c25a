#include "gelfond/rational.hpp"

#include <algorithm>
#include <cctype>

namespace gelfond {

namespace {

bool all_digits(const std::string& s, std::size_t from) {
    if (from >= s.size()) return false;
    return std::all_of(s.begin() + from, s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

Integer parse_int(const std::string& s) {
    std::size_t from = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (!all_digits(s, from)) throw ParseError("not an integer: '" + s + "'");
    return Integer(s[0] == '+' ? s.substr(1) : s, 10);
}

Rational parse_decimal(const std::string& s) {
    std::string mant = s;
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos) {
        mant = s.substr(0, epos);
        std::string e = s.substr(epos + 1);
        try {
            exp10 = std::stol(e);
        } catch (...) {
            throw ParseError("bad exponent in '" + s + "'");
        }
    }
    bool neg = !mant.empty() && mant[0] == '-';
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant = mant.substr(1);
    auto dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        exp10 -= static_cast<long>(mant.size() - dot - 1);
    }
    if (!all_digits(digits, 0)) throw ParseError("not a number: '" + s + "'");
    Rational r{Integer(digits, 10)};
    Integer p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 >= 0)
        r *= p10;
    else
        r /= p10;
    return neg ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty rational");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Integer p = parse_int(s.substr(0, slash));
        Integer q = parse_int(s.substr(slash + 1));
        if (q == 0) throw ParseError("zero denominator in '" + s + "'");
        Rational r(p, q);
        r.canonicalize();
        return r;
    }
    if (s.find_first_of(".eE") != std::string::npos) return parse_decimal(s);
    return Rational(parse_int(s));
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Rational content(const std::vector<Rational>& v) {
    Integer g = 0, l = 1;
    for (const auto& x : v) {
        if (x == 0) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    }
    if (g == 0) throw DomainError("content of the zero vector");
    Rational r(g, l);
    r.canonicalize();
    return r;
}

Rational norm_max(const std::vector<Rational>& v) {
    Rational m = 0;
    for (const auto& x : v) m = std::max(m, Rational(abs(x)));
    return m;
}

Rational height_point(const std::vector<Rational>& v) { return norm_max(v) / content(v); }

Rational height_rational(const Rational& x) {
    Integer p = abs(x.get_num());
    return Rational(std::max(p, Integer(x.get_den())));
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Rational pow_q(const Rational& q, long k) {
    unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
    Rational r = k >= 0 ? Rational(num, den) : Rational(den, num);
    r.canonicalize();
    return r;
}

GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
GaussRat operator*(const Rational& a, const GaussRat& b) { return {a * b.re, a * b.im}; }

}  // namespace gelfond
