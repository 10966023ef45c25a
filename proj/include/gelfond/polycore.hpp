#pragma once

#include "gelfond/interval.hpp"
#include "gelfond/poly.hpp"
#include "gelfond/rational.hpp"
#include "gelfond/verdict.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gelfond {

// ---- metrics -------------------------------------------------------------

struct PolyMetrics {
    Rational norm, content, height;
};

Rational norm(const RatPoly& p);
Rational content(const RatPoly& p);
Rational height(const RatPoly& p);
PolyMetrics poly_metrics(const RatPoly& p);

// P / cont(P) with positive leading coefficient (an integer polynomial).
RatPoly primitive_part(const RatPoly& p);
bool is_integer_poly(const RatPoly& p);
IntPoly to_int_poly(const RatPoly& p);  // requires integer coefficients
RatPoly to_rat_poly(const IntPoly& p);

RatPoly divided_derivative(const RatPoly& p, unsigned j);
RatPoly poly_from_roots(const std::vector<Rational>& roots);
RatPoly linear(const Rational& c0, const Rational& c1);  // c1*T + c0
RatPoly monomial_t(unsigned k);                          // T^k

// Euclidean division over Q.
void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
bool divides(const RatPoly& d, const RatPoly& p);
// Rational multiple test: a = c*b for some nonzero rational c.
bool associate(const RatPoly& a, const RatPoly& b);

Rational eval(const RatPoly& p, const Rational& x);
GaussRat eval(const RatPoly& p, const GaussRat& x);

// ---- certified points ----------------------------------------------------

// A complex point known either exactly (Gaussian rational) or through a
// refinable enclosure. at(bits) never widens as bits grows.
class ComplexEnclosure {
public:
    ComplexEnclosure();  // exact 0
    static ComplexEnclosure exact(const Rational& re, const Rational& im = 0);
    static ComplexEnclosure exact(const GaussRat& z);
    // Decimal (or rational) centre with absolute radius 2^-bits in each part.
    static ComplexEnclosure from_decimal(const std::string& re, const std::string& im, long bits);
    // sqrt(q) for q > 0, refined on demand.
    static ComplexEnclosure sqrt_of(const Rational& q);
    // A fixed enclosure that cannot be refined further.
    static ComplexEnclosure fixed(const ComplexInterval& z);
    static ComplexEnclosure refinable(std::function<ComplexInterval(long)> f, std::string label);

    bool is_exact() const { return exact_.has_value(); }
    const GaussRat& exact_value() const { return *exact_; }
    bool is_real() const;  // known to have zero imaginary part
    ComplexInterval at(long bits) const;
    std::string label() const;

private:
    std::optional<GaussRat> exact_;
    std::shared_ptr<const std::function<ComplexInterval(long)>> refine_;
    std::string label_;
    bool real_ = false;
};

ComplexEnclosure operator+(const ComplexEnclosure& a, const ComplexEnclosure& b);
ComplexEnclosure operator*(const Rational& a, const ComplexEnclosure& z);
// Affine image a*z + b.
ComplexEnclosure affine_image(const Rational& a, const Rational& b, const ComplexEnclosure& z);

ComplexInterval eval_interval(const RatPoly& p, const ComplexInterval& z);
ComplexEnclosure eval_enclosure(const RatPoly& p, const ComplexEnclosure& z, long bits);
// |P(z)| as an interval (exact zero gives [0,0]).
Interval abs_eval(const RatPoly& p, const ComplexEnclosure& z, long bits);

struct PointSetMetrics {
    Interval delta, Delta, c;
    std::optional<Rational> delta_exact, Delta_exact, c_exact;
};

class EvalPointSet {
public:
    EvalPointSet() = default;
    explicit EvalPointSet(std::vector<ComplexEnclosure> pts) : pts_(std::move(pts)) {}
    static EvalPointSet exact(const std::vector<Rational>& reals);

    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const ComplexEnclosure& operator[](std::size_t i) const { return pts_[i]; }
    const std::vector<ComplexEnclosure>& points() const { return pts_; }
    bool all_exact() const;
    EvalPointSet prefix(std::size_t k) const;

private:
    std::vector<ComplexEnclosure> pts_;
};

PointSetMetrics point_set_metrics(const EvalPointSet& e, long bits);
// True when two points coincide exactly or Δ_E stays unresolved from 0 up to the cap.
bool delta_vanishes(const EvalPointSet& e, const Precision& prec);

// ---- verifiers -----------------------------------------------------------

Verdict check_gauss_bounds(const std::vector<RatPoly>& factors, const Precision& prec = Precision::defaults());

// ---- text formats --------------------------------------------------------

RatPoly parse_poly(const std::string& line);
std::string format_poly(const RatPoly& p);          // text format, low to high
std::string pretty_poly(const RatPoly& p);          // human readable, e.g. "2*T^2 - 1"
EvalPointSet parse_points(const std::string& text);  // point-file format
std::string digest_of(const RatPoly& p);

}  // namespace gelfond
