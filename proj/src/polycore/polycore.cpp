#include "gelfond/polycore.hpp"

#include <algorithm>
#include <sstream>

namespace gelfond {

Rational norm(const RatPoly& p) { return norm_max(p.coeffs()); }

Rational content(const RatPoly& p) {
    if (p.is_zero()) throw DomainError("content of the zero polynomial");
    return content(p.coeffs());
}

Rational height(const RatPoly& p) { return norm(p) / content(p); }

PolyMetrics poly_metrics(const RatPoly& p) {
    if (p.is_zero()) throw DomainError("metrics of the zero polynomial");
    Rational n = norm(p), c = content(p);
    return {n, c, n / c};
}

RatPoly primitive_part(const RatPoly& p) {
    Rational c = content(p);
    if (p.lead() < 0) c = -c;
    return p.scaled(1 / c);
}

bool is_integer_poly(const RatPoly& p) {
    return std::all_of(p.coeffs().begin(), p.coeffs().end(), [](const Rational& q) { return q.get_den() == 1; });
}

IntPoly to_int_poly(const RatPoly& p) {
    std::vector<Integer> v;
    v.reserve(p.size());
    for (const auto& q : p.coeffs()) {
        if (q.get_den() != 1) throw DomainError("polynomial has non-integer coefficients");
        v.push_back(q.get_num());
    }
    return IntPoly(std::move(v));
}

RatPoly to_rat_poly(const IntPoly& p) {
    std::vector<Rational> v;
    v.reserve(p.size());
    for (const auto& z : p.coeffs()) v.emplace_back(z);
    return RatPoly(std::move(v));
}

RatPoly divided_derivative(const RatPoly& p, unsigned j) {
    if (j == 0) return p;
    if (p.degree_or_neg() < static_cast<int>(j)) return RatPoly();
    std::vector<Rational> v(p.size() - j);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = p[k + j] * Rational(binomial(k + j, j));
    return RatPoly(std::move(v));
}

RatPoly poly_from_roots(const std::vector<Rational>& roots) {
    RatPoly r(Rational(1));
    for (const auto& x : roots) r = r * linear(-x, 1);
    return r;
}

RatPoly linear(const Rational& c0, const Rational& c1) { return RatPoly({c0, c1}); }

RatPoly monomial_t(unsigned k) { return RatPoly::monomial(Rational(1), k); }

void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
    if (b.is_zero()) throw DomainError("division by the zero polynomial");
    if (a.degree_or_neg() < b.degree()) {
        q = RatPoly();
        r = a;
        return;
    }
    std::vector<Rational> rem(a.coeffs());
    std::size_t db = static_cast<std::size_t>(b.degree());
    std::vector<Rational> quo(rem.size() - db);
    Rational inv = 1 / b.lead();
    for (std::size_t k = quo.size(); k-- > 0;) {
        Rational c = rem[k + db] * inv;
        quo[k] = c;
        if (c == 0) continue;
        for (std::size_t i = 0; i <= db; ++i) rem[k + i] -= c * b[i];
    }
    rem.resize(db);
    q = RatPoly(std::move(quo));
    r = RatPoly(std::move(rem));
}

bool divides(const RatPoly& d, const RatPoly& p) {
    if (p.is_zero()) return true;
    if (d.is_zero()) return false;
    RatPoly q, r;
    divmod(p, d, q, r);
    return r.is_zero();
}

bool associate(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return primitive_part(a) == primitive_part(b);
}

Rational eval(const RatPoly& p, const Rational& x) {
    return p.horner(x, [](const Rational& c) { return c; });
}

GaussRat eval(const RatPoly& p, const GaussRat& x) {
    return p.horner(x, [](const Rational& c) { return GaussRat(c); });
}

// ---- ComplexEnclosure ----------------------------------------------------

ComplexEnclosure::ComplexEnclosure() : exact_(GaussRat()), real_(true) {}

ComplexEnclosure ComplexEnclosure::exact(const Rational& re, const Rational& im) { return exact(GaussRat(re, im)); }

ComplexEnclosure ComplexEnclosure::exact(const GaussRat& z) {
    ComplexEnclosure e;
    e.exact_ = z;
    e.real_ = z.is_real();
    return e;
}

ComplexEnclosure ComplexEnclosure::from_decimal(const std::string& re, const std::string& im, long bits) {
    Rational cr = parse_rational(re), ci = parse_rational(im);
    bool im_exact_zero = ci == 0;
    auto f = [cr, ci, bits, im_exact_zero](long want) {
        long p = std::max(want, bits + 32);
        Interval rad(p);
        mpfr_set_ui_2exp(rad.lo().get(), 1, -bits, MPFR_RNDN);
        mpfr_neg(rad.lo().get(), rad.lo().get(), MPFR_RNDN);
        mpfr_set_ui_2exp(rad.hi().get(), 1, -bits, MPFR_RNDN);
        Interval r = Interval::from_q(cr, p) + rad;
        Interval i = im_exact_zero ? Interval(p) : Interval::from_q(ci, p) + rad;
        return ComplexInterval(std::move(r), std::move(i));
    };
    ComplexEnclosure e = refinable(f, re + (im_exact_zero ? "" : " " + im) + " #bits=" + std::to_string(bits));
    e.real_ = im_exact_zero;
    return e;
}

ComplexEnclosure ComplexEnclosure::sqrt_of(const Rational& q) {
    if (q < 0) throw DomainError("sqrt_of expects a nonnegative rational");
    auto f = [q](long bits) {
        Interval v = Interval::from_q(q, bits + 8);
        Interval r(bits);
        mpfr_sqrt(r.lo().get(), v.lo().get(), MPFR_RNDD);
        mpfr_sqrt(r.hi().get(), v.hi().get(), MPFR_RNDU);
        return ComplexInterval(std::move(r), Interval(bits));
    };
    ComplexEnclosure e = refinable(f, "sqrt(" + q.get_str() + ")");
    e.real_ = true;
    return e;
}

ComplexEnclosure ComplexEnclosure::fixed(const ComplexInterval& z) {
    ComplexEnclosure e = refinable([z](long) { return z; }, "[" + z.re.lo_str(12) + "," + z.re.hi_str(12) + "]");
    e.real_ = z.im.is_point() && mpfr_zero_p(z.im.lo().get());
    return e;
}

ComplexEnclosure ComplexEnclosure::refinable(std::function<ComplexInterval(long)> f, std::string label) {
    ComplexEnclosure e;
    e.exact_.reset();
    e.refine_ = std::make_shared<const std::function<ComplexInterval(long)>>(std::move(f));
    e.label_ = std::move(label);
    e.real_ = false;
    return e;
}

bool ComplexEnclosure::is_real() const { return real_; }

ComplexInterval ComplexEnclosure::at(long bits) const {
    if (exact_) return ComplexInterval::from_q(exact_->re, exact_->im, bits);
    return (*refine_)(bits);
}

std::string ComplexEnclosure::label() const {
    if (exact_) return exact_->im == 0 ? exact_->re.get_str() : exact_->re.get_str() + " " + exact_->im.get_str();
    return label_;
}

ComplexEnclosure operator+(const ComplexEnclosure& a, const ComplexEnclosure& b) {
    if (a.is_exact() && b.is_exact()) return ComplexEnclosure::exact(a.exact_value() + b.exact_value());
    ComplexEnclosure e = ComplexEnclosure::refinable([a, b](long bits) { return a.at(bits) + b.at(bits); },
                                                     "(" + a.label() + ")+(" + b.label() + ")");
    return e;
}

ComplexEnclosure operator*(const Rational& k, const ComplexEnclosure& z) { return affine_image(k, 0, z); }

ComplexEnclosure affine_image(const Rational& a, const Rational& b, const ComplexEnclosure& z) {
    if (z.is_exact()) return ComplexEnclosure::exact(a * z.exact_value() + GaussRat(b));
    bool real = z.is_real();
    auto f = [a, b, z, real](long bits) {
        ComplexInterval w = z.at(bits);
        Interval ai = Interval::from_q(a, bits);
        ComplexInterval r(ai * w.re + Interval::from_q(b, bits), real ? Interval(bits) : ai * w.im);
        return r;
    };
    return ComplexEnclosure::refinable(f, a.get_str() + "*(" + z.label() + ")+" + b.get_str());
}

ComplexInterval eval_interval(const RatPoly& p, const ComplexInterval& z) {
    long bits = z.bits();
    return p.horner(z, [bits](const Rational& c) { return ComplexInterval::from_q(c, 0, bits); });
}

ComplexEnclosure eval_enclosure(const RatPoly& p, const ComplexEnclosure& z, long bits) {
    if (p.is_zero()) return ComplexEnclosure::exact(0);
    if (z.is_exact()) return ComplexEnclosure::exact(eval(p, z.exact_value()));
    return ComplexEnclosure::fixed(eval_interval(p, z.at(bits)));
}

namespace {

Interval abs_gauss(const GaussRat& v, long bits) {
    if (v.is_zero()) return Interval(bits);
    if (v.im == 0) return Interval::from_q(abs(v.re), bits);
    if (v.re == 0) return Interval::from_q(abs(v.im), bits);
    return sqrt(Interval::from_q(v.norm2(), bits + 8));
}

}  // namespace

Interval abs_eval(const RatPoly& p, const ComplexEnclosure& z, long bits) {
    if (p.is_zero()) return Interval(bits);
    if (z.is_exact()) return abs_gauss(eval(p, z.exact_value()), bits);
    return abs(eval_interval(p, z.at(bits)));
}

EvalPointSet EvalPointSet::exact(const std::vector<Rational>& reals) {
    std::vector<ComplexEnclosure> v;
    for (const auto& x : reals) v.push_back(ComplexEnclosure::exact(x));
    return EvalPointSet(std::move(v));
}

bool EvalPointSet::all_exact() const {
    return std::all_of(pts_.begin(), pts_.end(), [](const ComplexEnclosure& z) { return z.is_exact(); });
}

EvalPointSet EvalPointSet::prefix(std::size_t k) const {
    return EvalPointSet(std::vector<ComplexEnclosure>(pts_.begin(), pts_.begin() + std::min(k, pts_.size())));
}

PointSetMetrics point_set_metrics(const EvalPointSet& e, long bits) {
    if (e.empty()) throw DomainError("point_set_metrics of an empty set");
    PointSetMetrics m{Interval::from_si(1, bits), Interval::from_si(1, bits), Interval(bits), {}, {}, {}};
    bool exact_real = e.all_exact() &&
                      std::all_of(e.points().begin(), e.points().end(), [](const ComplexEnclosure& z) { return z.exact_value().is_real(); });
    for (std::size_t i = 0; i < e.size(); ++i) m.c = i ? max(m.c, abs_eval(monomial_t(1), e[i], bits)) : abs_eval(monomial_t(1), e[i], bits);
    if (exact_real) {
        Rational c = 0;
        for (const auto& z : e.points()) c = std::max(c, Rational(abs(z.exact_value().re)));
        m.c_exact = c;
    }
    if (e.size() == 1) {
        m.delta_exact = 1;
        m.Delta_exact = 1;
        return m;
    }
    bool first = true;
    Rational dq = 0, Dq = 1;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            Interval d(bits);
            if (e[i].is_exact() && e[j].is_exact()) {
                GaussRat g = e[j].exact_value() - e[i].exact_value();
                d = abs_gauss(g, bits);
                if (exact_real) {
                    Rational ad = abs(g.re);
                    dq = first ? ad : std::min(dq, ad);
                    Dq *= ad;
                }
            } else {
                d = abs(e[j].at(bits) - e[i].at(bits));
            }
            m.delta = first ? d : min(m.delta, d);
            m.Delta = first ? d : m.Delta * d;
            first = false;
        }
    if (exact_real) {
        m.delta_exact = dq;
        m.Delta_exact = Dq;
    }
    return m;
}

bool delta_vanishes(const EvalPointSet& e, const Precision& prec) {
    if (e.size() <= 1) return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j)
            if (e[i].is_exact() && e[j].is_exact() && e[i].exact_value() == e[j].exact_value()) return true;
    for (long bits = prec.start;; bits = std::min(bits * 2, prec.cap)) {
        if (point_set_metrics(e, bits).Delta.positive()) return false;
        if (bits >= prec.cap) return true;
    }
}

// ---- Gauss chains --------------------------------------------------------

Verdict check_gauss_bounds(const std::vector<RatPoly>& factors, const Precision& prec) {
    if (factors.empty()) throw DomainError("check_gauss_bounds needs at least one factor");
    RatPoly P(Rational(1));
    Rational prod_norm = 1, prod_height = 1;
    for (const auto& f : factors) {
        if (f.is_zero()) throw DomainError("zero factor in check_gauss_bounds");
        P = P * f;
        prod_norm *= norm(f);
        prod_height *= height(f);
    }
    Rational nP = norm(P), hP = height(P);
    long d = P.degree();
    Verdict v("gauss_bounds");
    v.params = {{"factors", factors.size()}, {"deg", d}};
    std::string digest;
    for (const auto& f : factors) digest += format_poly(f) + ";";
    v.inputs_digest = sha256_hex(digest);

    auto chain = [&](const std::string& name, const Rational& whole, const Rational& prod) {
        if (d == 0) {
            v.add(exact_check(name + ": e^-deg * whole <= product", whole, prod));
            v.add(exact_check(name + ": product <= e^deg * whole", prod, whole));
            return;
        }
        v.add(certify(
            name + ": e^-deg * whole <= product",
            [&](long bits) {
                return IntervalPair(Interval::from_q(whole, bits) * exp_q(-d, bits), Interval::from_q(prod, bits));
            },
            prec));
        v.add(certify(
            name + ": product <= e^deg * whole",
            [&](long bits) {
                return IntervalPair(Interval::from_q(prod, bits), Interval::from_q(whole, bits) * exp_q(d, bits));
            },
            prec));
    };
    chain("norm", nP, prod_norm);
    chain("height", hP, prod_height);
    return v;
}

// ---- text formats --------------------------------------------------------

RatPoly parse_poly(const std::string& line) {
    std::istringstream in(line);
    std::vector<Rational> c;
    std::string tok;
    while (in >> tok) c.push_back(parse_rational(tok));
    if (c.empty()) throw ParseError("empty polynomial line");
    return RatPoly(std::move(c));
}

std::string format_poly(const RatPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out += ' ';
        out += p[i].get_str();
    }
    return out;
}

std::string pretty_poly(const RatPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t k = p.size(); k-- > 0;) {
        const Rational& c = p[k];
        if (c == 0) continue;
        Rational a = abs(c);
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        bool unit = a == 1 && k > 0;
        if (!unit) out += a.get_den() == 1 ? a.get_str() : "(" + a.get_str() + ")";
        if (k > 0) {
            if (!unit) out += "*";
            out += k == 1 ? "T" : "T^" + std::to_string(k);
        }
    }
    return out;
}

EvalPointSet parse_points(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    long bits = -1;
    bool first = true;
    std::vector<ComplexEnclosure> pts;
    while (std::getline(in, line)) {
        auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        line = line.substr(start);
        if (first && line.rfind("#bits=", 0) == 0) {
            try {
                bits = std::stol(line.substr(6));
            } catch (...) {
                throw ParseError("bad precision directive: " + line);
            }
            if (bits < 8) throw ParseError("precision directive too small: " + line);
            first = false;
            continue;
        }
        first = false;
        if (line[0] == '#') continue;
        std::istringstream ls(line);
        std::string re, im = "0", extra;
        if (!(ls >> re)) continue;
        ls >> im;
        if (ls >> extra) throw ParseError("too many fields in point line: " + line);
        if (bits > 0)
            pts.push_back(ComplexEnclosure::from_decimal(re, im, bits));
        else
            pts.push_back(ComplexEnclosure::exact(parse_rational(re), parse_rational(im)));
    }
    return EvalPointSet(std::move(pts));
}

std::string digest_of(const RatPoly& p) { return sha256_hex(format_poly(p)); }

}  // namespace gelfond
