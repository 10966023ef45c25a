#include "gelfond/transforms.hpp"

#include "gelfond/factor.hpp"

#include <sstream>

namespace gelfond {

AffineMap::AffineMap(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
    if (a_ <= 0) throw DomainError("affine map needs a > 0, got a = " + to_string(a_));
}

std::string AffineMap::str() const { return "lambda_{" + to_string(a_) + "," + to_string(b_) + "}"; }

RatPoly apply_map(const AffineMap& m, const RatPoly& p) {
    if (m.is_identity() || p.is_constant()) return p;
    RatPoly lin = linear(m.b(), m.a());
    RatPoly acc;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * lin + RatPoly(p[i]);
    return acc;
}

Rational map_height(const AffineMap& m) { return height_point({Rational(1), m.a(), m.b()}); }

AffineMap compose(const AffineMap& l, const AffineMap& r) { return {l.a() * r.a(), l.a() * r.b() + l.b()}; }

AffineMap invert(const AffineMap& m) { return {1 / m.a(), -m.b() / m.a()}; }

Rational act(const AffineMap& m, const Rational& x) { return m.a() * x + m.b(); }

GaussRat act(const AffineMap& m, const GaussRat& x) { return m.a() * x + GaussRat(m.b()); }

ComplexEnclosure act(const AffineMap& m, const ComplexEnclosure& z) { return affine_image(m.a(), m.b(), z); }

Verdict check_lemmaH1(const AffineMap& m, const RatPoly& p, unsigned n) {
    if (p.is_zero()) throw PreconditionError("check_lemmaH1: P must be nonzero");
    if (static_cast<unsigned>(p.degree()) > n) throw PreconditionError("check_lemmaH1: n < deg P");
    RatPoly lp = apply_map(m, p);
    Verdict v("lemmaH1");
    v.params = {{"map", format_map(m)}, {"P", format_poly(p)}, {"n", n}};
    v.inputs_digest = sha256_hex(format_map(m) + "|" + format_poly(p) + "|" + std::to_string(n));
    v.add(exact_check("deg(lambda P) = deg(P)", lp.degree(), p.degree()));
    v.add(exact_check("deg(P) <= n", p.degree(), long(n)));
    Rational h = map_height(m);
    Rational up = pow_q(3 * h, long(n)), hup = pow_q(h, long(n));
    Rational hr = height(lp) / height(p), cr = content(lp) / content(p);
    v.add(exact_check("(3H)^-n <= H(lambda P)/H(P)", 1 / up, hr));
    v.add(exact_check("H(lambda P)/H(P) <= (3H)^n", hr, up));
    v.add(exact_check("H^-n <= cont(lambda P)/cont(P)", 1 / hup, cr));
    v.add(exact_check("cont(lambda P)/cont(P) <= H^n", cr, hup));
    return v;
}

Verdict check_compose_height(const AffineMap& l, const AffineMap& r) {
    Verdict v("compose_height");
    v.params = {{"l", format_map(l)}, {"r", format_map(r)}};
    v.inputs_digest = sha256_hex(format_map(l) + "|" + format_map(r));
    v.add(exact_check("H(l r) <= 2 H(l) H(r)", map_height(compose(l, r)), 2 * map_height(l) * map_height(r)));
    return v;
}

bool translate_associate_test(const AffineMap& m, const RatPoly& r) {
    if (!is_irreducible(r)) throw PreconditionError("translate_associate_test: R must be irreducible");
    return associate(apply_map(m, r), r);
}

bool translate_associate_predicted(const AffineMap& m, const RatPoly& r) {
    if (m.is_identity()) return true;
    return m.a() != 1 && associate(r, linear(m.b(), m.a() - 1));
}

AffineMap parse_map(const std::string& line) {
    std::istringstream in(line);
    std::string a, b, extra;
    if (!(in >> a >> b) || (in >> extra)) throw ParseError("map line must be 'a b': " + line);
    return {parse_rational(a), parse_rational(b)};
}

std::string format_map(const AffineMap& m) { return to_string(m.a()) + " " + to_string(m.b()); }

}  // namespace gelfond
