#include "gelfond/resultants.hpp"

#include <algorithm>
#include <set>

namespace gelfond {

namespace {

template <class S>
Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> sylvester_generic(const std::vector<S>& a, const std::vector<S>& b) {
    const std::size_t da = a.size() - 1, db = b.size() - 1, m = da + db;
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> s(m, m);
    for (std::size_t i = 0; i < db; ++i)
        for (std::size_t c = 0; c <= da; ++c) s(i, i + c) = a[da - c];
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t c = 0; c <= db; ++c) s(db + i, i + c) = b[db - c];
    return s;
}

void require_distinct_points(const EvalPointSet& E, const Precision& prec, const char* who) {
    if (E.empty()) throw PreconditionError(std::string(who) + ": point set must be nonempty");
    if (E.size() > 1 && delta_vanishes(E, prec)) throw PreconditionError(std::string(who) + ": Delta_E is zero");
}

// Derivatives P^{[j]} for j < t, with the normalizer in log form.
struct DerivTable {
    std::vector<RatPoly> d;
    Rational normalizer;
};

DerivTable derivs(const RatPoly& p, unsigned t, const Rational& normalizer) {
    DerivTable tab{{}, normalizer};
    for (unsigned j = 0; j < t; ++j) tab.d.push_back(divided_derivative(p, j));
    return tab;
}

// log max over tables and j of |P^{[j]}(ξ)| / normalizer.
Interval log_max_ratio(const std::vector<DerivTable>& tabs, const ComplexEnclosure& xi, long bits) {
    Interval best = Interval::neg_inf(bits);
    for (const auto& tab : tabs) {
        Interval ln = log_q(tab.normalizer, bits);
        for (const auto& d : tab.d) best = max(best, log(abs_eval(d, xi, bits)) - ln);
    }
    return best;
}

Interval log_factorial(unsigned long k, long bits) { return log_q(Rational(factorial(k)), bits); }

nlohmann::json points_json(const EvalPointSet& E) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& p : E.points()) a.push_back(p.label());
    return a;
}

constexpr unsigned kMaxN = 64;

void require_n(unsigned n, const char* who) {
    if (n > kMaxN) throw PreconditionError(std::string(who) + ": n above 64");
}

void stamp(Verdict& v) { v.inputs_digest = sha256_hex(v.params.dump()); }

}  // namespace

RatMatrix sylvester_matrix(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) throw PreconditionError("sylvester_matrix: polynomials must be nonzero");
    return sylvester_generic<Rational>(a.coeffs(), b.coeffs());
}

Rational sylvester_resultant(const RatPoly& a, const RatPoly& b) { return det_q(sylvester_matrix(a, b)); }

Rational vandermonde_delta(const std::vector<Rational>& points) {
    Rational d = 1;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) d *= points[j] - points[i];
    return d;
}

StructuredEvalMatrix build_structured_matrix(const RatPoly& q, const std::vector<Rational>& points, unsigned t,
                                             unsigned m, const std::vector<RatPoly>& polys) {
    const unsigned s = static_cast<unsigned>(points.size());
    if (s == 0 || t == 0) throw PreconditionError("build_structured_matrix: need s, t >= 1");
    if (std::set<Rational>(points.begin(), points.end()).size() != s)
        throw PreconditionError("build_structured_matrix: duplicate points");
    if (static_cast<unsigned long>(s) * t > m) throw PreconditionError("build_structured_matrix: st > m");
    if (polys.size() != m) throw PreconditionError("build_structured_matrix: need exactly m polynomials");
    for (const auto& p : polys)
        if (p.degree_or_neg() > static_cast<int>(m) - 1)
            throw PreconditionError("build_structured_matrix: polynomial of degree > m - 1");
    StructuredEvalMatrix M;
    M.m = m;
    M.s = s;
    M.t = t;
    M.Q = q;
    M.points = points;
    M.polys = polys;
    M.phi = RatMatrix(m, m);
    M.psi = RatMatrix(m, m);
    for (unsigned k = 0; k < m; ++k) {
        const RatPoly& p = polys[k];
        RatPoly qp = q * p;
        for (unsigned c = 0; c < m; ++c) M.psi(k, c) = p.coeff(c);
        for (unsigned j = 0; j < t; ++j) {
            RatPoly d = divided_derivative(qp, j);
            for (unsigned i = 0; i < s; ++i) M.phi(k, i + j * s) = eval(d, points[i]);
        }
        for (unsigned c = s * t; c < m; ++c) M.phi(k, c) = p.coeff(c);
    }
    return M;
}

std::vector<RatPoly> lemma_det_basis(const std::vector<Rational>& points, unsigned t, unsigned m) {
    const unsigned s = static_cast<unsigned>(points.size());
    RatPoly e = poly_from_roots(points);
    std::vector<RatPoly> out;
    for (unsigned j = 0; j < t; ++j)
        for (unsigned i = 0; i < s; ++i) {
            RatPoly p = e.pow(j);
            for (unsigned h = 0; h < i; ++h) p = p * linear(-points[h], 1);
            out.push_back(p);
        }
    for (unsigned k = s * t; k < m; ++k) out.push_back(monomial_t(k));
    return out;
}

Verdict check_det_identity(const StructuredEvalMatrix& M) {
    Rational dphi = det_q(M.phi), dpsi = det_q(M.psi);
    Rational qprod = 1;
    for (const auto& x : M.points) qprod *= eval(M.Q, x);
    Rational rhs = pow_q(vandermonde_delta(M.points), long(M.t) * M.t) * pow_q(qprod, M.t) * dpsi;
    int sign = dphi == -rhs && rhs != 0 ? -1 : 1;
    Verdict v("lemmaDet");
    v.params = {{"m", M.m}, {"s", M.s}, {"t", M.t}, {"Q", format_poly(M.Q)}, {"sign", sign}};
    std::vector<std::string> pts;
    for (const auto& x : M.points) pts.push_back(to_string(x));
    v.params["points"] = pts;
    v.inputs_digest = sha256_hex(v.params.dump() + dump_matrix(M.phi) + dump_matrix(M.psi));
    Check lo = exact_check("det phi <= sign Delta^(t^2) prod Q^t det psi", dphi, sign * rhs);
    Check hi = exact_check("sign Delta^(t^2) prod Q^t det psi <= det phi", sign * rhs, dphi);
    lo.note = hi.note = "equality with sign " + std::to_string(sign);
    v.add(lo).add(hi);
    return v;
}

StructuredEvalMatrix resultant_structure(const RatPoly& a, const RatPoly& b, const RatPoly& q,
                                         const std::vector<Rational>& points, unsigned t) {
    if (a.is_zero() || b.is_zero()) throw PreconditionError("resultant_structure: A and B must be nonzero");
    const unsigned da = static_cast<unsigned>(a.degree()), db = static_cast<unsigned>(b.degree());
    std::vector<RatPoly> polys;
    for (unsigned l = 0; l < db; ++l) polys.push_back(a.shifted(l));
    for (unsigned l = 0; l < da; ++l) polys.push_back(b.shifted(l));
    return build_structured_matrix(q, points, t, da + db, polys);
}

Rational resultant_via_structure(const RatPoly& a, const RatPoly& b, const RatPoly& q,
                                 const std::vector<Rational>& points, unsigned t) {
    StructuredEvalMatrix M = resultant_structure(a, b, q, points, t);
    Rational d = det_q(M.psi);
    // ψ lists coefficients from the constant term up; reversing rows within
    // each block and all columns turns it into the Sylvester matrix.
    return (static_cast<unsigned long>(a.degree()) * b.degree()) % 2 ? Rational(-d) : d;
}

Verdict check_tilde_bound(const RatPoly& f, const ComplexEnclosure& z, unsigned ell, const ComplexEnclosure& xi,
                          unsigned t, unsigned n, const Precision& prec) {
    require_n(n, "check_tilde_bound");
    if (f.is_zero()) throw PreconditionError("check_tilde_bound: F must be nonzero");
    if (static_cast<unsigned>(f.degree()) > n) throw PreconditionError("check_tilde_bound: deg F > n");
    if (t == 0) throw PreconditionError("check_tilde_bound: t must be positive");
    const bool z0 = z.is_exact() && z.exact_value().is_zero();
    const unsigned dtilde = static_cast<unsigned>(f.degree()) + ell;
    Verdict v("lemmaTF");
    v.params = {{"F", format_poly(f)}, {"z", z.label()}, {"l", ell}, {"xi", xi.label()}, {"t", t}, {"n", n}};
    stamp(v);

    if (z0 && xi.is_exact() && xi.exact_value().is_real()) {
        Rational x = xi.exact_value().re;
        RatPoly ft = f.shifted(ell);
        Rational lhs = 0, rhs = 0;
        for (unsigned j = 0; j < t; ++j) {
            lhs = std::max(lhs, Rational(abs(eval(divided_derivative(ft, j), x))));
            rhs = std::max(rhs, Rational(abs(eval(divided_derivative(f, j), x))));
        }
        Rational nf = norm(f);
        v.add(exact_check("tilde ratio <= (2+|xi|)^l F ratio", lhs / nf, pow_q(2 + abs(x), ell) * rhs / nf));
        return v;
    }

    std::vector<RatPoly> fd;
    for (unsigned j = 0; j < t; ++j) fd.push_back(divided_derivative(f, j));
    v.add(certify(
        z0 ? "tilde ratio <= (2+|xi|)^l F ratio" : "tilde ratio <= e^deg (2+|xi|)^l F ratio",
        [&](long bits) {
            // Coefficients of (T - z)^l F as complex intervals.
            ComplexInterval zi = z.at(bits);
            ComplexInterval mz(-zi.re, -zi.im);
            std::vector<ComplexInterval> c{ComplexInterval::from_q(1, 0, bits)};
            for (unsigned r = 0; r < ell; ++r) {
                std::vector<ComplexInterval> next(c.size() + 1, ComplexInterval::from_q(0, 0, bits));
                for (std::size_t k = 0; k < c.size(); ++k) {
                    next[k + 1] = next[k + 1] + c[k];
                    next[k] = next[k] + c[k] * mz;
                }
                c = std::move(next);
            }
            std::vector<ComplexInterval> ft(c.size() + f.size() - 1, ComplexInterval::from_q(0, 0, bits));
            for (std::size_t k = 0; k < c.size(); ++k)
                for (std::size_t i = 0; i < f.size(); ++i)
                    ft[k + i] = ft[k + i] + c[k] * ComplexInterval::from_q(f[i], 0, bits);
            Interval nrm = Interval::from_si(0, bits);
            for (const auto& x : ft) nrm = max(nrm, abs(x));
            ComplexInterval x = xi.at(bits);
            Interval lhs = Interval::from_si(0, bits);
            for (unsigned j = 0; j < t; ++j) {
                ComplexInterval acc = ComplexInterval::from_q(0, 0, bits);
                for (std::size_t k = ft.size(); k-- > j;)
                    acc = acc * x + ft[k] * ComplexInterval::from_q(Rational(binomial(k, j)), 0, bits);
                lhs = max(lhs, abs(acc));
            }
            lhs = lhs / nrm;
            Interval rhs = Interval::from_si(0, bits);
            for (const auto& d : fd) rhs = max(rhs, abs(eval_interval(d, x)));
            rhs = rhs / Interval::from_q(norm(f), bits);
            rhs = rhs * pow_ui(Interval::from_si(2, bits) + abs(x), ell);
            if (!z0) rhs = rhs * exp_q(Rational(dtilde), bits);
            return IntervalPair(lhs, rhs);
        },
        prec));
    return v;
}

Verdict verify_resAB(const RatPoly& f, const RatPoly& g, const EvalPointSet& E, unsigned t, unsigned n,
                     bool extended, const Precision& prec) {
    require_n(n, "verify_resAB");
    if (f.is_zero() || g.is_zero()) throw PreconditionError("verify_resAB: F and G must be nonzero");
    if (f.degree() > static_cast<int>(n) || g.degree() > static_cast<int>(n))
        throw PreconditionError("verify_resAB: degrees exceed n");
    require_distinct_points(E, prec, "verify_resAB");
    const unsigned s = static_cast<unsigned>(E.size());
    RatPoly q = gcd_q(f, g), a, b, r;
    divmod(f, q, a, r);
    divmod(g, q, b, r);
    const unsigned da = static_cast<unsigned>(a.degree()), db = static_cast<unsigned>(b.degree()), m = da + db;
    const unsigned long st = static_cast<unsigned long>(s) * t;
    if (!extended && m < st) throw PreconditionError("verify_resAB: needs deg A + deg B >= st");
    if (extended && n < st) throw PreconditionError("verify_resAB: needs n >= st");
    Rational res = sylvester_resultant(a, b);
    std::vector<DerivTable> tabs{derivs(f, t, norm(f)), derivs(g, t, norm(g))};
    Verdict v(extended ? "lemmaExt" : "lemmaResAB");
    v.params = {{"F", format_poly(f)}, {"G", format_poly(g)}, {"E", points_json(E)}, {"t", t}, {"n", n},
                {"Res", to_string(res)}};
    stamp(v);
    v.add(certify(
        "|Res(A,B)| prod (|Q|/||Q||)^t <= c ||A||^b ||B||^a prod max^t",
        [&](long bits) {
            PointSetMetrics pm = point_set_metrics(E, bits);
            Interval lhs = log_q(abs(res), bits), rhs = Interval::from_si(0, bits);
            Interval lq = log_q(norm(q), bits);
            for (const auto& xi : E.points()) {
                lhs = lhs + scale(log(abs_eval(q, xi, bits)) - lq, Rational(t));
                rhs = rhs + scale(log_max_ratio(tabs, xi, bits), Rational(t));
            }
            Interval e2c = Interval::from_si(1, bits) + log(Interval::from_si(2, bits) + pm.c);
            Interval lc = extended ? log_factorial(2 * n, bits) + scale(e2c, Rational(4 * long(n) * long(st)))
                                   : log_factorial(m, bits) + scale(e2c, Rational(long(n) * long(st)));
            lc = lc - scale(log(pm.Delta), Rational(long(t) * t));
            rhs = rhs + lc + scale(log_q(norm(a), bits), Rational(db)) + scale(log_q(norm(b), bits), Rational(da));
            return IntervalPair(lhs, rhs);
        },
        prec, Rel::LE, "log"));
    return v;
}

Verdict verify_propFG(const RatPoly& f, const RatPoly& g, const EvalPointSet& E, unsigned t, unsigned fdeg,
                      unsigned gdeg, unsigned n, const Precision& prec) {
    require_n(n, "verify_propFG");
    if (f.is_zero() || g.is_zero()) throw PreconditionError("verify_propFG: F and G must be nonzero");
    require_distinct_points(E, prec, "verify_propFG");
    const unsigned s = static_cast<unsigned>(E.size());
    if (t == 0 || static_cast<unsigned long>(s) * t > n) throw PreconditionError("verify_propFG: needs n >= st");
    if (f.degree() > static_cast<int>(n) || g.degree() > static_cast<int>(n))
        throw PreconditionError("verify_propFG: degrees exceed n");
    RatPoly q = gcd_q(f, g), a, b, r;
    divmod(f, q, a, r);
    divmod(g, q, b, r);
    if (a.degree() > static_cast<int>(fdeg) || fdeg > n || b.degree() > static_cast<int>(gdeg) || gdeg > n)
        throw PreconditionError("verify_propFG: needs deg(F/Q) <= f <= n and deg(G/Q) <= g <= n");
    std::vector<DerivTable> tabs{derivs(f, t, norm(f)), derivs(g, t, norm(g))};
    Verdict v("propFG");
    v.params = {{"F", format_poly(f)}, {"G", format_poly(g)}, {"E", points_json(E)}, {"t", t},
                {"f", fdeg},           {"g", gdeg},           {"n", n},            {"Q", format_poly(q)}};
    stamp(v);
    v.add(certify(
        "H(Q)^(f+g) prod (|Q|/||Q||)^t <= c1 H(F)^g H(G)^f prod max^t",
        [&](long bits) {
            PointSetMetrics pm = point_set_metrics(E, bits);
            Interval lhs = scale(log_q(height(q), bits), Rational(fdeg + gdeg));
            Interval rhs = scale(log_q(height(f), bits), Rational(gdeg)) + scale(log_q(height(g), bits), Rational(fdeg));
            Interval lq = log_q(norm(q), bits);
            for (const auto& xi : E.points()) {
                lhs = lhs + scale(log(abs_eval(q, xi, bits)) - lq, Rational(t));
                rhs = rhs + scale(log_max_ratio(tabs, xi, bits), Rational(t));
            }
            Interval lc1 = Interval::from_si(7 * long(n) * n, bits) +
                           scale(log(Interval::from_si(2, bits) + pm.c), Rational(4 * long(n) * s * t)) -
                           scale(log(pm.Delta), Rational(long(t) * t));
            return IntervalPair(lhs, rhs + lc1);
        },
        prec, Rel::LE, "log"));
    return v;
}

Verdict verify_corPP(const std::vector<RatPoly>& ps, const EvalPointSet& E, unsigned t, unsigned n,
                     const Precision& prec) {
    require_n(n, "verify_corPP");
    if (ps.size() < 2) throw PreconditionError("verify_corPP: needs r >= 2 polynomials");
    require_distinct_points(E, prec, "verify_corPP");
    const unsigned s = static_cast<unsigned>(E.size());
    if (t == 0 || static_cast<unsigned long>(s) * t > n) throw PreconditionError("verify_corPP: needs n >= st");
    Rational hmax = 1;
    std::vector<DerivTable> tabs;
    nlohmann::json pj = nlohmann::json::array();
    for (const auto& p : ps) {
        if (p.is_zero() || p.degree() > static_cast<int>(n))
            throw PreconditionError("verify_corPP: polynomials must be nonzero of degree <= n");
        hmax = std::max(hmax, height(p));
        tabs.push_back(derivs(p, t, content(p)));
        pj.push_back(format_poly(p));
    }
    RatPoly q = gcd_q(ps);
    Verdict v("corPP");
    v.params = {{"P", pj}, {"E", points_json(E)}, {"t", t}, {"n", n}, {"Q", format_poly(q)}};
    stamp(v);
    v.add(certify(
        "prod (|Q|/cont Q)^t <= e^(3n^2) c1 max H^(2n) prod max^t",
        [&](long bits) {
            PointSetMetrics pm = point_set_metrics(E, bits);
            Interval lhs = Interval::from_si(0, bits), rhs = scale(log_q(hmax, bits), Rational(2 * long(n)));
            Interval lcq = log_q(content(q), bits);
            for (const auto& xi : E.points()) {
                lhs = lhs + scale(log(abs_eval(q, xi, bits)) - lcq, Rational(t));
                rhs = rhs + scale(log_max_ratio(tabs, xi, bits), Rational(t));
            }
            Interval lc = Interval::from_si(10 * long(n) * n, bits) +
                          scale(log(Interval::from_si(2, bits) + pm.c), Rational(4 * long(n) * s * t)) -
                          scale(log(pm.Delta), Rational(long(t) * t));
            return IntervalPair(lhs, rhs + lc);
        },
        prec, Rel::LE, "log"));
    return v;
}

BivariateResultant bivariate_resultant(const RatPoly& p, unsigned n) {
    if (p.is_zero()) throw PreconditionError("bivariate_resultant: P must be nonzero");
    if (p.degree() > static_cast<int>(n)) throw PreconditionError("bivariate_resultant: deg P > n");
    BivariateResultant out;
    out.source = p;
    out.n = n;
    RatPoly pt = primitive_part(p).shifted(n - static_cast<unsigned>(p.degree()));
    out.log.push_back("P~ = " + format_poly(pt));
    IntPoly ip = to_int_poly(pt);
    // Coefficient of T^k in P~(T+U) is P~^{[k]}(U).
    std::vector<IntPoly> a, b;
    for (std::size_t k = 0; k < ip.size(); ++k) {
        a.emplace_back(ip[k]);
        b.push_back(to_int_poly(divided_derivative(pt, static_cast<unsigned>(k))));
    }
    if (n == 0) {
        out.R = IntPoly(Integer(1));
        out.log.push_back("n = 0: empty Sylvester matrix");
        return out;
    }
    PolyMatrix s = sylvester_generic<IntPoly>(a, b);
    out.log.push_back("Sylvester matrix in T over Z[U], size " + std::to_string(2 * n));
    out.R = det_bareiss(std::move(s));
    out.log.push_back("Bareiss determinant, deg R = " + std::to_string(out.R.degree_or_neg()));
    return out;
}

EFResult build_EF_resultant(const RatPoly& p, const EvalPointSet& E, const EvalPointSet& F, unsigned n,
                            const Precision& prec) {
    require_n(n, "build_EF_resultant");
    if (p.is_zero() || !is_integer_poly(p)) throw PreconditionError("build_EF_resultant: P must be a nonzero integer polynomial");
    if (p.degree() > static_cast<int>(n)) throw PreconditionError("build_EF_resultant: deg P > n");
    const unsigned s = static_cast<unsigned>(F.size());
    if (s == 0 || s > 2 * n) throw PreconditionError("build_EF_resultant: needs 1 <= |F| <= 2n");
    bool has_zero = std::any_of(E.points().begin(), E.points().end(),
                                [](const ComplexEnclosure& z) { return z.is_exact() && z.exact_value().is_zero(); });
    if (!has_zero) throw PreconditionError("build_EF_resultant: 0 must belong to E");
    require_distinct_points(F, prec, "build_EF_resultant");

    EFResult out{bivariate_resultant(p, n), Verdict("propEF")};
    Verdict& v = out.verdict;
    v.params = {{"P", format_poly(p)}, {"E", points_json(E)}, {"F", points_json(F)}, {"n", n},
                {"R", format_poly(out.R.as_rat())}};
    stamp(v);
    RatPoly R = out.R.as_rat();
    v.add(exact_check("(i) deg R <= n^2", R.degree(), long(n) * n));
    Rational hb = pow_q(6, long(n) * n) * pow_q(height(p), 2 * long(n));
    v.add(exact_check("(ii) H(R) <= 6^(n^2) H(P)^(2n)", height(R), hb));

    std::vector<RatPoly> rd;
    for (unsigned k = 0; k <= s / 2; ++k) rd.push_back(divided_derivative(R, k));
    std::vector<ComplexEnclosure> sums;
    for (const auto& xi : E.points())
        for (const auto& eta : F.points()) sums.push_back(xi + eta);
    v.add(certify(
        "(iii) max |R^[k](xi)| <= c H(P)^(2n) min(1, delta_P)^(s/2)",
        [&](long bits) {
            Interval lhs = Interval::neg_inf(bits);
            for (const auto& xi : E.points())
                for (const auto& d : rd) lhs = max(lhs, log(abs_eval(d, xi, bits)));
            Interval ldelta = Interval::neg_inf(bits);
            for (const auto& z : sums) ldelta = max(ldelta, log(abs_eval(p, z, bits)));
            Interval cE = point_set_metrics(E, bits).c;
            PointSetMetrics pf = point_set_metrics(F, bits);
            Interval one = Interval::from_si(1, bits);
            Interval inner = scale(log_q(8, bits), Rational(n)) + scale(log(one + cE), Rational(n)) +
                             scale(log(one + pf.c), Rational(s));
            Interval rhs = scale(inner, Rational(3 * long(n))) - log(pf.Delta) +
                           scale(log_q(height(p), bits), Rational(2 * long(n))) +
                           scale(min(Interval::from_si(0, bits), ldelta), Rational(long(s), 2));
            return IntervalPair(lhs, rhs);
        },
        prec, Rel::LE, "log"));
    return out;
}

}  // namespace gelfond
