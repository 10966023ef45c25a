#include "gelfond/factorgcd.hpp"

#include <algorithm>

namespace gelfond {

namespace {

// lhs <= X^e, exact when X is rational and e an integer.
Check power_bound(std::string label, const Rational& lhs, const PosReal& X, const Rational& e, const Precision& prec) {
    if (X.is_rational() && e.get_den() == 1 && e.get_num().fits_slong_p())
        return exact_check(std::move(label), lhs, pow_q(X.q(), e.get_num().get_si()));
    return certify(
        std::move(label), [&](long bits) { return IntervalPair(log_q(lhs, bits), scale(X.log(bits), e)); }, prec,
        Rel::LE, "log");
}

// e^n <= X.
Check exp_n_bound(unsigned n, const PosReal& X, const Precision& prec) {
    if (auto q = X.exact_log()) return exact_check("e^n <= X (log)", Rational(n), *q);
    return certify(
        "e^n <= X (log)", [&](long bits) { return IntervalPair(Interval::from_si(long(n), bits), X.log(bits)); }, prec,
        Rel::LE, "log");
}

// log of (X^deg R · H(R)^n)^{-e}.
Interval lin_rhs(const RatPoly& r, unsigned n, const PosReal& X, const Rational& e, long bits) {
    Interval t = scale(X.log(bits), Rational(r.degree())) + scale(log_q(height(r), bits), Rational(n));
    return scale(t, -e);
}

nlohmann::json lin_params(const RatPoly& p, unsigned n, const PosReal& X, const Rational& c, const Rational& rho,
                          const EvalPointSet& pts) {
    return {{"P", format_poly(p)}, {"n", n},      {"X", X.str()},
            {"c", to_string(c)},   {"rho", to_string(rho)}, {"points", pts.size()}};
}

std::string lin_digest(const nlohmann::json& params) { return sha256_hex(params.dump()); }

}  // namespace

Interval log_value_product(const RatPoly& p, const EvalPointSet& pts, long bits) {
    Interval acc = Interval::from_si(0, bits);
    for (const auto& z : pts.points()) acc = acc + log(abs_eval(p, z, bits));
    return acc - scale(log_q(content(p), bits), Rational(long(pts.size())));
}

LinearizeResult linearize_a(const RatPoly& p, unsigned n, const PosReal& X, const Rational& c, const Rational& rho,
                            const EvalPointSet& pts, const Precision& prec) {
    if (p.is_zero()) throw PreconditionError("linearize_a: P must be nonzero");
    if (c <= 0 || rho <= 0) throw PreconditionError("linearize_a: c and rho must be positive");
    LinearizeResult res;
    res.hypothesis = Verdict("lemma21_hypothesis");
    res.hypothesis.params = lin_params(p, n, X, c, rho, pts);
    res.hypothesis.inputs_digest = lin_digest(res.hypothesis.params);
    res.hypothesis.add(exact_check("deg P <= rho n", p.degree(), rho * n));
    res.hypothesis.add(power_bound("H(P) <= X^rho", height(p), X, rho, prec));
    res.hypothesis.add(exp_n_bound(n, X, prec));
    res.hypothesis.add(certify(
        "value product < (X^deg P H(P)^n)^(-c/rho)",
        [&](long bits) { return IntervalPair(log_value_product(p, pts, bits), lin_rhs(p, n, X, c / rho, bits)); }, prec,
        Rel::LT, "log"));
    if (!res.hypothesis.holds())
        throw PreconditionError("linearize_a: hypothesis " + to_string(res.hypothesis.outcome()), res.hypothesis);

    res.verdict = Verdict("lemma21a");
    res.verdict.params = res.hypothesis.params;
    res.verdict.inputs_digest = res.hypothesis.inputs_digest;
    Factorization fz = factor_q(p);
    for (const auto& [r, mult] : fz.factors) {
        Check ch = certify(
            "value product of R < (X^deg R H(R)^n)^(-c/(2 rho))",
            [&](long bits) {
                return IntervalPair(log_value_product(r, pts, bits), lin_rhs(r, n, X, c / (2 * rho), bits));
            },
            prec, Rel::LT, "log");
        ch.note = "R = " + format_poly(r);
        if (ch.outcome == Outcome::Holds) {
            Verdict v("lemma21a");
            v.params = res.verdict.params;
            v.params["R"] = format_poly(r);
            v.inputs_digest = res.verdict.inputs_digest;
            v.add(std::move(ch));
            res.verdict = std::move(v);
            res.R = r;
            return res;
        }
        res.verdict.add(std::move(ch));
    }
    throw UndecidedError("linearize_a: no factor certifiable within the precision cap", res.verdict);
}

unsigned power_up_exponent(const RatPoly& r, unsigned n, const PosReal& X, const Rational& rho,
                           const Precision& prec) {
    if (r.is_zero() || r.is_constant()) throw PreconditionError("power_up_exponent: R must be nonconstant");
    Rational kmax_q = rho * n / r.degree();
    Integer kmax;
    mpz_fdiv_q(kmax.get_mpz_t(), kmax_q.get_num_mpz_t(), kmax_q.get_den_mpz_t());
    unsigned best = 0;
    RatPoly q = r;
    for (unsigned k = 1; k <= kmax; ++k, q = q * r) {
        Check ch = power_bound("H(R^k) <= X^(2 rho)", height(q), X, 2 * rho, prec);
        if (ch.outcome == Outcome::Undecided) {
            Verdict v("lemma21b_power");
            v.add(std::move(ch));
            throw UndecidedError("power_up_exponent: height comparison undecided at k = " + std::to_string(k), v);
        }
        if (ch.outcome == Outcome::Holds) best = k;
    }
    if (best == 0) throw PreconditionError("power_up_exponent: no k >= 1 with deg R^k <= rho n and H(R^k) <= X^(2 rho)");
    return best;
}

LinearizeResult linearize_b(const RatPoly& r, unsigned n, const PosReal& X, const EvalPointSet& pts, const Rational& c,
                            const Rational& rho, const Precision& prec) {
    if (!is_irreducible(r)) throw PreconditionError("linearize_b: R must be irreducible");
    LinearizeResult res;
    res.hypothesis = Verdict("lemma21b_hypothesis");
    res.hypothesis.params = lin_params(r, n, X, c, rho, pts);
    res.hypothesis.inputs_digest = lin_digest(res.hypothesis.params);
    res.hypothesis.add(certify(
        "value product of R < (X^deg R H(R)^n)^(-c/(2 rho))",
        [&](long bits) { return IntervalPair(log_value_product(r, pts, bits), lin_rhs(r, n, X, c / (2 * rho), bits)); },
        prec, Rel::LT, "log"));
    if (!res.hypothesis.holds())
        throw PreconditionError("linearize_b: R does not satisfy the factor inequality", res.hypothesis);

    res.k = power_up_exponent(r, n, X, rho, prec);
    res.R = r.pow(res.k);
    res.verdict = Verdict("lemma21b");
    res.verdict.params = res.hypothesis.params;
    res.verdict.params["k"] = res.k;
    res.verdict.inputs_digest = res.hypothesis.inputs_digest;
    res.verdict.add(exact_check("deg Q <= rho n", res.R.degree(), rho * n));
    res.verdict.add(power_bound("H(Q) <= X^(2 rho)", height(res.R), X, 2 * rho, prec));
    res.verdict.add(certify(
        "value product of Q < X^(-cn/4)",
        [&](long bits) {
            return IntervalPair(log_value_product(res.R, pts, bits), scale(X.log(bits), -c * n / 4));
        },
        prec, Rel::LT, "log"));
    return res;
}

RatPoly gcd_translates(const RatPoly& p, const ScaleSet& A) {
    if (p.is_zero()) throw PreconditionError("gcd_translates: P must be nonzero");
    if (A.elements().empty()) throw PreconditionError("gcd_translates: A must be nonempty");
    RatPoly g;
    for (const auto& a : A.elements()) {
        RatPoly pa = apply_map(AffineMap::scale(a), p);
        g = g.is_zero() ? primitive_part(pa) : gcd_q(g, pa);
        if (g.is_constant()) break;
    }
    return g;
}

Rational gcd_bound_N(unsigned s, unsigned ell) {
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, ell + 1);
    den *= factorial(ell + 1);
    Rational n(binomial(s, ell + 2), den);
    n.canonicalize();
    return n;
}

Interval GcdBoundParams::c1(long bits) const {
    return Interval::from_si(8, bits) + scale(log_q(c_A, bits), Rational(4 * ell + 1));
}

GcdBoundParams GcdBoundParams::make(const ScaleSet& A, unsigned ell) {
    GcdBoundParams g;
    g.s = static_cast<unsigned>(A.size());
    g.ell = ell;
    if (ell + 2 > g.s) throw PreconditionError("gcd bound needs 0 <= l <= s - 2");
    g.N = gcd_bound_N(g.s, ell);
    g.c_A = A.c_A();
    g.rho = Rational(2 * (ell + 1), g.s - ell);
    g.rho.canonicalize();
    return g;
}

ThmGResult verify_thmG(const RatPoly& p, const ScaleSet& A, unsigned ell, const Precision& prec) {
    if (p.is_zero() || p.coeff(0) == 0) throw PreconditionError("verify_thmG: needs P(0) != 0");
    if (!A.independent()) throw PreconditionError("verify_thmG: A is not multiplicatively independent");
    ThmGResult res;
    res.params = GcdBoundParams::make(A, ell);
    std::size_t count = factor_q(p).distinct();
    if (Rational(long(count)) > res.params.N)
        throw PreconditionError("verify_thmG: " + std::to_string(count) + " irreducible factors exceed N(s,l) = " +
                                to_string(res.params.N));
    res.Q = gcd_translates(p, A);
    const Rational rho = res.params.rho;
    Verdict& v = res.verdict;
    v = Verdict("thmG");
    std::vector<std::string> as;
    for (const auto& a : A.elements()) as.push_back(to_string(a));
    v.params = {{"P", format_poly(p)},         {"A", as},
                {"l", ell},                    {"N", to_string(res.params.N)},
                {"c_A", to_string(res.params.c_A)}, {"Q", format_poly(res.Q)}};
    v.inputs_digest = sha256_hex(v.params.dump());
    v.add(exact_check("deg Q <= rho deg P", res.Q.degree(), rho * p.degree()));
    v.add(certify(
        "log H(Q) <= rho (log H(P) + c1 deg P)",
        [&](long bits) {
            Interval rhs = log_q(height(p), bits) + scale(res.params.c1(bits), Rational(p.degree()));
            return IntervalPair(log_q(height(res.Q), bits), scale(rhs, rho));
        },
        prec, Rel::LE, "log"));
    return res;
}

std::optional<Rational> g_equivalence(const RatPoly& r1, const RatPoly& r2, const ScaleSet& A) {
    if (r1.degree() != r2.degree()) return std::nullopt;
    bool z1 = r1.coeff(0) == 0, z2 = r2.coeff(0) == 0;
    if (z1 || z2) {
        if (z1 && z2 && associate(r1, r2)) return Rational(1);
        return std::nullopt;
    }
    Rational ratio = (r2.lead() / r2.coeff(0)) / (r1.lead() / r1.coeff(0));
    if (ratio <= 0) return std::nullopt;
    unsigned long d = static_cast<unsigned long>(r1.degree());
    Integer num, den;
    if (!mpz_root(num.get_mpz_t(), ratio.get_num_mpz_t(), d)) return std::nullopt;
    if (!mpz_root(den.get_mpz_t(), ratio.get_den_mpz_t(), d)) return std::nullopt;
    Rational a(num, den);
    a.canonicalize();
    if (!A.in_group(a)) return std::nullopt;
    if (!associate(apply_map(AffineMap::scale(a), r1), r2)) return std::nullopt;
    return a;
}

RatPoly GPureDecomposition::product() const {
    RatPoly r(scalar);
    for (const auto& p : parts) r = r * p;
    return r;
}

GPureDecomposition gpure_decompose(const RatPoly& p, const ScaleSet& A) {
    if (p.is_zero()) throw PreconditionError("gpure_decompose: P must be nonzero");
    Factorization fz = factor_q(p);
    GPureDecomposition out;
    out.scalar = fz.sign * fz.content;
    unsigned top = 0;
    for (const auto& f : fz.factors) top = std::max(top, f.second);
    for (unsigned layer = 1; layer <= top; ++layer) {
        std::vector<std::vector<RatPoly>> classes;
        for (const auto& [r, m] : fz.factors) {
            if (m < layer) continue;
            auto it = std::find_if(classes.begin(), classes.end(),
                                   [&](const auto& cls) { return g_equivalence(cls.front(), r, A).has_value(); });
            if (it == classes.end())
                classes.push_back({r});
            else
                it->push_back(r);
        }
        for (const auto& cls : classes) {
            RatPoly part(Rational(1));
            for (const auto& r : cls) part = part * r;
            out.parts.push_back(part);
        }
    }
    return out;
}

Verdict check_lemmaH3(const RatPoly& p, const std::vector<AffineMap>& maps, const RatPoly& r, unsigned s, unsigned t,
                      unsigned n, const Precision& prec) {
    if (s == 0 || t == 0) throw PreconditionError("check_lemmaH3: s and t must be positive");
    if (static_cast<unsigned long>(s) * t > n) throw PreconditionError("check_lemmaH3: needs st <= n");
    if (maps.size() < s) throw PreconditionError("check_lemmaH3: fewer than s maps");
    if (p.is_zero() || static_cast<unsigned>(p.degree()) > n)
        throw PreconditionError("check_lemmaH3: P must be nonzero of degree <= n");
    if (!is_irreducible(r)) throw PreconditionError("check_lemmaH3: R must be irreducible");
    for (const auto& m : maps)
        for (unsigned i = 0; i < t; ++i)
            if (!divides(r, apply_map(m, divided_derivative(p, i))))
                throw PreconditionError("check_lemmaH3: R does not divide " + m.str() + "(P^[" + std::to_string(i) +
                                        "])");
    Rational hmax = 1;
    for (const auto& m : maps) hmax = std::max(hmax, map_height(m));
    Rational st(static_cast<long>(s) * t);
    Verdict v("lemmaH3");
    std::vector<std::string> ms;
    for (const auto& m : maps) ms.push_back(format_map(m));
    v.params = {{"P", format_poly(p)}, {"maps", ms}, {"R", format_poly(r)}, {"s", s}, {"t", t}, {"n", n}};
    v.inputs_digest = sha256_hex(v.params.dump());
    v.add(exact_check("deg R <= n/(st)", r.degree(), Rational(long(n)) / st));
    v.add(certify(
        "H(R) <= (3 max H(lambda))^(2n/(st)) H(P)^(1/(st))",
        [&](long bits) {
            Interval rhs = scale(log_q(3 * hmax, bits), Rational(2 * long(n)) / st) +
                           scale(log_q(height(p), bits), Rational(1) / st);
            return IntervalPair(log_q(height(r), bits), rhs);
        },
        prec, Rel::LE, "log"));
    return v;
}

}  // namespace gelfond
