#include "common.hpp"

#include <algorithm>

namespace gelfond {

using pipe::pow_vs_X;
using pipe::qty_q;

namespace {

void propRter_structure(const RatPoly& p, const PipelineParams& pp) {
    const std::size_t na = pp.A.size(), ne = pp.E.size();
    if (na < 2) throw PreconditionError("propRter: needs |A| >= 2");
    if (na * (na - 1) / 2 > ne || ne > pp.n) throw PreconditionError("propRter: needs binom(|A|,2) <= |E| <= n");
    if (pp.n > 64) throw PreconditionError("propRter: n above 64");
    if (!pp.epsilon || *pp.epsilon <= 0 || *pp.epsilon > Rational(1, 10))
        throw PreconditionError("propRter: needs 0 < epsilon <= 1/10");
    pipe::require_distinct(pp.E, pp.prec, "propRter");
    pipe::require_nonzero_points(pp.E, pp.prec, "propRter");
    pipe::require_integer_poly(p, pp.n, "propRter");
}

EvalPointSet product_points(const ScaleSet& A, const EvalPointSet& E) {
    std::vector<ComplexEnclosure> v;
    for (const auto& a : A.elements())
        for (const auto& xi : E.points()) v.push_back(a * xi);
    return EvalPointSet(std::move(v));
}

Interval sum_log_abs(const RatPoly& p, const EvalPointSet& pts, long bits) {
    Interval acc = Interval::from_si(0, bits);
    for (const auto& z : pts.points()) acc = acc + log(abs_eval(p, z, bits));
    return acc;
}

Rational lower_q(const Interval& v) {
    Rational q;
    mpfr_get_q(q.get_mpq_t(), v.lo().get());
    return q;
}

}  // namespace

nlohmann::json PhiTable::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < A.size(); ++i) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& x : phi[i]) r.push_back(interval_json(x));
        rows.push_back({{"a", to_string(A[i])}, {"norm", to_string(norms[i])}, {"phi", r}});
    }
    return {{"bits", bits}, {"rows", rows}};
}

PhiTable phi_table(const RatPoly& q, const ScaleSet& A, const EvalPointSet& E, const PosReal& X,
                   const Rational& eps, unsigned n, long bits) {
    PhiTable t;
    t.bits = bits;
    Interval lx = X.log(bits);
    Interval denom = scale(lx, Rational(long(n)));
    for (const auto& a : A.elements()) {
        RatPoly qa = apply_map(AffineMap::scale(a), q);
        Rational nq = norm(qa);
        t.A.push_back(a);
        t.norms.push_back(nq);
        std::vector<Interval> row;
        for (const auto& xi : E.points()) {
            Interval num = scale(lx, eps) + log_q(nq, bits) - log(abs_eval(q, a * xi, bits));
            row.push_back(num / denom);
        }
        t.phi.push_back(std::move(row));
    }
    return t;
}

Interval phi_to_value(const Interval& phi, const Rational& norm_qa, const PosReal& X, const Rational& eps, unsigned n,
                      long bits) {
    Interval e = (Interval::from_q(eps, bits) - scale(phi, Rational(long(n)))) * X.log(bits);
    return exp(e) * Interval::from_q(norm_qa, bits);
}

Verdict propRter_hypotheses(const RatPoly& p, const PipelineParams& pp) {
    propRter_structure(p, pp);
    const Precision& prec = pp.prec;
    const PosReal& X = pp.X;
    const Rational eps = *pp.epsilon, n(long(pp.n)), ne(long(pp.E.size()));
    Verdict v("propRter_hypotheses");
    v.params = pp.to_json();
    v.params["P"] = format_poly(p);
    pipe::stamp(v);
    v.add(exact_check("6 <= kappa", 6, pp.kappa));
    v.add(pow_vs_X("e^n <= X^eps", pipe::qty_e(), n, X, eps, prec));
    v.add(pow_vs_X("c_A^n <= X^eps", qty_q(pp.A.c_A()), n, X, eps, prec));
    v.add(pow_vs_X("(2+c_E)^n <= X^eps", pipe::c_E(pp.E, true, true), n, X, eps, prec));
    v.add(pow_vs_X("Delta_E^(-1/n) <= X^eps", pipe::Delta_E(pp.E), -1 / n, X, eps, prec));
    v.add(pow_vs_X("H(P) <= X", qty_q(height(p)), 1, X, 1, prec));
    EvalPointSet pts = product_points(pp.A, pp.E);
    v.add(certify(
        "prod_a prod_xi |P(a xi)| < X^(-16 kappa |E| n)",
        [&](long bits) { return IntervalPair(sum_log_abs(p, pts, bits), scale(X.log(bits), -16 * pp.kappa * ne * n)); },
        prec, Rel::LT, "log"));
    return v;
}

Verdict verify_propRter_certificate(const RatPoly& s, const ComplexEnclosure& xi, const PipelineParams& pp,
                                    const Precision& prec) {
    if (s.is_zero() || s.is_constant()) throw PreconditionError("propRter certificate: S must be nonconstant");
    if (!pp.epsilon) throw PreconditionError("propRter certificate: epsilon missing");
    const Rational eps = *pp.epsilon, n(long(pp.n));
    const PosReal& X = pp.X;
    Verdict v("propRter_certificate");
    v.params = {{"S", format_poly(s)}, {"xi", xi.label()}, {"n", pp.n}, {"X", X.str()},
                {"kappa", to_string(pp.kappa)}, {"epsilon", to_string(eps)}};
    pipe::stamp(v);
    v.add(pipe::primary_check(s));
    v.add(exact_check("deg S <= n", s.degree(), n));
    v.add(pow_vs_X("H(S) <= X^(2+2 eps)", qty_q(height(s)), 1, X, 2 + 2 * eps, prec));
    const Rational ns = norm(s);
    v.add(certify(
        "|S(xi)|/||S|| <= X^(-kappa n)",
        [&](long bits) {
            return IntervalPair(log(abs_eval(s, xi, bits)) - log_q(ns, bits), scale(X.log(bits), -pp.kappa * n));
        },
        prec, Rel::LE, "log"));
    return v;
}

PipelineResult run_propRter(const RatPoly& p, const PipelineParams& pp) {
    Verdict hyp = propRter_hypotheses(p, pp);
    if (!hyp.holds()) throw PreconditionError("propRter: hypotheses " + to_string(hyp.outcome()), hyp);

    const Precision& prec = pp.prec;
    const PosReal& X = pp.X;
    const unsigned n = pp.n;
    const Rational eps = *pp.epsilon, kappa = pp.kappa, rn{long(n)}, ne{long(pp.E.size())};
    const ScaleSet& A = pp.A;
    const EvalPointSet& E = pp.E;
    const EvalPointSet pts = product_points(A, E);

    PipelineResult res;
    PipelineTrace& tr = res.trace;
    tr = PipelineTrace("propRter");
    tr.derived = {{"c_A", to_string(A.c_A())}, {"epsilon", to_string(eps)}};
    tr.add("hypotheses", "multxi:propRter", hyp.inputs_digest, hyp);

    RatPoly Q, R;
    pipe::run_stage(tr, "primary polynomial Q", "lemma:linearization", [&] {
        const Rational c = 8 * kappa * ne;
        LinearizeResult la = linearize_a(p, n, X, c, 1, pts, prec);
        R = la.R;
        LinearizeResult lb = linearize_b(R, n, X, pts, c, 1, prec);
        Q = primitive_part(lb.R);
        tr.derived["k"] = lb.k;
        Verdict v = la.hypothesis;
        v.merge(la.verdict).merge(lb.hypothesis).merge(lb.verdict);
        return std::pair(digest_of(Q), v);
    });

    pipe::run_stage(tr, "Q is not a power of T", "propRter:eq3", [&] {
        Verdict v("propRter_not_T_power");
        v.params = {{"R", format_poly(R)}};
        pipe::stamp(v);
        v.add(exact_check("R = T (0 = no)", R == monomial_t(1) ? 1 : 0, 0));
        return std::pair(digest_of(Q), v);
    });

    // φ enters several checks; each recomputes the table at the requested precision.
    auto phi_at = [&](long bits) { return phi_table(Q, A, E, X, eps, n, bits); };

    pipe::run_stage(tr, "exponent table", "propRter:eq5", [&] {
        Verdict v("propRter_phi");
        v.params = {{"Q", format_poly(Q)}, {"A", pipe::scales_json(A)}, {"E", pipe::points_json(E)}};
        pipe::stamp(v);
        for (std::size_t i = 0; i < A.size(); ++i) {
            RatPoly qa = apply_map(AffineMap::scale(A[i]), Q);
            const Rational nq = norm(qa);
            v.add(pow_vs_X("X^(-eps) <= ||Q(aT)||, a = " + to_string(A[i]), qty_q(nq), -1, X, eps, prec));
            v.add(pow_vs_X("H(Q(aT)) <= X^(2+2 eps), a = " + to_string(A[i]), qty_q(height(qa)), 1, X, 2 + 2 * eps,
                           prec));
            v.add(certify(
                "(3 H(a))^n H(Q) <= X^(2+2 eps), a = " + to_string(A[i]),
                [&](long bits) {
                    Interval l = scale(log_q(3 * height_rational(A[i]), bits), rn) + log_q(height(Q), bits);
                    return IntervalPair(l, scale(X.log(bits), 2 + 2 * eps));
                },
                prec, Rel::LE, "log"));
            for (std::size_t j = 0; j < E.size(); ++j)
                v.add(certify(
                    "|Q(a xi)|/||Q(aT)|| <= X^eps, a = " + to_string(A[i]) + ", xi " + std::to_string(j),
                    [&](long bits) {
                        return IntervalPair(log(abs_eval(Q, A[i] * E[j], bits)) - log_q(nq, bits),
                                            scale(X.log(bits), eps));
                    },
                    prec, Rel::LE, "log"));
        }
        v.add(certify(
            "2 kappa |E| <= sum phi",
            [&](long bits) {
                PhiTable t = phi_at(bits);
                Interval sum = Interval::from_si(0, bits);
                for (const auto& row : t.phi)
                    for (const auto& x : row) sum = sum + x;
                return IntervalPair(Interval::from_q(2 * kappa * ne, bits), sum);
            },
            prec, Rel::LE, "value"));
        long bits = std::max(v.precision_bits(), prec.start);
        tr.derived["phi"] = phi_at(bits).to_json();
        return std::pair(pipe::digest_json(tr.derived["phi"]), v);
    });

    pipe::run_stage(tr, "pairwise resultant bound", "result:propFG", [&] {
        Verdict v("propRter_pairs");
        v.params = {{"Q", format_poly(Q)}, {"A", pipe::scales_json(A)}};
        pipe::stamp(v);
        pipe::Qty ce = pipe::c_E(E, true, true), dE = pipe::Delta_E(E);
        v.add(certify(
            "e^(7n^2) (c_E+2)^(4|E|n) Delta_E^(-1) <= X^(12 eps n)",
            [&](long bits) {
                Interval l = Interval::from_si(7 * long(n) * n, bits) + scale(ce.log(bits), 4 * ne * rn) - dE.log(bits);
                return IntervalPair(l, scale(X.log(bits), 12 * eps * rn));
            },
            prec, Rel::LE, "log"));
        for (std::size_t i = 0; i < A.size(); ++i)
            for (std::size_t k = i + 1; k < A.size(); ++k) {
                RatPoly q1 = apply_map(AffineMap::scale(A[i]), Q), q2 = apply_map(AffineMap::scale(A[k]), Q);
                const std::string tag = ", a = " + to_string(A[i]) + ", " + to_string(A[k]);
                v.add(exact_check("deg gcd(Q(a1 T), Q(a2 T)) = 0" + tag, gcd_q(q1, q2).degree(), 0));
                v.merge(verify_propFG(q1, q2, E, 1, n, n, n, prec));
                v.add(certify(
                    "sum_xi min(phi(a1,xi), phi(a2,xi)) <= 6 - 3 eps" + tag,
                    [&](long bits) {
                        PhiTable t = phi_at(bits);
                        Interval sum = Interval::from_si(0, bits);
                        for (std::size_t j = 0; j < E.size(); ++j) sum = sum + min(t.phi[i][j], t.phi[k][j]);
                        return IntervalPair(sum, Interval::from_q(6 - 3 * eps, bits));
                    },
                    prec, Rel::LE, "value"));
            }
        return std::pair(digest_of(Q), v);
    });

    pipe::run_stage(tr, "aggregation", "Zaran:propZ", [&] {
        long bits = tr.derived["phi"]["bits"].get<long>();
        PhiTable t = phi_at(bits);
        ExponentTable tbl;
        tbl.kappa1 = kappa + eps;
        tbl.kappa2 = 6 - 3 * eps;
        for (const auto& x : E.points()) tbl.cols.push_back(x.label().size() > 32 ? x.label().substr(0, 32) : x.label());
        for (std::size_t i = 0; i < A.size(); ++i) {
            tbl.rows.push_back(to_string(A[i]));
            std::vector<Rational> row;
            for (const auto& x : t.phi[i]) {
                bool inf = mpfr_inf_p(x.lo().get()) != 0;
                Rational lo = inf ? tbl.kappa1 : lower_q(x);
                row.push_back(std::clamp(lo, Rational(0), tbl.kappa1));
            }
            tbl.phi.push_back(std::move(row));
        }
        Verdict v = check_propZ(tbl);
        const Rational na(long(A.size()));
        v.add(exact_check("(kappa+eps)|E| + (6-3 eps) binom(|A|,2) < 2 kappa |E|",
                          tbl.kappa1 * ne + tbl.kappa2 * na * (na - 1) / 2, 2 * kappa * ne, Rel::LT));
        return std::pair(sha256_hex(tbl.to_csv()), v);
    });

    std::size_t ai = 0, xj = 0;
    pipe::run_stage(tr, "locate large phi", "multxi:propRter", [&] {
        Verdict v("propRter_locate");
        v.params = {{"Q", format_poly(Q)}};
        pipe::stamp(v);
        bool found = false;
        for (std::size_t i = 0; i < A.size() && !found; ++i)
            for (std::size_t j = 0; j < E.size() && !found; ++j) {
                Check c = certify(
                    "kappa + eps < phi(a, xi)",
                    [&](long bits) { return IntervalPair(Interval::from_q(kappa + eps, bits), phi_at(bits).phi[i][j]); },
                    prec, Rel::LT, "value");
                c.note = "a = " + to_string(A[i]) + ", xi index " + std::to_string(j);
                if (c.outcome == Outcome::Holds) {
                    found = true;
                    ai = i;
                    xj = j;
                    Verdict w("propRter_locate");
                    w.params = v.params;
                    w.params["a"] = to_string(A[i]);
                    w.params["xi_index"] = j;
                    pipe::stamp(w);
                    w.add(std::move(c));
                    v = std::move(w);
                } else {
                    v.add(std::move(c));
                }
            }
        if (!found) v.add(pipe::failed_verdict("", "no entry of the phi table exceeds kappa + eps; this contradicts the proof", Outcome::Fails).checks().front());
        return std::pair(pipe::digest_json(v.params), v);
    });

    res.S = primitive_part(apply_map(AffineMap::scale(A[ai]), Q));
    res.xi = xj;
    tr.derived["a"] = to_string(A[ai]);
    pipe::run_stage(tr, "final", "multxi:propRter", [&] {
        res.final = verify_propRter_certificate(res.S, E[xj], pp, prec);
        return std::pair(digest_of(res.S), res.final);
    });
    return res;
}

}  // namespace gelfond
