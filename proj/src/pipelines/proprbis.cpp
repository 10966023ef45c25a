#include "common.hpp"

#include <algorithm>

namespace gelfond {

using pipe::pow_vs_X;
using pipe::qty_q;

Rational epsilon_propRbis(unsigned ell) { return Rational(1, 4 * ell + 10); }

Rational kappa_prime_propRbis(const Rational& kappa, unsigned ell) {
    return (kappa - 2 - 34 * epsilon_propRbis(ell)) / (64 * (ell + 1));
}

namespace {

void propRbis_structure(const RatPoly& p, const PipelineParams& pp) {
    const unsigned s = static_cast<unsigned>(pp.A.size()), ell = pp.ell;
    if (!pp.A.independent()) throw PreconditionError("propRbis: A is not multiplicatively independent");
    if (pp.s != 0 && pp.s != s) throw PreconditionError("propRbis: s must equal |A|");
    if (s < std::max(ell + 2, 2 * ell)) throw PreconditionError("propRbis: needs s >= max(l+2, 2l)");
    if (pp.t == 0 || pp.n == 0) throw PreconditionError("propRbis: n, t must be positive");
    if (pp.epsilon && *pp.epsilon != epsilon_propRbis(ell))
        throw PreconditionError("propRbis: epsilon is fixed to 1/(4l+10) = " + to_string(epsilon_propRbis(ell)));
    pipe::require_distinct(pp.E, pp.prec, "propRbis");
    pipe::require_nonzero_points(pp.E, pp.prec, "propRbis");
    if (static_cast<unsigned long>(std::max<std::size_t>(s, pp.E.size())) * pp.t > pp.n)
        throw PreconditionError("propRbis: needs max(s, |E|) t <= n");
    if (Rational(long(pp.n)) > gcd_bound_N(s, ell))
        throw PreconditionError("propRbis: needs n <= N(s,l) = " + to_string(gcd_bound_N(s, ell)));
    pipe::require_integer_poly(p, pp.n, "propRbis");
}

// 2 c_A c_E with c_E = max(|xi|, 1/|xi|).
pipe::Qty two_cA_cE(const Rational& cA, const EvalPointSet& E) {
    pipe::Qty ce = pipe::c_E(E, true, false);
    if (ce.exact) return qty_q(2 * cA * *ce.exact);
    return pipe::qty_log([cA, ce](long bits) { return log_q(2 * cA, bits) + ce.log(bits); });
}

}  // namespace

Verdict propRbis_hypotheses(const RatPoly& p, const PipelineParams& pp) {
    propRbis_structure(p, pp);
    const Precision& prec = pp.prec;
    const PosReal& X = pp.X;
    const Rational eps = epsilon_propRbis(pp.ell), n(long(pp.n)), Et(long(pp.E.size()) * pp.t);
    Verdict v("propRbis_hypotheses");
    v.params = pp.to_json();
    v.params["P"] = format_poly(p);
    v.params["epsilon"] = to_string(eps);
    pipe::stamp(v);
    v.add(exact_check("2 + 34 eps < kappa", 2 + 34 * eps, pp.kappa, Rel::LT));
    v.add(pow_vs_X("3^n <= X^eps", qty_q(3), n, X, eps, prec));
    v.add(pow_vs_X("c_A^n <= X^eps", qty_q(pp.A.c_A()), n, X, eps, prec));
    v.add(pow_vs_X("(2+c_E)^n <= X^eps", pipe::c_E(pp.E, true, true), n, X, eps, prec));
    v.add(pow_vs_X("delta_E^(-|E|^2t^2/n) <= X^eps", pipe::delta_E(pp.E), -Et * Et / n, X, eps, prec));
    v.add(pow_vs_X("H(P) <= X", qty_q(height(p)), 1, X, 1, prec));
    auto sites = pipe::derivative_sites(p, pipe::scale_maps(pp.A), pp.E, 2 * pp.t);
    v.add(certify(
        "max |P^[j](a xi)| <= X^(-kappa n/(|E|t))",
        [&](long bits) { return IntervalPair(pipe::log_max_abs(sites, bits), scale(X.log(bits), -pp.kappa * n / Et)); },
        prec, Rel::LE, "log"));
    return v;
}

Verdict verify_propRbis_certificate(const RatPoly& s, const PipelineParams& pp, const Precision& prec) {
    if (s.is_zero() || s.is_constant()) throw PreconditionError("propRbis certificate: S must be nonconstant");
    if (pp.A.size() == 0 || pp.t == 0) throw PreconditionError("propRbis certificate: needs |A| and t positive");
    const Rational kp = kappa_prime_propRbis(pp.kappa, pp.ell), n(long(pp.n)), st(long(pp.A.size()) * pp.t),
                   t(long(pp.t));
    const PosReal& X = pp.X;
    Verdict v("propRbis_certificate");
    v.params = {{"S", format_poly(s)}, {"E", pipe::points_json(pp.E)}, {"n", pp.n}, {"s", pp.A.size()},
                {"t", pp.t},           {"X", X.str()},                  {"kappa_prime", to_string(kp)}};
    pipe::stamp(v);
    v.add(pipe::primary_check(s));
    v.add(exact_check("S has integer coefficients (0 = yes)", is_integer_poly(s) ? 0 : 1, 0));
    v.add(exact_check("deg S <= 2n/(st)", s.degree(), 2 * n / st));
    v.add(pow_vs_X("H(S) <= X^(4/(st))", qty_q(height(s)), 1, X, 4 / st, prec));
    v.add(certify(
        "prod |S(xi)| <= X^(-kappa' n/t^2)",
        [&](long bits) {
            Interval l = Interval::from_si(0, bits);
            for (const auto& xi : pp.E.points()) l = l + log(abs_eval(s, xi, bits));
            return IntervalPair(l, scale(X.log(bits), -kp * n / (t * t)));
        },
        prec, Rel::LE, "log"));
    return v;
}

PipelineResult run_propRbis(const RatPoly& p, const PipelineParams& pp) {
    Verdict hyp = propRbis_hypotheses(p, pp);
    if (!hyp.holds()) throw PreconditionError("propRbis: hypotheses " + to_string(hyp.outcome()), hyp);

    const Precision& prec = pp.prec;
    const PosReal& X = pp.X;
    const unsigned n = pp.n, s = static_cast<unsigned>(pp.A.size()), t = pp.t, ell = pp.ell;
    const Rational eps = epsilon_propRbis(ell), kp = kappa_prime_propRbis(pp.kappa, ell);
    const Rational rn{long(n)}, rs{long(s)}, st{long(s) * t}, Et{long(pp.E.size()) * t}, l1{long(ell) + 1};
    const Rational cA = pp.A.c_A();
    const auto maps = pipe::scale_maps(pp.A);
    const EvalPointSet& E = pp.E;

    PipelineResult res;
    PipelineTrace& tr = res.trace;
    tr = PipelineTrace("propRbis");
    tr.derived = {{"kappa_prime", to_string(kp)}, {"epsilon", to_string(eps)}, {"c_A", to_string(cA)},
                  {"N", to_string(gcd_bound_N(s, ell))}};
    tr.add("hypotheses", "further:propRbis", hyp.inputs_digest, hyp);

    RatPoly pt;
    unsigned m = 0;
    pipe::run_stage(tr, "strip T-power", "further:propRbis", [&] {
        while (p.coeff(m) == 0) ++m;
        pt = RatPoly(std::vector<Rational>(p.coeffs().begin() + m, p.coeffs().end()));
        tr.derived["m"] = m;
        Verdict v("propRbis_strip");
        v.params = {{"P", format_poly(p)}, {"P~", format_poly(pt)}, {"m", m}};
        pipe::stamp(v);
        v.add(exact_check("P = T^m P~ (0 = yes)", pt.shifted(m) == p ? 0 : 1, 0));
        v.add(exact_check("P~(0) != 0 (0 = yes)", pt.coeff(0) != 0 ? 0 : 1, 0));
        v.add(pow_vs_X("H(P~) <= X", qty_q(height(pt)), 1, X, 1, prec));
        return std::pair(digest_of(pt), v);
    });

    pipe::run_stage(tr, "small values of P~", "propRbis:eq1", [&] {
        Verdict v("propRbis_eq1");
        v.params = {{"P~", format_poly(pt)}, {"m", m}};
        pipe::stamp(v);
        v.add(pow_vs_X("(2 c_A c_E)^(m+2t) <= X^(9 eps)", two_cA_cE(cA, E), Rational(long(m + 2 * t)), X, 9 * eps, prec));
        auto sites = pipe::derivative_sites(pt, maps, E, 2 * t);
        v.add(certify(
            "max |P~^[j](a xi)| <= X^(-(kappa - 9 eps) n/(t|E|))",
            [&](long bits) {
                return IntervalPair(pipe::log_max_abs(sites, bits), scale(X.log(bits), -(pp.kappa - 9 * eps) * rn / Et));
            },
            prec, Rel::LE, "log"));
        return std::pair(digest_of(pt), v);
    });

    RatPoly Qt;
    pipe::run_stage(tr, "gcd of translates", "gcd:thmG", [&] {
        ThmGResult g = verify_thmG(pt, pp.A, ell, prec);
        Qt = g.Q;
        Verdict v = g.verdict;
        v.add(exact_check("deg Q~ <= 4(l+1) n/s", Qt.degree(), 4 * l1 * rn / rs));
        v.add(pow_vs_X("H(Q~) <= X^(4(l+1)(2-eps)/s)", qty_q(height(Qt)), 1, X, 4 * l1 * (2 - eps) / rs, prec));
        return std::pair(digest_of(Qt), v);
    });

    RatPoly Q;
    PropQResult pq;
    pipe::run_stage(tr, "gcd of derivative translates", "further:propRbis", [&] {
        pq = run_propQ(pt, maps, E, t, n, prec);
        Q = pq.Q;
        tr.derived["delta_P"] = interval_json(pq.delta_P);
        Verdict v("propRbis_Q");
        v.params = {{"Q", format_poly(Q)}, {"Q~", format_poly(Qt)}};
        pipe::stamp(v);
        v.add(exact_check("Q divides Q~ (0 = yes)", divides(Q, Qt) ? 0 : 1, 0));
        v.add(exact_check("deg Q <= 4(l+1) n/s", Q.degree(), 4 * l1 * rn / rs));
        const Rational hq = height(Q), hqt = height(Qt);
        const long dqt = Qt.degree();
        v.add(certify(
            "log H(Q) <= deg Q~ + log H(Q~)",
            [&](long bits) {
                return IntervalPair(log_q(hq, bits), Interval::from_si(dqt, bits) + log_q(hqt, bits));
            },
            prec, Rel::LE, "log"));
        v.add(certify(
            "deg Q~ + log H(Q~) <= 8(l+1) log X/s",
            [&](long bits) {
                return IntervalPair(Interval::from_si(dqt, bits) + log_q(hqt, bits), scale(X.log(bits), 8 * l1 / rs));
            },
            prec, Rel::LE, "log"));
        return std::pair(digest_of(Q), v);
    });

    pipe::run_stage(tr, "value bound for Q", "basic:propQ", [&] {
        Verdict v = pq.verdict;
        v.add(certify(
            "prod (|Q(xi)|/cont Q)^t <= X^(-(kappa-2-34 eps) n)",
            [&](long bits) {
                return IntervalPair(scale(log_value_product(Q, E, bits), Rational(t)),
                                    scale(X.log(bits), -(pp.kappa - 2 - 34 * eps) * rn));
            },
            prec, Rel::LE, "log"));
        return std::pair(digest_of(Q), v);
    });

    RatPoly R;
    const EvalPointSet Et_pts = pipe::repeat_points(E, t);
    pipe::run_stage(tr, "irreducible factor", "lemma:linearization", [&] {
        LinearizeResult la = linearize_a(Q, n, X, 32 * l1 * kp, 8 * l1 / rs, Et_pts, prec);
        R = la.R;
        Verdict v = la.hypothesis;
        v.merge(la.verdict);
        return std::pair(digest_of(R), v);
    });

    pipe::run_stage(tr, "degree and height of R", "trans:lemmaH3", [&] {
        Verdict v = check_lemmaH3(pt, maps, R, s, t, n, prec);
        const Rational hpt = height(pt);
        v.add(certify(
            "((3 c_A)^(2n) H(P~))^(1/(st)) <= X^((1+4 eps)/(st))",
            [&](long bits) {
                Interval l = scale(log_q(3 * cA, bits), 2 * rn) + log_q(hpt, bits);
                return IntervalPair(scale(l, 1 / st), scale(X.log(bits), (1 + 4 * eps) / st));
            },
            prec, Rel::LE, "log"));
        v.add(pow_vs_X("H(R) <= X^(2/(st))", qty_q(height(R)), 1, X, 2 / st, prec));
        return std::pair(digest_of(R), v);
    });

    pipe::run_stage(tr, "power of R", "lemma:linearization", [&] {
        LinearizeResult lb = linearize_b(R, n, X, Et_pts, 4 * kp / Rational(long(t)), 2 / st, prec);
        res.S = primitive_part(lb.R);
        tr.derived["k"] = lb.k;
        Verdict v = lb.hypothesis;
        v.merge(lb.verdict);
        return std::pair(digest_of(res.S), v);
    });

    pipe::run_stage(tr, "final", "propRbis:eqprop3", [&] {
        res.final = verify_propRbis_certificate(res.S, pp, prec);
        return std::pair(digest_of(res.S), res.final);
    });
    return res;
}

}  // namespace gelfond
