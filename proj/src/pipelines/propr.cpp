#include "common.hpp"

#include <algorithm>

namespace gelfond {

using pipe::pow_vs_X;
using pipe::qty_q;

Rational kappa_prime_propR(const Rational& kappa) { return (kappa - 27) / 16; }

namespace {

std::vector<AffineMap> canonical_maps(std::vector<AffineMap> maps) {
    std::sort(maps.begin(), maps.end(), [](const AffineMap& x, const AffineMap& y) {
        return x.a() != y.a() ? x.a() < y.a() : x.b() < y.b();
    });
    return maps;
}

void propR_structure(const RatPoly& p, const PipelineParams& pp) {
    if (pp.n == 0 || pp.s == 0 || pp.t == 0) throw PreconditionError("propR: n, s, t must be positive");
    if (static_cast<unsigned long>(pp.s) * pp.t > pp.n) throw PreconditionError("propR: needs st <= n");
    auto maps = canonical_maps(pp.maps);
    if (std::adjacent_find(maps.begin(), maps.end()) != maps.end())
        throw PreconditionError("propR: repeated map");
    if (maps.size() < pp.s || pp.E.size() < pp.s) throw PreconditionError("propR: needs min(|maps|, |E|) >= s");
    pipe::require_integer_poly(p, pp.n, "propR");
    pipe::require_distinct(pp.E, pp.prec, "propR");
}

Rational max_map_height(const std::vector<AffineMap>& maps) {
    Rational c = 1;
    for (const auto& m : maps) c = std::max(c, map_height(m));
    return c;
}

}  // namespace

Verdict propR_hypotheses(const RatPoly& p, const PipelineParams& pp) {
    propR_structure(p, pp);
    const Precision& prec = pp.prec;
    const PosReal& X = pp.X;
    const Rational n(long(pp.n)), st(long(pp.s) * pp.t);
    Verdict v("propR_hypotheses");
    v.params = pp.to_json();
    v.params["P"] = format_poly(p);
    pipe::stamp(v);
    v.add(exact_check("27 < kappa", 27, pp.kappa, Rel::LT));
    v.add(pow_vs_X("3^n <= X", qty_q(3), n, X, 1, prec));
    v.add(pow_vs_X("c_A^n <= X", qty_q(max_map_height(pp.maps)), n, X, 1, prec));
    v.add(pow_vs_X("(2+c_E)^n <= X", pipe::c_E(pp.E, false, true), n, X, 1, prec));
    v.add(pow_vs_X("delta_E^(-s^2t^2/n) <= X", pipe::delta_E(pp.E), -st * st / n, X, 1, prec));
    v.add(pow_vs_X("H(P) <= X", qty_q(height(p)), 1, X, 1, prec));
    auto sites = pipe::derivative_sites(p, pp.maps, pp.E, 2 * pp.t);
    v.add(certify(
        "max |P^[j](lambda xi)| <= X^(-kappa n/(st))",
        [&](long bits) {
            return IntervalPair(pipe::log_max_abs(sites, bits), scale(X.log(bits), -pp.kappa * n / st));
        },
        prec, Rel::LE, "log"));
    return v;
}

Verdict verify_propR_certificate(const RatPoly& s, const ComplexEnclosure& xi, const PipelineParams& pp,
                                 const Precision& prec) {
    if (s.is_zero() || s.is_constant()) throw PreconditionError("propR certificate: S must be nonconstant");
    if (pp.s == 0 || pp.t == 0) throw PreconditionError("propR certificate: s, t must be positive");
    const Rational kp = kappa_prime_propR(pp.kappa), n(long(pp.n)), st(long(pp.s) * pp.t);
    const PosReal& X = pp.X;
    Verdict v("propR_certificate");
    v.params = {{"S", format_poly(s)}, {"xi", xi.label()}, {"n", pp.n}, {"s", pp.s}, {"t", pp.t},
                {"X", X.str()},        {"kappa_prime", to_string(kp)}};
    pipe::stamp(v);
    v.add(pipe::primary_check(s));
    v.add(exact_check("deg S <= 5n/(st)", s.degree(), 5 * n / st));
    v.add(pow_vs_X("H(S) <= X^(10/(st))", qty_q(height(s)), 1, X, 10 / st, prec));
    const Rational cs = content(s);
    v.add(certify(
        "|S(xi)|/cont S <= X^(-kappa' n/(st)^2)",
        [&](long bits) {
            return IntervalPair(log(abs_eval(s, xi, bits)) - log_q(cs, bits), scale(X.log(bits), -kp * n / (st * st)));
        },
        prec, Rel::LE, "log"));
    return v;
}

PipelineResult run_propR(const RatPoly& p, const PipelineParams& pp) {
    Verdict hyp = propR_hypotheses(p, pp);
    if (!hyp.holds()) throw PreconditionError("propR: hypotheses " + to_string(hyp.outcome()), hyp);

    const Precision& prec = pp.prec;
    const PosReal& X = pp.X;
    const unsigned n = pp.n, s = pp.s, t = pp.t;
    const Rational kp = kappa_prime_propR(pp.kappa), st(long(s) * t);
    const auto maps = canonical_maps(pp.maps);
    const EvalPointSet Es = pp.E.prefix(s);

    PipelineResult res;
    PipelineTrace& tr = res.trace;
    tr = PipelineTrace("propR");
    tr.derived = {{"kappa_prime", to_string(kp)}, {"c_A", to_string(max_map_height(maps))}, {"E_used", s},
                  {"lambda", format_map(maps.front())}};
    tr.add("hypotheses", "basic:propR", hyp.inputs_digest, hyp);

    RatPoly Q;
    pipe::run_stage(tr, "gcd of derivative translates", "basic:propQ", [&] {
        PropQResult q = run_propQ(p, maps, Es, t, n, prec);
        Q = q.Q;
        tr.derived["delta_P"] = interval_json(q.delta_P);
        Verdict v = q.verdict;
        v.add(pow_vs_X("Delta_E^(-t^2) <= X^n", pipe::Delta_E(Es), -Rational(long(t) * t), X, n, prec));
        v.add(certify(
            "prod (|Q(xi)|/cont Q)^t <= X^(-16 kappa' n)",
            [&](long bits) {
                return IntervalPair(scale(log_value_product(Q, Es, bits), Rational(t)), scale(X.log(bits), -16 * kp * n));
            },
            prec, Rel::LE, "log"));
        return std::pair(digest_of(Q), v);
    });

    pipe::run_stage(tr, "degree and height of Q", "propR:eq2", [&] {
        Verdict v("propR_eq2");
        v.params = {{"Q", format_poly(Q)}, {"lambda", format_map(maps.front())}};
        pipe::stamp(v);
        v.add(exact_check("Q divides lambda P (0 = yes)", divides(Q, apply_map(maps.front(), p)) ? 0 : 1, 0));
        v.add(exact_check("deg Q <= n", Q.is_zero() ? 0 : Q.degree(), n));
        const Rational cA = max_map_height(maps), hp = height(p);
        v.add(certify(
            "(3 e c_A)^n H(P) <= X^4",
            [&](long bits) {
                Interval l = scale(log_q(3 * cA, bits) + Interval::from_si(1, bits), Rational(n)) + log_q(hp, bits);
                return IntervalPair(l, scale(X.log(bits), 4));
            },
            prec, Rel::LE, "log"));
        v.add(pow_vs_X("H(Q) <= X^4", qty_q(height(Q)), 1, X, 4, prec));
        return std::pair(digest_of(Q), v);
    });

    RatPoly R;
    pipe::run_stage(tr, "irreducible factor", "lemma:linearization", [&] {
        LinearizeResult la = linearize_a(Q, n, X, 8 * kp, 4, pipe::repeat_points(Es, t), prec);
        R = la.R;
        Verdict v = la.hypothesis;
        v.merge(la.verdict);
        return std::pair(digest_of(R), v);
    });

    std::size_t xi_index = 0;
    pipe::run_stage(tr, "choice of xi", "propR:eq4", [&] {
        Verdict v("propR_eq4");
        v.params = {{"R", format_poly(R)}, {"E", pipe::points_json(Es)}};
        pipe::stamp(v);
        const Rational cr = content(R), hr = height(R);
        const long dr = R.degree();
        bool found = false;
        for (std::size_t i = 0; i < Es.size() && !found; ++i) {
            Check c = certify(
                "|R(xi)|/cont R <= (X^deg R H(R)^n)^(-kappa'/(st))",
                [&](long bits) {
                    Interval l = log(abs_eval(R, Es[i], bits)) - log_q(cr, bits);
                    Interval r = scale(X.log(bits), Rational(dr)) + scale(log_q(hr, bits), Rational(n));
                    return IntervalPair(l, scale(r, -kp / st));
                },
                prec, Rel::LE, "log");
            c.note = "xi index " + std::to_string(i);
            found = c.outcome == Outcome::Holds;
            if (found) {
                Verdict w("propR_eq4");
                w.params = v.params;
                w.params["xi_index"] = i;
                pipe::stamp(w);
                w.add(std::move(c));
                v = std::move(w);
                xi_index = i;
            } else {
                v.add(std::move(c));
            }
        }
        return std::pair(pipe::digest_json(v.params), v);
    });

    pipe::run_stage(tr, "degree and height of R", "trans:lemmaH3", [&] {
        Verdict v = check_lemmaH3(p, maps, R, s, t, n, prec);
        v.add(pow_vs_X("H(R) <= X^(5/(st))", qty_q(height(R)), 1, X, 5 / st, prec));
        return std::pair(digest_of(R), v);
    });

    pipe::run_stage(tr, "power of R", "lemma:linearization", [&] {
        LinearizeResult lb = linearize_b(R, n, X, EvalPointSet({Es[xi_index]}), 5 * kp / (st * st), 5 / st, prec);
        res.S = primitive_part(lb.R);
        tr.derived["k"] = lb.k;
        Verdict v = lb.hypothesis;
        v.merge(lb.verdict);
        return std::pair(digest_of(res.S), v);
    });

    res.xi = xi_index;
    pipe::run_stage(tr, "final", "propR:eqprop3", [&] {
        res.final = verify_propR_certificate(res.S, Es[xi_index], pp, prec);
        return std::pair(digest_of(res.S), res.final);
    });
    return res;
}

}  // namespace gelfond
