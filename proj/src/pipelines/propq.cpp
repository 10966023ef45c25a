#include "common.hpp"

#include <algorithm>

namespace gelfond {

namespace {

void propQ_preconditions(const RatPoly& p, const std::vector<AffineMap>& maps, const EvalPointSet& E, unsigned t,
                         unsigned n, const Precision& prec) {
    pipe::require_integer_poly(p, n, "propQ");
    if (maps.empty()) throw PreconditionError("propQ: the map set must be nonempty");
    if (t == 0) throw PreconditionError("propQ: t must be positive");
    pipe::require_distinct(E, prec, "propQ");
    if (static_cast<unsigned long>(E.size()) * t > n) throw PreconditionError("propQ: needs |E| t <= n");
}

RatPoly derivative_translate_gcd(const RatPoly& p, const std::vector<AffineMap>& maps, unsigned t) {
    std::vector<RatPoly> ps;
    for (unsigned i = 0; i < t; ++i) {
        RatPoly d = divided_derivative(p, i);
        if (d.is_zero()) continue;
        for (const auto& m : maps) ps.push_back(apply_map(m, d));
    }
    return ps.size() == 1 ? primitive_part(ps[0]) : gcd_q(ps);
}

}  // namespace

Verdict verify_propQ(const RatPoly& p, const RatPoly& q, const std::vector<AffineMap>& maps, const EvalPointSet& E,
                     unsigned t, unsigned n, const Precision& prec) {
    propQ_preconditions(p, maps, E, t, n, prec);
    if (q.is_zero() || !associate(q, derivative_translate_gcd(p, maps, t)))
        throw PreconditionError("propQ: Q is not the gcd of the derivative translates");
    Rational cA = 1;
    for (const auto& m : maps) cA = std::max(cA, map_height(m));
    pipe::Qty ce = pipe::c_E(E, false, true), dE = pipe::Delta_E(E);
    auto sites = pipe::derivative_sites(p, maps, E, 2 * t);
    const Rational nn(long(n) * n), hp = height(p);

    Verdict v("propQ");
    v.params = {{"P", format_poly(p)}, {"Q", format_poly(q)}, {"maps", pipe::maps_json(maps)},
                {"E", pipe::points_json(E)}, {"t", t}, {"n", n}, {"c_A", to_string(cA)}};
    pipe::stamp(v);
    v.add(certify(
        "prod (|Q(xi)|/cont Q)^t <= (e^4 c_A (2+c_E))^(4n^2) Delta_E^(-t^2) H(P)^(2n) delta_P^(|E|t)",
        [&](long bits) {
            Interval lhs = scale(log_value_product(q, E, bits), Rational(t));
            Interval rhs = scale(Interval::from_si(4, bits) + log_q(cA, bits) + ce.log(bits), 4 * nn) -
                           scale(dE.log(bits), Rational(long(t) * t)) + scale(log_q(hp, bits), Rational(2 * long(n))) +
                           scale(pipe::log_max_abs(sites, bits), Rational(long(E.size()) * t));
            return IntervalPair(lhs, rhs);
        },
        prec, Rel::LE, "log"));
    return v;
}

PropQResult run_propQ(const RatPoly& p, const std::vector<AffineMap>& maps, const EvalPointSet& E, unsigned t,
                      unsigned n, const Precision& prec) {
    propQ_preconditions(p, maps, E, t, n, prec);
    PropQResult r;
    r.Q = derivative_translate_gcd(p, maps, t);
    r.verdict = verify_propQ(p, r.Q, maps, E, t, n, prec);
    long bits = std::max(r.verdict.precision_bits(), prec.start);
    auto sites = pipe::derivative_sites(p, maps, E, 2 * t);
    Interval d = Interval::from_si(0, bits);
    for (const auto& s : sites) d = max(d, abs_eval(s.poly, s.point, bits));
    r.delta_P = d;
    r.verdict.params["delta_P"] = interval_json(d);
    pipe::stamp(r.verdict);
    return r;
}

}  // namespace gelfond
