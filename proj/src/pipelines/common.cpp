#include "common.hpp"

#include <algorithm>

namespace gelfond::pipe {

Qty qty_q(const Rational& q) {
    Qty r;
    r.exact = q;
    if (q == 1) r.exact_log = Rational(0);
    r.log = [q](long bits) { return log_q(q, bits); };
    return r;
}

Qty qty_e() {
    Qty r;
    r.exact_log = Rational(1);
    r.log = [](long bits) { return Interval::from_si(1, bits); };
    return r;
}

Qty qty_log(std::function<Interval(long)> f) {
    Qty r;
    r.log = std::move(f);
    return r;
}

namespace {

std::size_t bitsize(const Rational& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

}  // namespace

Check pow_vs_X(std::string label, const Qty& base, const Rational& be, const PosReal& X, const Rational& xe,
               const Precision& prec, Rel rel) {
    if (base.exact && X.exact()) {
        Integer d;
        mpz_lcm(d.get_mpz_t(), be.get_den_mpz_t(), xe.get_den_mpz_t());
        Rational lb = be * d, lx = xe * d;
        const Integer& ib = lb.get_num();
        const Integer& ix = lx.get_num();
        if (ib.fits_slong_p() && ix.fits_slong_p()) {
            double cost = std::abs(ib.get_d()) * double(bitsize(*base.exact)) +
                          std::abs(ix.get_d()) * double(bitsize(*X.exact()));
            if (cost < double(1 << 24))
                return exact_check(std::move(label), pow_q(*base.exact, ib.get_si()), pow_q(*X.exact(), ix.get_si()),
                                   rel);
        }
    }
    if (base.exact_log && X.exact_log()) return exact_check(std::move(label), be * *base.exact_log, xe * *X.exact_log(), rel);
    return certify(
        std::move(label), [&](long bits) { return IntervalPair(scale(base.log(bits), be), scale(X.log(bits), xe)); },
        prec, rel, "log");
}

Qty c_E(const EvalPointSet& E, bool with_inverse, bool plus_two) {
    bool exact_real = E.all_exact() && std::all_of(E.points().begin(), E.points().end(), [](const ComplexEnclosure& z) {
                          return z.exact_value().is_real();
                      });
    if (exact_real) {
        Rational c = 0;
        for (const auto& z : E.points()) {
            Rational a = abs(z.exact_value().re);
            c = std::max(c, a);
            if (with_inverse) c = std::max(c, Rational(1 / a));
        }
        return qty_q(plus_two ? c + 2 : c);
    }
    return qty_log([E, with_inverse, plus_two](long bits) {
        Interval c(bits);
        bool first = true;
        for (const auto& z : E.points()) {
            Interval a = abs_eval(monomial_t(1), z, bits);
            if (with_inverse) a = max(a, Interval::from_si(1, bits) / a);
            c = first ? a : max(c, a);
            first = false;
        }
        if (plus_two) c = c + Interval::from_si(2, bits);
        return log(c);
    });
}

Qty delta_E(const EvalPointSet& E) {
    PointSetMetrics pm = point_set_metrics(E, 64);
    if (pm.delta_exact) return qty_q(*pm.delta_exact);
    return qty_log([E](long bits) { return log(point_set_metrics(E, bits).delta); });
}

Qty Delta_E(const EvalPointSet& E) {
    PointSetMetrics pm = point_set_metrics(E, 64);
    if (pm.Delta_exact) return qty_q(*pm.Delta_exact);
    return qty_log([E](long bits) { return log(point_set_metrics(E, bits).Delta); });
}

Interval log_max_abs(const std::vector<ValueSite>& sites, long bits) {
    Interval m = Interval::neg_inf(bits);
    bool first = true;
    for (const auto& s : sites) {
        Interval v = log(abs_eval(s.poly, s.point, bits));
        m = first ? v : max(m, v);
        first = false;
    }
    return m;
}

std::vector<ValueSite> derivative_sites(const RatPoly& p, const std::vector<AffineMap>& maps, const EvalPointSet& E,
                                        unsigned jmax) {
    std::vector<ValueSite> out;
    std::vector<RatPoly> ders;
    for (unsigned j = 0; j < jmax; ++j) ders.push_back(divided_derivative(p, j));
    for (const auto& m : maps)
        for (const auto& xi : E.points()) {
            ComplexEnclosure z = affine_image(m.a(), m.b(), xi);
            for (const auto& d : ders) out.push_back({d, z});
        }
    return out;
}

std::vector<AffineMap> scale_maps(const ScaleSet& A) {
    std::vector<AffineMap> out;
    for (const auto& a : A.elements()) out.push_back(AffineMap::scale(a));
    return out;
}

EvalPointSet repeat_points(const EvalPointSet& E, unsigned t) {
    std::vector<ComplexEnclosure> v;
    for (unsigned k = 0; k < t; ++k)
        for (const auto& z : E.points()) v.push_back(z);
    return EvalPointSet(std::move(v));
}

nlohmann::json points_json(const EvalPointSet& E) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& p : E.points()) {
        std::string l = p.label();
        a.push_back(l.size() > 96 ? "sha256:" + sha256_hex(l) : l);
    }
    return a;
}

nlohmann::json maps_json(const std::vector<AffineMap>& maps) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& m : maps) a.push_back(format_map(m));
    return a;
}

nlohmann::json scales_json(const ScaleSet& A) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : A.elements()) a.push_back(to_string(x));
    return a;
}

void stamp(Verdict& v) { v.inputs_digest = sha256_hex(v.params.dump()); }

std::string digest_json(const nlohmann::json& j) { return sha256_hex(j.dump()); }

void require_integer_poly(const RatPoly& p, unsigned n, const char* who) {
    if (p.is_zero()) throw PreconditionError(std::string(who) + ": P must be nonzero");
    if (!is_integer_poly(p)) throw PreconditionError(std::string(who) + ": P must have integer coefficients");
    if (p.degree() > static_cast<int>(n)) throw PreconditionError(std::string(who) + ": deg P exceeds n");
}

void require_distinct(const EvalPointSet& E, const Precision& prec, const char* who) {
    if (E.empty()) throw PreconditionError(std::string(who) + ": E must be nonempty");
    if (E.size() > 1 && delta_vanishes(E, prec))
        throw PreconditionError(std::string(who) + ": points of E are not certifiably distinct");
}

void require_nonzero_points(const EvalPointSet& E, const Precision& prec, const char* who) {
    for (const auto& z : E.points()) {
        bool zero = z.is_exact() ? z.exact_value().is_zero() : !abs(z.at(prec.cap)).positive();
        if (zero) throw PreconditionError(std::string(who) + ": E must avoid 0");
    }
}

Check primary_check(const RatPoly& s) {
    long distinct = -1;
    if (!s.is_zero() && !s.is_constant()) distinct = long(factor_q(s).distinct());
    Check c = exact_check("S is a power of one irreducible (distinct factors - 1 = 0)", Rational(distinct < 0 ? 1 : distinct - 1), 0);
    c.note = "S = " + format_poly(s);
    return c;
}

Verdict failed_verdict(const std::string& claim, const std::string& what, Outcome o) {
    Verdict v(claim);
    Check c;
    c.label = what;
    c.outcome = o;
    v.add(std::move(c));
    return v;
}

void run_stage(PipelineTrace& tr, const std::string& stage, const std::string& anchor,
               const std::function<std::pair<std::string, Verdict>()>& body) {
    std::pair<std::string, Verdict> out;
    try {
        out = body();
    } catch (const PreconditionError& e) {
        Verdict v = e.verdict ? *e.verdict : Verdict(stage);
        v.merge(failed_verdict(stage, e.what(), Outcome::Fails));
        tr.add(stage, anchor, "", v);
        throw PipelineFailure(tr.kind() + ": stage " + stage + " failed: " + e.what(), tr);
    } catch (const UndecidedError& e) {
        Verdict v = e.verdict;
        v.merge(failed_verdict(stage, e.what(), Outcome::Undecided));
        tr.add(stage, anchor, "", v);
        throw PipelineFailure(tr.kind() + ": stage " + stage + " undecided: " + e.what(), tr);
    }
    bool ok = out.second.holds();
    std::string status = to_string(out.second.outcome());
    tr.add(stage, anchor, std::move(out.first), std::move(out.second));
    if (!ok) throw PipelineFailure(tr.kind() + ": stage " + stage + " " + status, tr);
}

}  // namespace gelfond::pipe
