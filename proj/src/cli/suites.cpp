#include "gelfond/cli.hpp"
#include "gelfond/combinatorics.hpp"
#include "gelfond/factorgcd.hpp"
#include "gelfond/random.hpp"
#include "gelfond/resultants.hpp"
#include "gelfond/transforms.hpp"

#include <algorithm>
#include <map>

namespace gelfond {

namespace {

struct Instance {
    Verdict verdict;
    nlohmann::json info = nlohmann::json::object();
};

using Generator = Instance (*)(Rng&, const Precision&);

std::vector<Rational> distinct_points(Rng& rng, unsigned count, long num, long den) {
    std::vector<Rational> pts;
    while (pts.size() < count) {
        Rational x = rng.rational(num, den);
        if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
    }
    return pts;
}

RatPoly poly_upto(Rng& rng, int maxdeg, long b) {
    return rng.int_poly(static_cast<int>(rng.uniform(0, std::max(0, maxdeg))), b);
}

nlohmann::json polys_json(const std::vector<RatPoly>& ps) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : ps) j.push_back(format_poly(p));
    return j;
}

nlohmann::json rationals_json(const std::vector<Rational>& v) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& x : v) j.push_back(to_string(x));
    return j;
}

Instance gauss(Rng& rng, const Precision& prec) {
    int s = static_cast<int>(rng.uniform(1, 5)), budget = 30;
    std::vector<RatPoly> fs;
    for (int i = 0; i < s; ++i) {
        int d = static_cast<int>(rng.uniform(0, std::min(8, budget)));
        budget -= d;
        fs.push_back(rng.rat_poly(d, 12, 4));
    }
    return {check_gauss_bounds(fs, prec), {{"factors", polys_json(fs)}}};
}

Instance propfg(Rng& rng, const Precision& prec) {
    unsigned n = static_cast<unsigned>(rng.uniform(2, 6));
    RatPoly common = rng.coin() ? RatPoly(Rational(1)) : poly_upto(rng, 1, 3);
    int room = static_cast<int>(n) - std::max(0, common.degree());
    RatPoly f = common * poly_upto(rng, room, 5), g = common * poly_upto(rng, room, 5);
    auto pts = distinct_points(rng, 2, 6, 3);
    unsigned t = std::max(1u, std::min(2u, n / 2));
    RatPoly q = gcd_q(f, g), a, b, r;
    divmod(f, q, a, r);
    divmod(g, q, b, r);
    Verdict v = verify_propFG(f, g, EvalPointSet::exact(pts), t, std::max(0, a.degree()), std::max(0, b.degree()), n,
                              prec);
    return {v, {{"f", format_poly(f)}, {"g", format_poly(g)}, {"E", rationals_json(pts)}, {"t", t}, {"n", n}}};
}

Instance corpp(Rng& rng, const Precision& prec) {
    unsigned r = static_cast<unsigned>(rng.uniform(2, 4)), t = static_cast<unsigned>(rng.uniform(1, 2)), n = 4;
    RatPoly common = rng.coin() ? RatPoly(Rational(1)) : poly_upto(rng, 1, 3);
    std::vector<RatPoly> ps;
    for (unsigned i = 0; i < r; ++i) ps.push_back(common * poly_upto(rng, 4 - std::max(0, common.degree()), 6));
    auto pts = distinct_points(rng, 2, 6, 3);
    return {verify_corPP(ps, EvalPointSet::exact(pts), t, n, prec),
            {{"P", polys_json(ps)}, {"E", rationals_json(pts)}, {"t", t}, {"n", n}}};
}

Instance detid(Rng& rng, const Precision&) {
    unsigned s = static_cast<unsigned>(rng.uniform(1, 3)), t = static_cast<unsigned>(rng.uniform(1, 2));
    unsigned m = std::min(6u, s * t + static_cast<unsigned>(rng.uniform(0, 2)));
    auto pts = distinct_points(rng, s, 6, 3);
    RatPoly q = poly_upto(rng, 1, 4);
    std::vector<RatPoly> polys;
    for (unsigned k = 0; k < m; ++k) polys.push_back(rng.rat_poly(static_cast<int>(m) - 1, 5, 3));
    StructuredEvalMatrix M = build_structured_matrix(q, pts, t, m, polys);
    return {check_det_identity(M), {{"Q", format_poly(q)}, {"E", rationals_json(pts)}, {"t", t}, {"m", m}}};
}

Instance lemmaH1(Rng& rng, const Precision&) {
    AffineMap m(abs(rng.nonzero_rational(12, 6)), rng.rational(12, 6));
    RatPoly f = rng.rat_poly(static_cast<int>(rng.uniform(0, 8)), 15, 6);
    unsigned n = static_cast<unsigned>(f.degree() + rng.uniform(0, 3));
    return {check_lemmaH1(m, f, n), {{"map", format_map(m)}, {"P", format_poly(f)}, {"n", n}}};
}

// P is a product of translates seed(a^x T) over a small pattern of exponent
// vectors x, with A drawn from {2, 3, 5, 7}.
Instance thmG(Rng& rng, const Precision& prec) {
    std::vector<Rational> pool{2, 3, 5, 7};
    for (std::size_t i = pool.size() - 1; i > 0; --i) std::swap(pool[i], pool[rng.uniform(0, long(i))]);
    unsigned s = rng.coin() ? 4 : static_cast<unsigned>(rng.uniform(2, 4));
    std::vector<Rational> elems(pool.begin(), pool.begin() + s);
    std::sort(elems.begin(), elems.end());
    ScaleSet A(elems);
    unsigned ell = static_cast<unsigned>(rng.uniform(0, 1));
    Rational N = gcd_bound_N(s, ell);
    Integer fl = N.get_num() / N.get_den();
    long budget = std::min<long>(6, fl.get_si());
    RatPoly p(Rational(rng.uniform(1, 9)));
    nlohmann::json pattern = nlohmann::json::array();
    for (long count = budget > 0 ? rng.uniform(1, budget) : 0; count > 0;) {
        RatPoly seed = rng.int_poly(static_cast<int>(rng.uniform(1, 2)), 5);
        if (seed.coeff(0) == 0) continue;
        for (long copies = rng.uniform(1, count); copies > 0; --copies, --count) {
            std::vector<long> x(s);
            for (auto& c : x) c = rng.uniform(-1, 1);
            p = p * apply_map(AffineMap::scale(A.power(x)), seed);
            pattern.push_back({{"seed", format_poly(seed)}, {"x", x}});
        }
    }
    ThmGResult r = verify_thmG(p, A, ell, prec);
    Rational ratio(2 * long(ell + 1) * std::max(0, p.degree()), long(s - ell));
    ratio.canonicalize();
    r.verdict.add(exact_check("deg Q <= 2(l+1)/(s-l) deg P", Rational(std::max(0, r.Q.degree())), ratio));
    return {r.verdict,
            {{"P", format_poly(p)}, {"A", rationals_json(elems)}, {"l", ell}, {"pattern", pattern}, {"Q", format_poly(r.Q)}}};
}

LatticeSet random_lattice_set(Rng& rng, unsigned s, unsigned count, long radius) {
    std::vector<LatticePoint> pts;
    for (unsigned c = 0; c < count; ++c) {
        LatticePoint p(s);
        for (auto& v : p) v = rng.uniform(-radius, radius);
        pts.push_back(p);
    }
    return LatticeSet(s, pts);
}

// E: a base point plus up to two nearby points of the same coordinate sum;
// F: O(E), sometimes with a few extra points.
std::pair<LatticeSet, LatticeSet> partition_input(Rng& rng, unsigned s) {
    LatticePoint base(s);
    for (auto& v : base) v = rng.uniform(-3, 3);
    std::vector<LatticePoint> pts{base};
    for (long extra = rng.uniform(0, 2); extra > 0; --extra) {
        LatticePoint p = base;
        unsigned i = unsigned(rng.uniform(0, s - 1)), j = unsigned(rng.uniform(0, s - 1));
        if (i == j) continue;
        p[i] += rng.uniform(1, 2);
        p[j] -= 1;
        if (rng.coin()) p[j] -= 1, p[unsigned(rng.uniform(0, s - 1))] += 1;
        pts.push_back(p);
    }
    LatticeSet e(s, pts), f = orbit(e);
    if (rng.coin()) f = f | random_lattice_set(rng, s, 2, 4);
    return {e, f};
}

nlohmann::json partition_info(const LatticeSet& e, const LatticeSet& f, const PartitionCertificate& c) {
    return {{"E", e.format()}, {"F", f.format()}, {"certificate", c.to_json()}};
}

Instance partition61(Rng& rng, const Precision&) {
    unsigned s = unsigned(rng.uniform(4, 12));
    auto [e, f] = partition_input(rng, s);
    if (4 * f.size() > s * s) throw PreconditionError("|F| > s^2/4");
    PartitionResult r = partition_prop61(e, f);
    r.verdict.merge(validate_partition(e, f, r.cert));
    r.verdict.add(exact_check("s|E| <= 2|F|", Rational(long(s * e.size())), Rational(2 * long(f.size()))));
    return {r.verdict, partition_info(e, f, r.cert)};
}

Instance partition62(Rng& rng, const Precision&) {
    unsigned s = unsigned(rng.uniform(4, 12)), ell = unsigned(rng.uniform(0, 2));
    auto [e, f] = partition_input(rng, s);
    if (Rational(long(f.size())) > prop62_capacity(s, ell)) throw PreconditionError("|F| above capacity");
    PartitionResult r = partition_prop62(e, f, ell);
    r.verdict.merge(validate_partition(e, f, r.cert));
    r.verdict.add(exact_check("(s-l)|E| <= 2(l+1)|F|", Rational(long((s - ell) * e.size())),
                              Rational(2 * long(ell + 1) * long(f.size()))));
    nlohmann::json info = partition_info(e, f, r.cert);
    info["l"] = ell;
    return {r.verdict, info};
}

Instance appendixB(Rng& rng, const Precision& prec) {
    unsigned s = unsigned(rng.uniform(1, 3));
    LatticeSet f = random_lattice_set(rng, s, unsigned(rng.uniform(1, 60)), 2);
    AppendixBResult r = check_appendixB(f, prec);
    return {r.verdict, {{"F", f.format()}, {"E_size", r.e.size()}}};
}

// kappa2 is set to the largest pairwise min-sum, so the table is admissible.
Instance propZ(Rng& rng, const Precision&) {
    ExponentTable t;
    unsigned m = unsigned(rng.uniform(1, 4)), n = unsigned(rng.uniform(1, 6));
    t.kappa1 = rng.uniform(1, 3);
    for (unsigned j = 0; j < n; ++j) t.cols.push_back("xi" + std::to_string(j));
    for (unsigned i = 0; i < m; ++i) {
        t.rows.push_back("a" + std::to_string(i));
        std::vector<Rational> row;
        for (unsigned j = 0; j < n; ++j) {
            long den = rng.uniform(1, 4);
            Rational x(rng.uniform(0, den * t.kappa1.get_num().get_si()), den);
            x.canonicalize();
            row.push_back(rng.uniform(0, 2) == 0 ? Rational(0) : x);
        }
        t.phi.push_back(row);
    }
    Rational k2 = Rational(1, 2);
    for (unsigned a = 0; a < m; ++a)
        for (unsigned b = a + 1; b < m; ++b) {
            Rational sum = 0;
            for (unsigned j = 0; j < n; ++j) sum += std::min(t.phi[a][j], t.phi[b][j]);
            k2 = std::max(k2, sum);
        }
    t.kappa2 = k2;
    return {check_propZ(t), {{"table", t.to_csv()}, {"kappa1", to_string(t.kappa1)}, {"kappa2", to_string(k2)}}};
}

Instance efresultant(Rng& rng, const Precision& prec) {
    unsigned n = static_cast<unsigned>(rng.uniform(1, 8));
    RatPoly p = rng.int_poly(static_cast<int>(rng.uniform(1, n)), 5);
    std::vector<Rational> ep{Rational(0)};
    for (Rational x : distinct_points(rng, unsigned(rng.uniform(0, 3)), 4, 2))
        if (x != 0) ep.push_back(x);
    auto fp = distinct_points(rng, unsigned(rng.uniform(1, std::min(4u, 2 * n))), 6, 3);
    EFResult r = build_EF_resultant(p, EvalPointSet::exact(ep), EvalPointSet::exact(fp), n, prec);
    RatPoly R = r.R.as_rat();
    r.verdict.add(exact_check("R(U) != 0 (0 = yes)", R.is_zero() ? 1 : 0, 0));
    r.verdict.add(exact_check("deg R <= n^2", R.degree_or_neg(), Rational(long(n) * n)));
    return {r.verdict,
            {{"P", format_poly(p)}, {"E", rationals_json(ep)}, {"F", rationals_json(fp)}, {"n", n}, {"R", format_poly(R)}}};
}

const std::map<std::string, Generator>& generators() {
    static const std::map<std::string, Generator> g{
        {"gauss", gauss},         {"propfg", propfg},       {"corpp", corpp},
        {"detid", detid},         {"lemmaH1", lemmaH1},     {"thmG", thmG},
        {"partition61", partition61}, {"partition62", partition62}, {"appendixB", appendixB},
        {"propZ", propZ},         {"efresultant", efresultant},
    };
    return g;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"gauss",       "propfg",      "corpp",     "detid",
                                                "lemmaH1",     "thmG",        "partition61", "partition62",
                                                "appendixB",   "propZ",       "efresultant"};
    return names;
}

bool is_suite(const std::string& name) { return generators().count(name) > 0; }

TrialReport run_suite_trial(const std::string& suite, std::uint64_t seed, std::size_t trial, const Precision& prec) {
    auto it = generators().find(suite);
    if (it == generators().end()) throw PreconditionError("unknown suite: " + suite);
    TrialReport rep;
    rep.trial = trial;
    rep.line = {{"suite", suite}, {"seed", seed}, {"trial", trial}};
    Rng rng = Rng::for_trial(seed, trial);
    // Draws that miss the hypotheses of the verifier are discarded; the stream
    // continues, so the accepted instance still depends on (seed, trial) only.
    const int max_draws = 1000;
    int draws = 0;
    try {
        for (;;) {
            ++draws;
            try {
                Instance in = it->second(rng, prec);
                rep.outcome = in.verdict.outcome();
                rep.line["instance"] = in.info;
                rep.line["certificate"] = to_json(in.verdict);
                break;
            } catch (const PreconditionError& e) {
                if (draws >= max_draws) throw std::runtime_error(std::string("no admissible instance: ") + e.what());
            }
        }
    } catch (const UndecidedError& e) {
        rep.outcome = Outcome::Undecided;
        rep.line["certificate"] = to_json(e.verdict);
        rep.line["error"] = e.what();
    } catch (const std::exception& e) {
        rep.outcome = Outcome::Fails;
        rep.line["error"] = e.what();
    }
    rep.line["draws"] = draws;
    rep.line["outcome"] = to_string(rep.outcome);
    return rep;
}

}  // namespace gelfond
