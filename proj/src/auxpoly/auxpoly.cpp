#include "gelfond/auxpoly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace gelfond {

namespace {

// Largest i >= 0 with i <= n^σ, decided exactly as i^q <= n^p for σ = p/q.
long max_index(unsigned n, const Rational& sigma) {
    const unsigned long p = sigma.get_num().get_ui(), q = sigma.get_den().get_ui();
    Integer np;
    mpz_ui_pow_ui(np.get_mpz_t(), n, p);
    long i = 0;
    for (;;) {
        Integer iq;
        mpz_ui_pow_ui(iq.get_mpz_t(), static_cast<unsigned long>(i + 1), q);
        if (iq > np) return i;
        ++i;
    }
}

Interval n_pow(unsigned n, const Rational& e, long bits) { return exp(scale(log_q(Rational(n), bits), e)); }

Rational parse_exponent(const nlohmann::json& v, const char* name) {
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long>());
        if (v.is_number()) return parse_rational(v.dump());
    } catch (const ParseError&) {
    }
    throw ParseError(std::string("spec: bad value for ") + name);
}

ComplexEnclosure parse_point_spec(const nlohmann::json& v) {
    if (v.is_number()) return ComplexEnclosure::exact(parse_exponent(v, "xi"));
    if (v.is_object()) {
        std::string re = v.at("re").is_string() ? v.at("re").get<std::string>() : v.at("re").dump();
        std::string im = "0";
        if (v.contains("im")) im = v.at("im").is_string() ? v.at("im").get<std::string>() : v.at("im").dump();
        if (v.contains("bits")) return ComplexEnclosure::from_decimal(re, im, v.at("bits").get<long>());
        return ComplexEnclosure::exact(parse_rational(re), parse_rational(im));
    }
    if (!v.is_string()) throw ParseError("spec: bad point");
    std::string s = v.get<std::string>();
    long bits = -1;
    if (auto h = s.find("#bits="); h != std::string::npos) {
        bits = std::stol(s.substr(h + 6));
        s = s.substr(0, h);
    }
    if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') return ComplexEnclosure::sqrt_of(parse_rational(s.substr(5, s.size() - 6)));
    std::istringstream in(s);
    std::string re, im = "0";
    if (!(in >> re)) throw ParseError("spec: empty point");
    in >> im;
    if (bits > 0) return ComplexEnclosure::from_decimal(re, im, bits);
    return ComplexEnclosure::exact(parse_rational(re), parse_rational(im));
}

// Σ n^{σ_k}|ξ_k|
Interval point_scale(const SmallValueSpec& spec, long bits) {
    Interval s = Interval::from_si(0, bits);
    for (std::size_t k = 0; k < spec.xi.size(); ++k) s = s + n_pow(spec.n, spec.sigma[k], bits) * abs(spec.xi[k].at(bits));
    return s;
}

std::vector<ComplexInterval> power_table(const ComplexInterval& p, unsigned n, long bits) {
    std::vector<ComplexInterval> pw{ComplexInterval::from_q(1, 0, bits)};
    for (unsigned e = 1; e <= n; ++e) pw.push_back(pw.back() * p);
    return pw;
}

Integer floor_of(const Interval& x) {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x.lo().get(), MPFR_RNDD);
    return z;
}

Integer ceil_of(const Interval& x) {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x.hi().get(), MPFR_RNDU);
    return z;
}

Integer round_q(const Rational& q) {
    Integer num = 2 * q.get_num() + q.get_den(), den = 2 * q.get_den(), r;
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return r;
}

long failing_checks(const Verdict& v) {
    long c = 0;
    for (const auto& ch : v.checks()) c += ch.outcome != Outcome::Holds;
    return c;
}

}  // namespace

std::string SmallValueConstraint::label() const {
    std::string s = "i=(";
    for (std::size_t k = 0; k < i.size(); ++k) s += (k ? "," : "") + std::to_string(i[k]);
    return s + ") j=" + std::to_string(j);
}

void SmallValueSpec::validate() const {
    if (n == 0) throw PreconditionError("spec: n must be positive");
    if (sigma.empty() || sigma.size() != xi.size()) throw PreconditionError("spec: need m >= 1 with |sigma| = |xi|");
    if (beta <= 0 || tau <= 0 || nu <= 0) throw PreconditionError("spec: exponents must be positive");
    for (const auto& s : sigma)
        if (s <= 0) throw PreconditionError("spec: exponents must be positive");
}

bool SmallValueSpec::dirichlet_hypothesis() const {
    Rational total = tau;
    for (const auto& s : sigma) total += s;
    return total < 1 && nu > 1 && nu < 1 + beta - total;
}

std::vector<SmallValueConstraint> SmallValueSpec::constraints() const {
    validate();
    std::vector<long> top;
    for (const auto& s : sigma) top.push_back(max_index(n, s));
    const long jmax = max_index(n, tau);
    std::vector<SmallValueConstraint> out;
    std::vector<long> idx(sigma.size(), 0);
    for (;;) {
        ComplexEnclosure pt = ComplexEnclosure::exact(0);
        bool first = true;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (idx[k] == 0) continue;
            ComplexEnclosure term = Rational(idx[k]) * xi[k];
            pt = first ? term : pt + term;
            first = false;
        }
        for (long j = 0; j <= jmax; ++j) out.push_back({idx, static_cast<unsigned>(j), pt});
        std::size_t k = 0;
        while (k < idx.size() && idx[k] == top[k]) idx[k++] = 0;
        if (k == idx.size()) break;
        ++idx[k];
    }
    return out;
}

SmallValueSpec SmallValueSpec::from_json(const nlohmann::json& j) {
    SmallValueSpec s;
    try {
        long n = j.at("n").get<long>();
        if (n <= 0) throw ParseError("spec: n must be positive");
        s.n = static_cast<unsigned>(n);
        s.beta = parse_exponent(j.at("beta"), "beta");
        s.tau = parse_exponent(j.at("tau"), "tau");
        s.nu = parse_exponent(j.at("nu"), "nu");
        for (const auto& v : j.at("sigma")) s.sigma.push_back(parse_exponent(v, "sigma"));
        for (const auto& v : j.at("xi")) s.xi.push_back(parse_point_spec(v));
        if (j.contains("caps")) {
            const auto& c = j.at("caps");
            s.caps.max_n = c.value("max_n", s.caps.max_n);
            s.caps.box_budget = c.value("box_budget", s.caps.box_budget);
            s.caps.box_max_n = c.value("box_max_n", s.caps.box_max_n);
            s.caps.extra_bits = c.value("extra_bits", s.caps.extra_bits);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("spec: ") + e.what());
    }
    s.validate();
    return s;
}

nlohmann::json SmallValueSpec::to_json() const {
    nlohmann::json j = {{"n", n}, {"beta", to_string(beta)}, {"tau", to_string(tau)}, {"nu", to_string(nu)}};
    j["sigma"] = nlohmann::json::array();
    for (const auto& s : sigma) j["sigma"].push_back(to_string(s));
    j["xi"] = nlohmann::json::array();
    for (const auto& x : xi) j["xi"].push_back(x.label());
    j["caps"] = {{"max_n", caps.max_n}, {"box_budget", caps.box_budget}, {"box_max_n", caps.box_max_n},
                 {"extra_bits", caps.extra_bits}};
    return j;
}

ConstraintRows build_constraint_rows(const SmallValueSpec& spec, const std::vector<SmallValueConstraint>& cs,
                                     long bits) {
    spec.validate();
    ConstraintRows out;
    out.bits = bits;
    out.constraint_count = cs.size();
    const unsigned n = spec.n;
    for (const auto& c : cs) {
        auto pw = power_table(c.point.at(bits), n, bits);
        std::vector<Interval> re(n + 1, Interval::from_si(0, bits)), im(n + 1, Interval::from_si(0, bits));
        for (unsigned k = c.j; k <= n; ++k) {
            Rational b(binomial(k, c.j));
            re[k] = scale(pw[k - c.j].re, b);
            im[k] = scale(pw[k - c.j].im, b);
        }
        out.rows.push_back(std::move(re));
        out.labels.push_back(c.label() + " re");
        if (!c.point.is_real()) {
            out.rows.push_back(std::move(im));
            out.labels.push_back(c.label() + " im");
        }
    }
    out.magnitude = certify(
        "row entries <= 2^n max(1, sum n^sigma |xi|)^n",
        [&](long b) {
            Interval lhs = Interval::from_si(0, b);
            for (const auto& c : cs) {
                auto pw = power_table(c.point.at(b), n, b);
                for (unsigned k = c.j; k <= n; ++k)
                    lhs = max(lhs, scale(abs(pw[k - c.j]), Rational(binomial(k, c.j))));
            }
            Interval base = max(Interval::from_si(1, b), point_scale(spec, b));
            return IntervalPair(lhs, pow_ui(Interval::from_si(2, b), n) * pow_ui(base, n));
        },
        Precision::defaults());
    return out;
}

ConstraintRows build_constraint_rows(const SmallValueSpec& spec, long bits) {
    return build_constraint_rows(spec, spec.constraints(), bits);
}

nlohmann::json AuxCertificate::to_json() const {
    nlohmann::json coeffs = nlohmann::json::array();
    for (std::size_t k = 0; k < P.size(); ++k) coeffs.push_back(P[k].get_num().get_str());
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& v : values)
        vals.push_back({{"constraint", v.label}, {"abs", interval_json(v.abs_value, v.exact_zero ? std::optional<Rational>(0) : std::nullopt)}});
    return {{"coefficients", coeffs}, {"degree", degree}, {"height", to_string(height)}, {"method", method},
            {"values", vals}, {"verdict", gelfond::to_json(verdict)}};
}

AuxCertificate verify_smallvalue(const RatPoly& p, const SmallValueSpec& spec, const Precision& prec) {
    if (p.is_zero()) throw PreconditionError("verify_smallvalue: P must be nonzero");
    if (!is_integer_poly(p)) throw PreconditionError("verify_smallvalue: P must have integer coefficients");
    spec.validate();
    AuxCertificate cert;
    cert.P = p;
    cert.degree = p.degree();
    cert.height = height(p);
    cert.method = "external";
    Verdict& v = cert.verdict;
    v = Verdict("propA1");
    v.params = {{"spec", spec.to_json()}, {"P", format_poly(p)}};
    v.inputs_digest = sha256_hex(v.params.dump());
    v.add(exact_check("deg P <= n", Rational(p.degree()), Rational(long(spec.n))));
    v.add(certify(
        "log H(P) <= n^beta",
        [&](long bits) { return IntervalPair(log_q(cert.height, bits), n_pow(spec.n, spec.beta, bits)); }, prec,
        Rel::LE, "log"));
    for (const auto& c : spec.constraints()) {
        RatPoly d = divided_derivative(p, c.j);
        Check ch = certify(
            "log |P^[j](point)| <= -n^nu at " + c.label(),
            [&](long bits) {
                return IntervalPair(log(abs_eval(d, c.point, bits)), -n_pow(spec.n, spec.nu, bits));
            },
            prec, Rel::LE, "log");
        ConstraintValue cv{c.label(), abs_eval(d, c.point, std::max(ch.bits, prec.start)), false};
        cv.exact_zero = c.point.is_exact() && eval(d, c.point.exact_value()).re == 0 &&
                        eval(d, c.point.exact_value()).im == 0;
        cert.values.push_back(std::move(cv));
        v.add(std::move(ch));
    }
    return cert;
}

namespace {

struct SearchState {
    const SmallValueSpec& spec;
    const Precision& prec;
    std::optional<AuxCertificate> best;
    long best_fail = -1;
    std::set<std::vector<Integer>> tried;

    // Returns a certificate if the candidate holds.
    std::optional<AuxCertificate> attempt(std::vector<Integer> c, const char* method) {
        while (!c.empty() && c.back() == 0) c.pop_back();
        if (c.empty()) return std::nullopt;
        if (c.back() < 0)
            for (auto& x : c) x = -x;
        if (!tried.insert(c).second) return std::nullopt;
        std::vector<Rational> q(c.begin(), c.end());
        AuxCertificate cert = verify_smallvalue(RatPoly(q), spec, prec);
        cert.method = method;
        if (cert.verdict.holds()) return cert;
        long f = failing_checks(cert.verdict);
        if (best_fail < 0 || f < best_fail) {
            best_fail = f;
            best = std::move(cert);
        }
        return std::nullopt;
    }
};

std::optional<AuxCertificate> lll_search(SearchState& st, const ConstraintRows& rows, const Integer& h_int,
                                         const Integer& dv, long g) {
    const unsigned n = st.spec.n;
    const Eigen::Index dim = n + 1, width = dim + static_cast<Eigen::Index>(rows.rows.size());
    const Integer unit = Integer(1) << g;
    // Weights on the value block, cheapest first; the last one balances the
    // height budget against the value budget.
    std::vector<Integer> weights{Integer(1)};
    for (long e : {16L, 64L, 256L})
        if ((Integer(1) << e) < h_int) weights.push_back(Integer(1) << e);
    if (h_int > 1) weights.push_back(h_int);
    for (const Integer& w : weights) {
        IntMatrix b = IntMatrix::Zero(dim, width);
        Rational sc = Rational(unit * w * dv);
        for (Eigen::Index k = 0; k < dim; ++k) {
            b(k, k) = unit;
            for (std::size_t r = 0; r < rows.rows.size(); ++r)
                b(k, dim + static_cast<Eigen::Index>(r)) = round_q(sc * rows.rows[r][k].mid_q());
        }
        lll_reduce(b);
        auto coeffs = [&](const Eigen::Ref<const Eigen::Matrix<Integer, 1, Eigen::Dynamic>>& row) {
            std::vector<Integer> c(n + 1);
            for (Eigen::Index k = 0; k < dim; ++k) c[k] = row(k) / unit;
            return c;
        };
        for (Eigen::Index r = 0; r < dim; ++r)
            if (auto cert = st.attempt(coeffs(b.row(r)), "lll")) return cert;
        const Eigen::Index few = std::min<Eigen::Index>(dim, 6);
        for (Eigen::Index r = 0; r < few; ++r)
            for (Eigen::Index s = r + 1; s < few; ++s) {
                if (auto cert = st.attempt(coeffs(b.row(r) + b.row(s)), "lll")) return cert;
                if (auto cert = st.attempt(coeffs(b.row(r) - b.row(s)), "lll")) return cert;
            }
    }
    return std::nullopt;
}

// Enumerates integer vectors by growing sup-norm. A double prefilter with a
// rounding allowance discards candidates; survivors are certified.
std::optional<AuxCertificate> box_search(SearchState& st, const ConstraintRows& rows, long radius) {
    const unsigned d = st.spec.n + 1;
    std::vector<std::vector<double>> rd;
    std::vector<std::vector<double>> rw;  // per-entry absolute uncertainty
    for (const auto& row : rows.rows) {
        std::vector<double> m, w;
        for (const auto& x : row) {
            m.push_back(x.mid_q().get_d());
            w.push_back(mpfr_get_d(x.width().get(), MPFR_RNDU) + std::abs(m.back()) * 1e-15);
        }
        rd.push_back(std::move(m));
        rw.push_back(std::move(w));
    }
    const double budget = std::exp(-std::pow(double(st.spec.n), st.spec.nu.get_d()));
    std::vector<long> c(d);
    for (long r = 1; r <= radius; ++r) {
        std::fill(c.begin(), c.end(), -r);
        for (;;) {
            long sup = 0;
            for (long x : c) sup = std::max(sup, x < 0 ? -x : x);
            // leading nonzero coefficient positive
            long lead = 0;
            for (unsigned k = d; k-- > 0;)
                if (c[k] != 0) {
                    lead = c[k];
                    break;
                }
            if (sup == r && lead > 0) {
                bool pass = true;
                for (std::size_t row = 0; row < rd.size() && pass; ++row) {
                    double s = 0, err = 0;
                    for (unsigned k = 0; k < d; ++k) {
                        s += double(c[k]) * rd[row][k];
                        err += std::abs(double(c[k])) * (rw[row][k] + 4 * d * 1e-16 * std::abs(rd[row][k]));
                    }
                    pass = std::abs(s) <= budget * 1.000001 + err + 1e-300;
                }
                if (pass)
                    if (auto cert = st.attempt(std::vector<Integer>(c.begin(), c.end()), "box")) return cert;
            }
            unsigned k = 0;
            while (k < d && c[k] == r) c[k++] = -r;
            if (k == d) break;
            ++c[k];
        }
    }
    return std::nullopt;
}

}  // namespace

AuxCertificate construct_aux_poly(const SmallValueSpec& spec, const Precision& prec) {
    spec.validate();
    const unsigned n = spec.n;
    if (n > spec.caps.max_n) throw PreconditionError("construct_aux_poly: n above the search cap");
    SearchState st{spec, prec, std::nullopt, -1, {}};

    // Degenerate single point at 0: T^n vanishes to order n there.
    auto cs = spec.constraints();
    bool all_zero = std::all_of(cs.begin(), cs.end(), [&](const SmallValueConstraint& c) {
        return c.point.is_exact() && c.point.exact_value().re == 0 && c.point.exact_value().im == 0 && c.j < n;
    });
    if (all_zero) {
        std::vector<Integer> tn(n + 1, 0);
        tn[n] = 1;
        if (auto cert = st.attempt(tn, "box")) return *cert;
    }

    const long probe = 128;
    Interval hb = n_pow(n, spec.beta, probe), nb = n_pow(n, spec.nu, probe);
    double log2_extra = (mpfr_get_d(hb.hi().get(), MPFR_RNDU) + mpfr_get_d(nb.hi().get(), MPFR_RNDU)) / std::log(2.0);
    double scale2 = 0;
    for (std::size_t k = 0; k < spec.xi.size(); ++k)
        scale2 += std::pow(double(n), spec.sigma[k].get_d()) * (mpfr_get_d(abs(spec.xi[k].at(probe)).hi().get(), MPFR_RNDU));
    const long g = 32 + static_cast<long>(std::log2(double(n) + 1));
    const long bits = spec.caps.extra_bits + g + static_cast<long>(log2_extra + n * std::log2(2 + scale2) + n) + 64;
    ConstraintRows rows = build_constraint_rows(spec, cs, bits);
    const long hbits = std::max(probe, static_cast<long>(log2_extra) + 64);
    Integer h_int = floor_of(exp(n_pow(n, spec.beta, hbits)));
    Integer dv = ceil_of(exp(n_pow(n, spec.nu, hbits)));

    if (auto cert = lll_search(st, rows, h_int, dv, g)) return *cert;

    bool exhaustive = false;
    if (n <= spec.caps.box_max_n) {
        long radius = 0;
        for (long r = 1;; ++r) {
            double count = std::pow(2.0 * r + 1, double(n + 1));
            if (count > double(spec.caps.box_budget) || Integer(r) > h_int) break;
            radius = r;
        }
        exhaustive = Integer(radius) >= h_int;
        if (auto cert = box_search(st, rows, radius)) return *cert;
    }
    throw AuxNotFound(exhaustive ? "construct_aux_poly: no polynomial within the height budget (exhaustive)"
                                 : "construct_aux_poly: no certifiable candidate within the search budget",
                      std::move(st.best), exhaustive);
}

}  // namespace gelfond
