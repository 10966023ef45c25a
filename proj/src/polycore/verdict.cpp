#include "gelfond/verdict.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>

namespace gelfond {

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Holds: return "HOLDS";
        case Outcome::Fails: return "FAILS";
        default: return "UNDECIDED";
    }
}

Precision Precision::defaults() {
    Precision p;
    if (const char* env = std::getenv("GELFOND_BITS_CAP")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= p.start) p.cap = v;
    }
    return p;
}

Outcome Verdict::outcome() const {
    Outcome r = Outcome::Holds;
    for (const auto& c : checks_) {
        if (c.outcome == Outcome::Fails) return Outcome::Fails;
        if (c.outcome == Outcome::Undecided) r = Outcome::Undecided;
    }
    return r;
}

long Verdict::precision_bits() const {
    long b = 0;
    for (const auto& c : checks_) b = std::max(b, c.bits);
    return b;
}

Verdict& Verdict::merge(const Verdict& other) {
    for (const auto& c : other.checks_) checks_.push_back(c);
    return *this;
}

const Check* Verdict::binding() const {
    for (const auto& c : checks_)
        if (c.outcome != Outcome::Holds) return &c;
    return checks_.empty() ? nullptr : &checks_.front();
}

Outcome decide(const Interval& lhs, const Interval& rhs, Rel rel) {
    if (lhs.has_nan() || rhs.has_nan()) return Outcome::Undecided;
    mpfr_srcptr lhi = lhs.hi().get(), llo = lhs.lo().get();
    mpfr_srcptr rlo = rhs.lo().get(), rhi = rhs.hi().get();
    if (rel == Rel::LE) {
        if (mpfr_lessequal_p(lhi, rlo)) return Outcome::Holds;
        if (mpfr_greater_p(llo, rhi)) return Outcome::Fails;
    } else {
        if (mpfr_less_p(lhi, rlo)) return Outcome::Holds;
        if (mpfr_greaterequal_p(llo, rhi)) return Outcome::Fails;
    }
    return Outcome::Undecided;
}

Check certify(std::string label, const std::function<IntervalPair(long)>& f, const Precision& prec,
              Rel rel, std::string domain) {
    Check c;
    c.label = std::move(label);
    c.rel = rel;
    c.domain = std::move(domain);
    long bits = prec.start;
    for (;;) {
        auto [l, r] = f(bits);
        c.outcome = decide(l, r, rel);
        c.lhs = std::move(l);
        c.rhs = std::move(r);
        c.bits = bits;
        if (c.outcome != Outcome::Undecided || bits >= prec.cap) return c;
        bits = std::min(bits * 2, prec.cap);
    }
}

Check exact_check(std::string label, const Rational& lhs, const Rational& rhs, Rel rel) {
    Check c;
    c.label = std::move(label);
    c.rel = rel;
    bool ok = rel == Rel::LE ? lhs <= rhs : lhs < rhs;
    c.outcome = ok ? Outcome::Holds : Outcome::Fails;
    c.lhs = Interval::from_q(lhs, 128);
    c.rhs = Interval::from_q(rhs, 128);
    c.lhs_exact = lhs;
    c.rhs_exact = rhs;
    c.bits = 0;
    return c;
}

PosReal PosReal::rational(const Rational& q) {
    if (q <= 0) throw DomainError("positive real expected");
    PosReal r;
    r.kind_ = Kind::Rational;
    r.q_ = q;
    return r;
}

PosReal PosReal::exp(const Rational& q) {
    PosReal r;
    r.kind_ = Kind::Exp;
    r.q_ = q;
    return r;
}

PosReal PosReal::parse(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (c != ' ') s.push_back(c);
    auto caret = s.find('^');
    if (caret == std::string::npos) return rational(parse_rational(s));
    std::string base = s.substr(0, caret), ex = s.substr(caret + 1);
    if (!ex.empty() && ex.front() == '(' && ex.back() == ')') ex = ex.substr(1, ex.size() - 2);
    if (base == "e") return exp(parse_rational(ex));
    Rational b = parse_rational(base), e = parse_rational(ex);
    if (e.get_den() != 1) throw ParseError("only integer powers of rationals are exact: '" + raw + "'");
    return rational(pow_q(b, e.get_num().get_si()));
}

std::optional<Rational> PosReal::exact() const {
    if (kind_ == Kind::Rational) return q_;
    if (q_ == 0) return Rational(1);
    return std::nullopt;
}

std::optional<Rational> PosReal::exact_log() const {
    if (kind_ == Kind::Exp) return q_;
    if (q_ == 1) return Rational(0);
    return std::nullopt;
}

Interval PosReal::value(long bits) const {
    return kind_ == Kind::Rational ? Interval::from_q(q_, bits) : exp_q(q_, bits);
}

Interval PosReal::log(long bits) const {
    return kind_ == Kind::Rational ? log_q(q_, bits) : Interval::from_q(q_, bits);
}

std::string PosReal::str() const {
    return kind_ == Kind::Rational ? q_.get_str() : "e^" + q_.get_str();
}

Interval log_abs_q(const Rational& q, long bits) {
    if (q == 0) return Interval::neg_inf(bits);
    return log_q(abs(q), bits);
}

nlohmann::json interval_json(const Interval& v, const std::optional<Rational>& exact) {
    nlohmann::json j = {{"lo", v.lo_str()}, {"hi", v.hi_str()}};
    if (exact) j["exact"] = exact->get_str();
    return j;
}

nlohmann::json to_json(const Check& c) {
    nlohmann::json j = {{"label", c.label},
                        {"verdict", to_string(c.outcome)},
                        {"relation", c.rel == Rel::LE ? "<=" : "<"},
                        {"domain", c.domain},
                        {"lhs", interval_json(c.lhs, c.lhs_exact)},
                        {"rhs", interval_json(c.rhs, c.rhs_exact)},
                        {"precision_bits", c.bits}};
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

nlohmann::json to_json(const Verdict& v) {
    nlohmann::json j;
    j["claim"] = v.claim();
    j["inputs_digest"] = v.inputs_digest;
    j["params"] = v.params;
    if (const Check* b = v.binding()) {
        j["lhs"] = interval_json(b->lhs, b->lhs_exact);
        j["rhs"] = interval_json(b->rhs, b->rhs_exact);
    } else {
        j["lhs"] = nullptr;
        j["rhs"] = nullptr;
    }
    j["verdict"] = to_string(v.outcome());
    j["precision_bits"] = v.precision_bits();
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : v.checks()) checks.push_back(to_json(c));
    j["checks"] = checks;
    return j;
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        out += buf;
    }
    return out;
}

}  // namespace gelfond
