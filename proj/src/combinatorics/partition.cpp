#include "gelfond/combinatorics.hpp"

#include <stdexcept>

namespace gelfond {

namespace {

nlohmann::json points_json(const std::vector<LatticePoint>& pts) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& p : pts) a.push_back(p);
    return a;
}

std::string set_digest(const LatticeSet& e, const LatticeSet& f) { return sha256_hex(e.format() + "|" + f.format()); }

void require_orbit_inside(const LatticeSet& e, const LatticeSet& f, const char* who) {
    if (e.dim() != f.dim()) throw PreconditionError(std::string(who) + ": E and F have different dimensions");
    if (!orbit(e).subset_of(f)) throw PreconditionError(std::string(who) + ": O(E) is not contained in F");
}

Check count_check(const std::string& label, std::size_t bad) { return exact_check(label, Rational(long(bad)), 0); }

}  // namespace

Rational prop62_capacity(unsigned s, unsigned ell) {
    Rational num(binomial(s, ell + 2));
    Rational den(factorial(ell + 1) * (Integer(1) << (ell + 1)));
    return num / den;
}

nlohmann::json PartitionCertificate::to_json() const {
    nlohmann::json j = {{"s", s}, {"r", anchors.size()}, {"anchors", points_json(anchors)}};
    if (ell < 0)
        j["mode"] = "prop61";
    else
        j["l"] = ell;
    j["E_parts"] = nlohmann::json::array();
    j["F_parts"] = nlohmann::json::array();
    for (const auto& p : e_parts) j["E_parts"].push_back(points_json(p.points()));
    for (const auto& p : f_parts) j["F_parts"].push_back(points_json(p.points()));
    return j;
}

Verdict validate_partition(const LatticeSet& e, const LatticeSet& f, const PartitionCertificate& cert) {
    const std::size_t r = cert.anchors.size();
    const unsigned s = e.dim();
    Verdict v(cert.ell < 0 ? "prop61" : "prop62");
    v.params = cert.to_json();
    v.inputs_digest = set_digest(e, f);
    if (cert.e_parts.size() != r || cert.f_parts.size() != r + 1 || cert.s != s) {
        v.add(count_check("certificate shape", 1));
        return v;
    }
    // partitions: disjoint and exhaustive
    std::size_t overlap = 0;
    LatticeSet ue(s), uf(s);
    for (const auto& p : cert.e_parts) {
        overlap += (ue & p).size();
        ue = ue | p;
    }
    v.add(count_check("E parts disjoint", overlap));
    v.add(count_check("E parts exhaust E", ue == e ? 0 : 1));
    overlap = 0;
    for (const auto& p : cert.f_parts) {
        overlap += (uf & p).size();
        uf = uf | p;
    }
    v.add(count_check("F parts disjoint", overlap));
    v.add(count_check("F parts exhaust F", uf == f ? 0 : 1));

    std::size_t bad_anchor = 0, bad_a = 0, bad_b = 0, bad_c = 0;
    for (std::size_t i = 0; i < r; ++i) {
        const auto& x = cert.anchors[i];
        const LatticeSet& ei = cert.e_parts[i];
        const LatticeSet& fi = cert.f_parts[i];
        bad_anchor += e.contains(x) ? 0 : 1;
        if (cert.ell < 0) {
            bad_a += ei == LatticeSet(s, {x}) ? 0 : 1;
            bad_b += fi.subset_of(orbit(x)) ? 0 : 1;
            bad_c += 2 * fi.size() >= s ? 0 : 1;
        } else {
            const long ell = cert.ell;
            for (const auto& y : ei.points()) {
                LatticePoint d(s);
                for (unsigned c = 0; c < s; ++c) d[c] = y[c] - x[c];
                bad_a += coord_sum(d) == 0 && l1_norm(d) <= 2 * ell ? 0 : 1;
            }
            bad_b += fi.subset_of(orbit(ei)) ? 0 : 1;
            bad_c += 2 * (ell + 1) * long(fi.size()) >= (long(s) - ell) * long(ei.size()) ? 0 : 1;
        }
    }
    v.add(count_check("anchors lie in E", bad_anchor));
    v.add(count_check(cert.ell < 0 ? "a) E_i = {x_i}" : "a) E_i in C_l(x_i)", bad_a));
    v.add(count_check(cert.ell < 0 ? "b) F_i in O(x_i)" : "b) F_i in O(E_i)", bad_b));
    v.add(count_check(cert.ell < 0 ? "c) |F_i| >= s/2" : "c) |F_i| >= (s-l)/(2(l+1)) |E_i|", bad_c));
    Rational factor = cert.ell < 0 ? Rational(s, 2) : Rational(long(s) - cert.ell, 2 * (cert.ell + 1));
    factor.canonicalize();
    v.add(exact_check("|F| >= factor |E|", factor * long(e.size()), Rational(long(f.size()))));
    return v;
}

PartitionResult partition_prop61(const LatticeSet& e, const LatticeSet& f) {
    require_orbit_inside(e, f, "partition_prop61");
    const unsigned s = e.dim();
    if (4 * f.size() > std::size_t(s) * s) throw PreconditionError("partition_prop61: |F| > s^2/4");
    PartitionCertificate cert;
    cert.s = s;
    LatticeSet covered(s), used(s);
    for (const auto& x : e.points()) {
        LatticeSet ox = orbit(x);
        cert.anchors.push_back(x);
        cert.e_parts.push_back(LatticeSet(s, {x}));
        cert.f_parts.push_back(ox - covered);
        covered = covered | ox;
    }
    cert.f_parts.push_back(f - covered);
    Verdict v = validate_partition(e, f, cert);
    return {std::move(cert), std::move(v)};
}

PartitionResult partition_prop62(const LatticeSet& e, const LatticeSet& f, unsigned ell) {
    require_orbit_inside(e, f, "partition_prop62");
    const unsigned s = e.dim();
    if (s < 2 || ell > s - 2) throw PreconditionError("partition_prop62: needs 0 <= l <= s-2");
    if (Rational(long(f.size())) > prop62_capacity(s, ell))
        throw PreconditionError("partition_prop62: |F| above binom(s,l+2)/(2^(l+1)(l+1)!)");
    PartitionCertificate cert;
    cert.s = s;
    cert.ell = static_cast<int>(ell);
    LatticeSet rest_e = e, rest_f = f;
    while (!rest_e.empty()) {
        const LatticePoint x = rest_e[0];  // smallest remaining point
        bool found = false;
        for (unsigned k = 0; k <= ell && !found; ++k) {
            LatticeSet c = ball(x, k, rest_e);
            LatticeSet d = orbit(c);
            LatticeSet others = orbit(rest_e - c);
            std::size_t inter = (d & others).size();
            if (2 * (k + 1) * long(inter) <= (long(s) - k) * long(c.size())) {
                cert.anchors.push_back(x);
                cert.e_parts.push_back(c);
                cert.f_parts.push_back(d - others);
                rest_e = rest_e - c;
                rest_f = rest_f - cert.f_parts.back();
                found = true;
            }
        }
        if (!found) throw std::logic_error("partition_prop62: no admissible k <= l; implementation bug");
    }
    cert.f_parts.push_back(rest_f);
    Verdict v = validate_partition(e, f, cert);
    return {std::move(cert), std::move(v)};
}

AppendixBResult check_appendixB(const LatticeSet& f, const Precision& prec) {
    if (f.empty()) throw PreconditionError("check_appendixB: F must be nonempty");
    const unsigned s = f.dim();
    AppendixBResult out{pullback_intersection(f, true), Verdict("appendixB")};
    Verdict& v = out.verdict;
    const long nf = long(f.size()), ne = long(out.e.size());
    v.params = {{"s", s}, {"F_size", nf}, {"E_size", ne}};
    v.inputs_digest = sha256_hex(f.format());
    // |F|^{(s-1)/s} is rational exactly when |F|^{s-1} is a perfect s-th power
    Integer pw, root;
    mpz_pow_ui(pw.get_mpz_t(), Integer(nf).get_mpz_t(), s - 1);
    if (mpz_root(root.get_mpz_t(), pw.get_mpz_t(), s) != 0) {
        v.add(exact_check("|E| <= |F| - |F|^((s-1)/s)", Rational(ne), Rational(nf - root)));
    } else {
        v.add(certify(
            "|E| <= |F| - |F|^((s-1)/s)",
            [&](long bits) {
                Interval p = exp(scale(log_q(Rational(nf), bits), Rational(long(s) - 1, long(s))));
                return IntervalPair(Interval::from_si(ne, bits), Interval::from_si(nf, bits) - p);
            },
            prec));
    }
    if (nf == 1) {
        v.add(exact_check("|E| <= (1/s)|F| log|F|", Rational(ne), 0));
    } else {
        v.add(certify(
            "|E| <= (1/s)|F| log|F|",
            [&](long bits) {
                return IntervalPair(Interval::from_si(ne, bits),
                                    scale(log_q(Rational(nf), bits), Rational(nf) / long(s)));
            },
            prec));
    }
    return out;
}

}  // namespace gelfond
