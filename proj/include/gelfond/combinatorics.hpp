#pragma once

#include "gelfond/verdict.hpp"

#include <string>
#include <vector>

namespace gelfond {

using LatticePoint = std::vector<long>;

// Finite subset of Z^s, kept sorted and duplicate free.
class LatticeSet {
public:
    explicit LatticeSet(unsigned s = 1);
    LatticeSet(unsigned s, std::vector<LatticePoint> pts);

    unsigned dim() const { return s_; }
    std::size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const std::vector<LatticePoint>& points() const { return pts_; }
    const LatticePoint& operator[](std::size_t i) const { return pts_[i]; }
    bool contains(const LatticePoint& p) const;
    bool subset_of(const LatticeSet& o) const;
    void insert(const LatticePoint& p);

    LatticeSet translated(const LatticePoint& v) const;
    friend LatticeSet operator|(const LatticeSet& a, const LatticeSet& b);
    friend LatticeSet operator&(const LatticeSet& a, const LatticeSet& b);
    friend LatticeSet operator-(const LatticeSet& a, const LatticeSet& b);
    friend bool operator==(const LatticeSet& a, const LatticeSet& b) { return a.s_ == b.s_ && a.pts_ == b.pts_; }

    // First line s, then one point per line.
    static LatticeSet parse(const std::string& text);
    std::string format() const;

private:
    unsigned s_;
    std::vector<LatticePoint> pts_;
};

LatticePoint unit_vector(unsigned s, unsigned i);  // e_{i+1}
long l1_norm(const LatticePoint& x);
long coord_sum(const LatticePoint& x);

// O(E) = union of E + e_i.
LatticeSet orbit(const LatticeSet& e);
LatticeSet orbit(const LatticePoint& x);
// ∩ (F - e_i), also intersected with F when include_f.
LatticeSet pullback_intersection(const LatticeSet& f, bool include_f);
// C_k(x, E) = (x + C_k) ∩ E.
LatticeSet ball(const LatticePoint& x, unsigned k, const LatticeSet& e);
// All of x + C_k.
LatticeSet ball_full(const LatticePoint& x, unsigned k);

// binom(s, l+2) / (2^{l+1} (l+1)!)
Rational prop62_capacity(unsigned s, unsigned ell);

struct PartitionCertificate {
    unsigned s = 0;
    int ell = -1;  // -1 for the single-point partition with |F_i| >= s/2
    std::vector<LatticePoint> anchors;
    std::vector<LatticeSet> e_parts, f_parts;  // f_parts has one extra trailing part
    nlohmann::json to_json() const;
};

struct PartitionResult {
    PartitionCertificate cert;
    Verdict verdict;
};

// Re-derives every claim of the certificate from E and F alone.
Verdict validate_partition(const LatticeSet& e, const LatticeSet& f, const PartitionCertificate& cert);

// Requires O(E) ⊆ F and |F| <= s^2/4.
PartitionResult partition_prop61(const LatticeSet& e, const LatticeSet& f);
// Requires O(E) ⊆ F, 0 <= l <= s-2 and |F| <= prop62_capacity(s, l).
PartitionResult partition_prop62(const LatticeSet& e, const LatticeSet& f, unsigned ell);

struct AppendixBResult {
    LatticeSet e;
    Verdict verdict;  // power bound and log bound
};
AppendixBResult check_appendixB(const LatticeSet& f, const Precision& prec = Precision::defaults());

struct ExponentTable {
    std::vector<std::string> rows, cols;
    std::vector<std::vector<Rational>> phi;  // phi[a][xi]
    Rational kappa1 = 1, kappa2 = 1;

    // Header row: a label cell then column labels; each row: label then entries.
    static ExponentTable parse_csv(const std::string& text, const Rational& kappa1, const Rational& kappa2);
    std::string to_csv() const;
};

// Hypotheses are checked exactly; violations raise PreconditionError.
Verdict check_propZ(const ExponentTable& tbl);

// Exhaustive k(m1, n1; m, n), for 2 <= m1 <= m <= 4 and 2 <= n1 <= n <= 4.
long zarankiewicz_oracle(unsigned m1, unsigned n1, unsigned m, unsigned n);
// 1 + n + (n1 - 1) m (m - 1) / 2, rounded down.
long zarankiewicz_bound(unsigned n1, unsigned m, unsigned n);

}  // namespace gelfond
