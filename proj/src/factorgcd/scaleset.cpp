#include "gelfond/factorgcd.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gelfond {

namespace {

// Pairwise coprime integers > 1 whose products give every input.
std::vector<Integer> coprime_base(const std::vector<Integer>& inputs) {
    std::vector<Integer> base;
    for (const auto& x : inputs) {
        std::vector<Integer> work{x};
        while (!work.empty()) {
            Integer y = work.back();
            work.pop_back();
            if (y == 1) continue;
            bool split = false;
            for (std::size_t i = 0; i < base.size(); ++i) {
                Integer g;
                mpz_gcd(g.get_mpz_t(), y.get_mpz_t(), base[i].get_mpz_t());
                if (g == 1) continue;
                Integer b = base[i];
                base.erase(base.begin() + static_cast<long>(i));
                for (Integer z : {g, Integer(b / g), Integer(y / g)})
                    if (z != 1) work.push_back(z);
                split = true;
                break;
            }
            if (!split) base.push_back(y);
        }
    }
    std::sort(base.begin(), base.end());
    return base;
}

std::vector<Integer> exponent_vector(const Rational& q, const std::vector<Integer>& base) {
    std::vector<Integer> e(base.size());
    Integer num = abs(q.get_num()), den = q.get_den();
    for (std::size_t i = 0; i < base.size(); ++i) {
        while (mpz_divisible_p(num.get_mpz_t(), base[i].get_mpz_t())) {
            num /= base[i];
            ++e[i];
        }
        while (mpz_divisible_p(den.get_mpz_t(), base[i].get_mpz_t())) {
            den /= base[i];
            --e[i];
        }
    }
    return e;
}

std::vector<Integer> base_inputs(const std::vector<Rational>& qs) {
    std::vector<Integer> in;
    for (const auto& q : qs) {
        if (abs(q.get_num()) > 1) in.push_back(abs(q.get_num()));
        if (q.get_den() > 1) in.push_back(q.get_den());
    }
    return in;
}

// Integer row echelon form of generators augmented with an identity block,
// so that lattice membership also yields coordinates.
class LatticeSolver {
public:
    LatticeSolver(const std::vector<std::vector<Integer>>& gens, std::size_t m) : m_(m), s_(gens.size()) {
        for (std::size_t i = 0; i < s_; ++i) {
            std::vector<Integer> row(gens[i]);
            row.resize(m_ + s_);
            row[m_ + i] = 1;
            rows_.push_back(std::move(row));
        }
        std::size_t r = 0;
        for (std::size_t c = 0; c < m_ && r < s_; ++c) {
            for (;;) {
                std::size_t best = s_;
                for (std::size_t i = r; i < s_; ++i)
                    if (rows_[i][c] != 0 && (best == s_ || abs(rows_[i][c]) < abs(rows_[best][c]))) best = i;
                if (best == s_) break;
                std::swap(rows_[r], rows_[best]);
                bool done = true;
                for (std::size_t i = r + 1; i < s_; ++i) {
                    if (rows_[i][c] == 0) continue;
                    Integer q;
                    mpz_fdiv_q(q.get_mpz_t(), rows_[i][c].get_mpz_t(), rows_[r][c].get_mpz_t());
                    for (std::size_t k = 0; k < m_ + s_; ++k) rows_[i][k] -= q * rows_[r][k];
                    if (rows_[i][c] != 0) done = false;
                }
                if (done) break;
            }
            if (r < s_ && rows_[r][c] != 0) pivots_.push_back({r++, c});
        }
    }

    int rank() const { return static_cast<int>(pivots_.size()); }

    std::optional<std::vector<Integer>> solve(std::vector<Integer> v) const {
        std::vector<Integer> x(s_);
        for (auto [r, c] : pivots_) {
            if (!mpz_divisible_p(v[c].get_mpz_t(), rows_[r][c].get_mpz_t())) return std::nullopt;
            Integer q = v[c] / rows_[r][c];
            for (std::size_t k = 0; k < m_; ++k) v[k] -= q * rows_[r][k];
            for (std::size_t k = 0; k < s_; ++k) x[k] += q * rows_[r][m_ + k];
        }
        for (const auto& e : v)
            if (e != 0) return std::nullopt;
        return x;
    }

private:
    std::size_t m_, s_;
    std::vector<std::vector<Integer>> rows_;
    std::vector<std::pair<std::size_t, std::size_t>> pivots_;
};

}  // namespace

ScaleSet::ScaleSet(std::vector<Rational> elements) : elems_(std::move(elements)) {
    std::set<Rational> seen;
    for (const auto& a : elems_) {
        if (a <= 0) throw DomainError("scale set elements must be positive rationals");
        if (!seen.insert(a).second) throw DomainError("scale set elements must be distinct");
    }
    base_ = coprime_base(base_inputs(elems_));
    for (const auto& a : elems_) exps_.push_back(exponent_vector(a, base_));
    rank_ = LatticeSolver(exps_, base_.size()).rank();
}

ScaleSet ScaleSet::parse(const std::string& text) {
    std::istringstream in(text);
    std::vector<Rational> v;
    std::string tok;
    while (in >> tok) v.push_back(parse_rational(tok));
    return ScaleSet(std::move(v));
}

std::optional<std::vector<Integer>> ScaleSet::coordinates(const Rational& x) const {
    if (x <= 0) return std::nullopt;
    std::vector<Rational> all(elems_);
    all.push_back(x);
    std::vector<Integer> base = coprime_base(base_inputs(all));
    std::vector<std::vector<Integer>> gens;
    for (const auto& a : elems_) gens.push_back(exponent_vector(a, base));
    return LatticeSolver(gens, base.size()).solve(exponent_vector(x, base));
}

Rational ScaleSet::power(const std::vector<long>& x) const {
    if (x.size() != elems_.size()) throw DomainError("exponent vector has the wrong length");
    Rational r = 1;
    for (std::size_t i = 0; i < x.size(); ++i) r *= pow_q(elems_[i], x[i]);
    return r;
}

Rational ScaleSet::c_A() const {
    Rational m = 1;
    for (const auto& a : elems_) m = std::max(m, height_rational(a));
    return m;
}

}  // namespace gelfond
