#include "gelfond/auxpoly.hpp"

#include <utility>
#include <vector>

namespace gelfond {

namespace {

Integer dot(const IntMatrix& b, Eigen::Index i, Eigen::Index j) {
    Integer s = 0;
    for (Eigen::Index c = 0; c < b.cols(); ++c) s += b(i, c) * b(j, c);
    return s;
}

// nearest integer to a/d, d > 0
Integer round_div(const Integer& a, const Integer& d) {
    Integer num = 2 * a + d, den = 2 * d, q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

}  // namespace

// Integral LLL on Gram data: d[i] are the leading Gram determinants and
// lam[k][j] = d[j+1] μ_{kj}, so everything stays in Z.
void lll_reduce(IntMatrix& b) {
    const Eigen::Index n = b.rows();
    if (n <= 1) {
        if (n == 1 && dot(b, 0, 0) == 0) throw DomainError("lll_reduce: zero basis vector");
        return;
    }
    std::vector<Integer> d(n + 1);
    std::vector<std::vector<Integer>> lam(n, std::vector<Integer>(n));
    d[0] = 1;
    d[1] = dot(b, 0, 0);
    if (d[1] == 0) throw DomainError("lll_reduce: zero basis vector");
    // 0-based rows; d[i+1] belongs to row i
    Eigen::Index k = 1, kmax = 0;

    auto red = [&](Eigen::Index k, Eigen::Index l) {
        if (2 * abs(lam[k][l]) <= d[l + 1]) return;
        Integer q = round_div(lam[k][l], d[l + 1]);
        b.row(k) -= q * b.row(l);
        lam[k][l] -= q * d[l + 1];
        for (Eigen::Index i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };
    auto swap = [&](Eigen::Index k) {
        b.row(k).swap(b.row(k - 1));
        for (Eigen::Index j = 0; j < k - 1; ++j) std::swap(lam[k][j], lam[k - 1][j]);
        Integer l = lam[k][k - 1];
        Integer bb = (d[k - 1] * d[k + 1] + l * l) / d[k];
        for (Eigen::Index i = k + 1; i <= kmax; ++i) {
            Integer t = lam[i][k];
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - l * t) / d[k];
            lam[i][k - 1] = (bb * t + l * lam[i][k]) / d[k + 1];
        }
        d[k] = bb;
    };

    while (k < n) {
        if (k > kmax) {
            kmax = k;
            for (Eigen::Index j = 0; j <= k; ++j) {
                Integer u = dot(b, k, j);
                for (Eigen::Index i = 0; i < j; ++i) u = (d[i + 1] * u - lam[k][i] * lam[j][i]) / d[i];
                if (j < k)
                    lam[k][j] = u;
                else {
                    if (u == 0) throw DomainError("lll_reduce: dependent basis vectors");
                    d[k + 1] = u;
                }
            }
        }
        red(k, k - 1);
        // Lovász condition with 3/4, scaled by 4 d_{k-1}
        if (4 * d[k + 1] * d[k - 1] < 3 * d[k] * d[k] - 4 * lam[k][k - 1] * lam[k][k - 1]) {
            swap(k);
            if (k > 1) --k;
        } else {
            for (Eigen::Index l = k - 2; l >= 0; --l) red(k, l);
            ++k;
        }
    }
}

}  // namespace gelfond
