#include "gelfond/matrix.hpp"

#include <sstream>

namespace gelfond {

namespace {

template <class S, class Div>
S bareiss(Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> m, Div exact_div) {
    const Eigen::Index n = m.rows();
    if (m.cols() != n) throw DomainError("determinant of a non-square matrix");
    if (n == 0) return S(Integer(1));
    bool negate = false;
    S prev(Integer(1));
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (scalar_is_zero(m(k, k))) {
            Eigen::Index r = k + 1;
            while (r < n && scalar_is_zero(m(r, k))) ++r;
            if (r == n) return S();
            m.row(k).swap(m.row(r));
            negate = !negate;
        }
        for (Eigen::Index i = k + 1; i < n; ++i)
            for (Eigen::Index j = k + 1; j < n; ++j) m(i, j) = exact_div(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
        prev = m(k, k);
    }
    S d = m(n - 1, n - 1);
    return negate ? S(-d) : d;
}

}  // namespace

Rational det_q(RatMatrix m) {
    const Eigen::Index n = m.rows();
    if (m.cols() != n) throw DomainError("determinant of a non-square matrix");
    Rational det = 1;
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index r = k;
        while (r < n && m(r, k) == 0) ++r;
        if (r == n) return 0;
        if (r != k) {
            m.row(k).swap(m.row(r));
            det = -det;
        }
        det *= m(k, k);
        for (Eigen::Index i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            Rational f = m(i, k) / m(k, k);
            for (Eigen::Index j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

Integer det_z(IntMatrix m) {
    return bareiss<Integer>(std::move(m), [](const Integer& a, const Integer& b) {
        Integer q;
        mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return q;
    });
}

IntPoly det_bareiss(PolyMatrix m) {
    return bareiss<IntPoly>(std::move(m), [](const IntPoly& a, const IntPoly& b) {
        IntPoly q;
        if (!try_exact_div(a, b, q)) throw std::logic_error("Bareiss step is not exact");
        return q;
    });
}

std::string dump_matrix(const RatMatrix& m) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << to_string(m(i, j));
        out << '\n';
    }
    return out.str();
}

RatMatrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::vector<Rational>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<Rational> row;
        std::string tok;
        while (ls >> tok) row.push_back(parse_rational(tok));
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows[0].size()) throw ParseError("ragged matrix rows");
        rows.push_back(std::move(row));
    }
    RatMatrix m(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

}  // namespace gelfond
