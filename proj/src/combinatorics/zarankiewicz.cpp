#include "gelfond/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace gelfond {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        auto a = cell.find_first_not_of(" \t\r"), b = cell.find_last_not_of(" \t\r");
        out.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

}  // namespace

ExponentTable ExponentTable::parse_csv(const std::string& text, const Rational& kappa1, const Rational& kappa2) {
    ExponentTable t;
    t.kappa1 = kappa1;
    t.kappa2 = kappa2;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto cells = split_csv(line);
        if (header) {
            if (cells.size() < 2) throw ParseError("exponent table: header needs at least one column");
            t.cols.assign(cells.begin() + 1, cells.end());
            header = false;
            continue;
        }
        if (cells.size() != t.cols.size() + 1)
            throw ParseError("exponent table: row '" + cells[0] + "' has the wrong number of entries");
        t.rows.push_back(cells[0]);
        std::vector<Rational> row;
        for (std::size_t i = 1; i < cells.size(); ++i) row.push_back(parse_rational(cells[i]));
        t.phi.push_back(std::move(row));
    }
    if (header) throw ParseError("exponent table: empty input");
    return t;
}

std::string ExponentTable::to_csv() const {
    std::ostringstream out;
    out << "a";
    for (const auto& c : cols) out << ',' << c;
    out << '\n';
    for (std::size_t a = 0; a < rows.size(); ++a) {
        out << rows[a];
        for (const auto& x : phi[a]) out << ',' << to_string(x);
        out << '\n';
    }
    return out.str();
}

Verdict check_propZ(const ExponentTable& tbl) {
    if (tbl.rows.empty() || tbl.cols.empty()) throw PreconditionError("check_propZ: A and E must be nonempty");
    if (tbl.kappa1 <= 0 || tbl.kappa2 <= 0) throw PreconditionError("check_propZ: kappa_1, kappa_2 must be positive");
    if (tbl.phi.size() != tbl.rows.size()) throw PreconditionError("check_propZ: row count mismatch");
    for (const auto& row : tbl.phi) {
        if (row.size() != tbl.cols.size()) throw PreconditionError("check_propZ: column count mismatch");
        for (const auto& x : row)
            if (x < 0 || x > tbl.kappa1) throw PreconditionError("check_propZ: entry outside [0, kappa_1]");
    }
    for (std::size_t a = 0; a < tbl.phi.size(); ++a)
        for (std::size_t b = a + 1; b < tbl.phi.size(); ++b) {
            Rational m = 0;
            for (std::size_t x = 0; x < tbl.cols.size(); ++x) m += std::min(tbl.phi[a][x], tbl.phi[b][x]);
            if (m > tbl.kappa2)
                throw PreconditionError("check_propZ: rows " + tbl.rows[a] + ", " + tbl.rows[b] +
                                        " have min-sum " + to_string(m) + " > kappa_2");
        }
    Rational total = 0;
    for (const auto& row : tbl.phi)
        for (const auto& x : row) total += x;
    const long na = long(tbl.rows.size()), ne = long(tbl.cols.size());
    Rational rhs = tbl.kappa1 * ne + tbl.kappa2 * Rational(na * (na - 1) / 2);
    Verdict v("propZ");
    v.params = {{"A", na}, {"E", ne}, {"kappa1", to_string(tbl.kappa1)}, {"kappa2", to_string(tbl.kappa2)},
                {"total", to_string(total)}};
    v.inputs_digest = sha256_hex(tbl.to_csv() + to_string(tbl.kappa1) + "," + to_string(tbl.kappa2));
    v.add(exact_check("sum phi <= kappa1 |E| + kappa2 binom(|A|,2)", total, rhs));
    return v;
}

namespace {

// Rows as bitmasks; true when some m1 rows share n1 common ones.
bool has_block(const std::vector<unsigned>& rows, unsigned m1, unsigned n1) {
    const unsigned m = static_cast<unsigned>(rows.size());
    for (unsigned sel = 0; sel < (1u << m); ++sel) {
        if (static_cast<unsigned>(std::popcount(sel)) != m1) continue;
        unsigned common = ~0u;
        for (unsigned i = 0; i < m; ++i)
            if (sel >> i & 1) common &= rows[i];
        if (static_cast<unsigned>(std::popcount(common)) >= n1) return true;
    }
    return false;
}

// Rows are taken in nondecreasing order: permuting rows changes neither
// the count of ones nor the presence of a block.
void search(std::vector<unsigned>& rows, unsigned i, unsigned lo, unsigned n, unsigned m1, unsigned n1, long ones,
            long& best) {
    if (i == rows.size()) {
        if (ones > best && !has_block(rows, m1, n1)) best = ones;
        return;
    }
    for (unsigned r = lo; r < (1u << n); ++r) {
        rows[i] = r;
        search(rows, i + 1, r, n, m1, n1, ones + std::popcount(r), best);
    }
}

}  // namespace

long zarankiewicz_oracle(unsigned m1, unsigned n1, unsigned m, unsigned n) {
    if (!(2 <= m1 && m1 <= m && m <= 4 && 2 <= n1 && n1 <= n && n <= 4))
        throw PreconditionError("zarankiewicz_oracle: needs 2 <= m1 <= m <= 4 and 2 <= n1 <= n <= 4");
    std::vector<unsigned> rows(m);
    long best = -1;
    search(rows, 0, 0, n, m1, n1, 0, best);
    return best + 1;
}

long zarankiewicz_bound(unsigned n1, unsigned m, unsigned n) { return 1 + long(n) + long(n1 - 1) * m * (m - 1) / 2; }

}  // namespace gelfond
