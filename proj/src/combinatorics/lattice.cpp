#include "gelfond/combinatorics.hpp"

#include <algorithm>
#include <sstream>

namespace gelfond {

LatticeSet::LatticeSet(unsigned s) : s_(s) {
    if (s == 0) throw DomainError("LatticeSet: dimension must be positive");
}

LatticeSet::LatticeSet(unsigned s, std::vector<LatticePoint> pts) : LatticeSet(s) {
    for (const auto& p : pts)
        if (p.size() != s) throw DomainError("LatticeSet: point of wrong dimension");
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    pts_ = std::move(pts);
}

bool LatticeSet::contains(const LatticePoint& p) const { return std::binary_search(pts_.begin(), pts_.end(), p); }

bool LatticeSet::subset_of(const LatticeSet& o) const {
    return std::includes(o.pts_.begin(), o.pts_.end(), pts_.begin(), pts_.end());
}

void LatticeSet::insert(const LatticePoint& p) {
    if (p.size() != s_) throw DomainError("LatticeSet: point of wrong dimension");
    auto it = std::lower_bound(pts_.begin(), pts_.end(), p);
    if (it == pts_.end() || *it != p) pts_.insert(it, p);
}

LatticeSet LatticeSet::translated(const LatticePoint& v) const {
    LatticeSet out(s_);
    out.pts_ = pts_;
    for (auto& p : out.pts_)
        for (unsigned i = 0; i < s_; ++i) p[i] += v[i];
    return out;  // translation keeps the order
}

LatticeSet operator|(const LatticeSet& a, const LatticeSet& b) {
    LatticeSet out(a.s_);
    std::set_union(a.pts_.begin(), a.pts_.end(), b.pts_.begin(), b.pts_.end(), std::back_inserter(out.pts_));
    return out;
}

LatticeSet operator&(const LatticeSet& a, const LatticeSet& b) {
    LatticeSet out(a.s_);
    std::set_intersection(a.pts_.begin(), a.pts_.end(), b.pts_.begin(), b.pts_.end(), std::back_inserter(out.pts_));
    return out;
}

LatticeSet operator-(const LatticeSet& a, const LatticeSet& b) {
    LatticeSet out(a.s_);
    std::set_difference(a.pts_.begin(), a.pts_.end(), b.pts_.begin(), b.pts_.end(), std::back_inserter(out.pts_));
    return out;
}

LatticeSet LatticeSet::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    long s = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
        std::istringstream ls(line);
        if (!(ls >> s) || s <= 0) throw ParseError("lattice set: bad dimension line '" + line + "'");
        break;
    }
    if (s <= 0) throw ParseError("lattice set: missing dimension line");
    std::vector<LatticePoint> pts;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        LatticePoint p;
        long v;
        while (ls >> v) p.push_back(v);
        if (!ls.eof() || p.size() != static_cast<std::size_t>(s))
            throw ParseError("lattice set: bad point line '" + line + "'");
        pts.push_back(std::move(p));
    }
    return LatticeSet(static_cast<unsigned>(s), std::move(pts));
}

std::string LatticeSet::format() const {
    std::ostringstream out;
    out << s_ << '\n';
    for (const auto& p : pts_) {
        for (unsigned i = 0; i < s_; ++i) out << (i ? " " : "") << p[i];
        out << '\n';
    }
    return out.str();
}

LatticePoint unit_vector(unsigned s, unsigned i) {
    LatticePoint e(s, 0);
    e.at(i) = 1;
    return e;
}

long l1_norm(const LatticePoint& x) {
    long n = 0;
    for (long v : x) n += v < 0 ? -v : v;
    return n;
}

long coord_sum(const LatticePoint& x) {
    long n = 0;
    for (long v : x) n += v;
    return n;
}

LatticeSet orbit(const LatticeSet& e) {
    std::vector<LatticePoint> pts;
    pts.reserve(e.size() * e.dim());
    for (const auto& x : e.points())
        for (unsigned i = 0; i < e.dim(); ++i) {
            pts.push_back(x);
            ++pts.back()[i];
        }
    return LatticeSet(e.dim(), std::move(pts));
}

LatticeSet orbit(const LatticePoint& x) { return orbit(LatticeSet(static_cast<unsigned>(x.size()), {x})); }

LatticeSet pullback_intersection(const LatticeSet& f, bool include_f) {
    const unsigned s = f.dim();
    std::vector<LatticePoint> pts;
    for (const auto& y : f.points()) {
        // candidates x = y - e_1
        LatticePoint x = y;
        --x[0];
        bool ok = !include_f || f.contains(x);
        for (unsigned i = 1; ok && i < s; ++i) {
            ++x[i];
            ok = f.contains(x);
            --x[i];
        }
        if (ok) pts.push_back(x);
    }
    return LatticeSet(s, std::move(pts));
}

LatticeSet ball(const LatticePoint& x, unsigned k, const LatticeSet& e) {
    std::vector<LatticePoint> pts;
    for (const auto& y : e.points()) {
        long sum = 0, l1 = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            long d = y[i] - x[i];
            sum += d;
            l1 += d < 0 ? -d : d;
        }
        if (sum == 0 && l1 <= 2 * long(k)) pts.push_back(y);
    }
    return LatticeSet(e.dim(), std::move(pts));
}

namespace {

void enum_ball(LatticePoint& cur, std::size_t i, long pos, long neg, long k, std::vector<LatticePoint>& out) {
    if (i == cur.size()) {
        if (pos == neg) out.push_back(cur);
        return;
    }
    for (long v = -(k - neg); v <= k - pos; ++v) {
        cur[i] = v;
        enum_ball(cur, i + 1, pos + (v > 0 ? v : 0), neg + (v < 0 ? -v : 0), k, out);
    }
    cur[i] = 0;
}

}  // namespace

LatticeSet ball_full(const LatticePoint& x, unsigned k) {
    LatticePoint cur(x.size(), 0);
    std::vector<LatticePoint> pts;
    enum_ball(cur, 0, 0, 0, k, pts);
    for (auto& p : pts)
        for (std::size_t i = 0; i < x.size(); ++i) p[i] += x[i];
    return LatticeSet(static_cast<unsigned>(x.size()), std::move(pts));
}

}  // namespace gelfond
