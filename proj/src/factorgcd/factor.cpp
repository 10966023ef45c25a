// Factorization over Q: Yun squarefree split, then for each squarefree part
// Cantor-Zassenhaus modulo a small prime, linear Hensel lifting and
// subset recombination (Zassenhaus).
#include "gelfond/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>

namespace gelfond {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using MP = std::vector<u64>;  // polynomial over F_p, low to high

int deg(const MP& a) { return static_cast<int>(a.size()) - 1; }

void trim(MP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

MP sub(const MP& a, const MP& b, u64 p) {
    MP r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        u64 x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = (x + p - y) % p;
    }
    trim(r);
    return r;
}

MP mul(const MP& a, const MP& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    MP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
    }
    trim(r);
    return r;
}

void divmod(const MP& a, const MP& b, MP& q, MP& r, u64 p) {
    r = a;
    int db = deg(b);
    if (deg(a) < db) {
        q.clear();
        return;
    }
    q.assign(a.size() - b.size() + 1, 0);
    u64 inv = invmod(b.back(), p);
    for (int k = deg(a) - db; k >= 0; --k) {
        u64 c = mulmod(r[k + db], inv, p);
        q[k] = c;
        if (!c) continue;
        for (int i = 0; i <= db; ++i) r[k + i] = (r[k + i] + p - mulmod(c, b[i], p)) % p;
    }
    r.resize(db);
    trim(r);
    trim(q);
}

MP mod(const MP& a, const MP& b, u64 p) {
    MP q, r;
    divmod(a, b, q, r, p);
    return r;
}

MP quo(const MP& a, const MP& b, u64 p) {
    MP q, r;
    divmod(a, b, q, r, p);
    return q;
}

MP monic(MP a, u64 p) {
    if (a.empty()) return a;
    u64 inv = invmod(a.back(), p);
    for (auto& x : a) x = mulmod(x, inv, p);
    return a;
}

MP gcd(MP a, MP b, u64 p) {
    while (!b.empty()) {
        MP r = mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

// s*a + t*b = gcd(a, b) (monic).
MP xgcd(const MP& a, const MP& b, u64 p, MP& s, MP& t) {
    MP r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (!r1.empty()) {
        MP q, r;
        divmod(r0, r1, q, r, p);
        MP s2 = sub(s0, mul(q, s1, p), p), t2 = sub(t0, mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    u64 inv = invmod(r0.back(), p);
    for (auto* v : {&r0, &s0, &t0})
        for (auto& x : *v) x = mulmod(x, inv, p);
    s = s0;
    t = t0;
    return r0;
}

MP powmod_poly(MP base, const Integer& e, const MP& m, u64 p) {
    MP r = {1};
    base = mod(base, m, p);
    std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = nbits; i-- > 0;) {
        r = mod(mul(r, r, p), m, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mul(r, base, p), m, p);
    }
    return r;
}

MP deriv(const MP& a, u64 p) {
    MP r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(mulmod(a[i], i % p, p));
    trim(r);
    return r;
}

MP to_mp(const IntPoly& a, u64 p) {
    MP r;
    for (const auto& c : a.coeffs()) r.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
    trim(r);
    return r;
}

IntPoly from_mp(const MP& a) {
    std::vector<Integer> v;
    for (u64 x : a) v.emplace_back(static_cast<unsigned long>(x));
    return IntPoly(std::move(v));
}

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<MP, int>> ddf(MP f, u64 p) {
    std::vector<std::pair<MP, int>> out;
    MP x = {0, 1}, h = x;
    int i = 0;
    while (deg(f) >= 2 * (i + 1)) {
        ++i;
        h = powmod_poly(h, Integer(static_cast<unsigned long>(p)), f, p);
        MP g = gcd(sub(h, x, p), f, p);
        if (deg(g) > 0) {
            out.emplace_back(g, i);
            f = quo(f, g, p);
            h = mod(h, f, p);
        }
    }
    if (deg(f) > 0) out.emplace_back(f, deg(f));
    return out;
}

// Equal-degree splitting (Cantor-Zassenhaus), p odd.
void edf(const MP& g, int d, u64 p, u64& state, std::vector<MP>& out) {
    if (deg(g) == d) {
        out.push_back(g);
        return;
    }
    Integer e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, static_cast<unsigned long>(d));
    e = (e - 1) / 2;
    for (;;) {
        MP a(deg(g));
        for (auto& c : a) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            c = (state >> 17) % p;
        }
        trim(a);
        if (deg(a) < 1) continue;
        MP b = powmod_poly(a, e, g, p);
        b = sub(b, MP{1}, p);
        MP h = gcd(b, g, p);
        if (deg(h) > 0 && deg(h) < deg(g)) {
            edf(h, d, p, state, out);
            edf(quo(g, h, p), d, p, state, out);
            return;
        }
    }
}

Integer content_z(const IntPoly& a) {
    Integer g = 0;
    for (const auto& c : a.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPoly ipp(const IntPoly& a) {
    if (a.is_zero()) return a;
    Integer g = content_z(a);
    if (a.lead() < 0) g = -g;
    std::vector<Integer> v(a.coeffs());
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return IntPoly(std::move(v));
}

IntPoly reduce_mod(const IntPoly& a, const Integer& m) {
    std::vector<Integer> v(a.coeffs());
    for (auto& c : v) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    return IntPoly(std::move(v));
}

IntPoly symmetric_mod(const IntPoly& a, const Integer& m) {
    Integer half = m / 2;
    std::vector<Integer> v(a.coeffs());
    for (auto& c : v) {
        mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
        if (c > half) c -= m;
    }
    return IntPoly(std::move(v));
}

// Lift F = g0*h0 (mod p), g0 monic, to F = G*H (mod p^k).
void hensel_lift(const IntPoly& F, const MP& g0, const MP& h0, u64 p, unsigned k, IntPoly& G, IntPoly& H) {
    MP s, t;
    xgcd(g0, h0, p, s, t);
    G = from_mp(g0);
    H = from_mp(h0);
    Integer pi = static_cast<unsigned long>(p);
    for (unsigned i = 1; i < k; ++i) {
        IntPoly diff = F - G * H;
        std::vector<Integer> ev(diff.coeffs());
        for (auto& c : ev) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pi.get_mpz_t());
        MP e = to_mp(IntPoly(std::move(ev)), p);
        MP u = mod(mul(t, e, p), g0, p);
        MP q, r;
        divmod(sub(e, mul(u, h0, p), p), g0, q, r, p);
        G += from_mp(u).scaled(pi);
        H += from_mp(q).scaled(pi);
        pi *= static_cast<unsigned long>(p);
        G = reduce_mod(G, pi);
        H = reduce_mod(H, pi);
    }
}

bool good_prime(const IntPoly& f, u64 p) {
    if (mpz_fdiv_ui(f.lead().get_mpz_t(), p) == 0) return false;
    MP fp = monic(to_mp(f, p), p);
    return deg(gcd(fp, deriv(fp, p), p)) == 0;
}

std::vector<u64> small_primes(std::size_t count) {
    std::vector<u64> ps;
    for (u64 n = 3; ps.size() < count; n += 2) {
        bool prime = true;
        for (u64 d = 3; d * d <= n; d += 2)
            if (n % d == 0) {
                prime = false;
                break;
            }
        if (prime) ps.push_back(n);
    }
    return ps;
}

// f primitive, squarefree, positive leading coefficient, degree >= 1.
std::vector<IntPoly> factor_squarefree(const IntPoly& f) {
    if (f.degree() == 1) return {f};
    static const std::vector<u64> primes = small_primes(400);
    u64 best_p = 0;
    std::size_t best_count = SIZE_MAX;
    int tried = 0;
    for (u64 p : primes) {
        if (!good_prime(f, p)) continue;
        std::size_t count = 0;
        for (const auto& [g, d] : ddf(monic(to_mp(f, p), p), p)) count += static_cast<std::size_t>(deg(g) / d);
        if (count < best_count) {
            best_count = count;
            best_p = p;
        }
        if (count == 1 || ++tried >= 5) break;
    }
    if (best_p == 0) throw std::runtime_error("factor_q: no suitable prime found");
    if (best_count == 1) return {f};
    u64 p = best_p;

    std::vector<MP> locals;
    u64 state = 0x9E3779B97F4A7C15ULL ^ p;
    for (const auto& [g, d] : ddf(monic(to_mp(f, p), p), p)) edf(g, d, p, state, locals);
    std::sort(locals.begin(), locals.end());

    // Coefficient bound for any factor scaled by lc(f).
    Integer norm2sq = 0;
    for (const auto& c : f.coeffs()) norm2sq += c * c;
    Integer norm2;
    mpz_sqrt(norm2.get_mpz_t(), norm2sq.get_mpz_t());
    norm2 += 1;
    Integer bound = abs(f.lead()) * norm2;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(f.degree()));
    bound = 2 * bound + 1;
    unsigned k = 1;
    Integer pk = static_cast<unsigned long>(p);
    while (pk <= bound) {
        pk *= static_cast<unsigned long>(p);
        ++k;
    }

    // Lift the factors one at a time.
    std::vector<IntPoly> lifted;
    IntPoly cur = f;
    u64 lc_p = mpz_fdiv_ui(f.lead().get_mpz_t(), p);
    for (std::size_t j = 0; j + 1 < locals.size(); ++j) {
        MP rest = {lc_p};
        for (std::size_t i = j + 1; i < locals.size(); ++i) rest = mul(rest, locals[i], p);
        IntPoly G, H;
        hensel_lift(cur, locals[j], rest, p, k, G, H);
        lifted.push_back(G);
        cur = H;
    }
    {
        Integer inv;
        mpz_invert(inv.get_mpz_t(), f.lead().get_mpz_t(), pk.get_mpz_t());
        lifted.push_back(reduce_mod(cur.scaled(inv), pk));
    }

    // Recombination over subsets of increasing size.
    std::vector<IntPoly> found;
    IntPoly rem = f;
    std::vector<IntPoly> pool = lifted;
    std::size_t size = 1;
    while (2 * size <= pool.size()) {
        bool hit = false;
        std::vector<std::size_t> idx(size);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            Integer lc = rem.lead();
            Integer c0 = lc;
            for (auto i : idx) c0 = c0 * pool[i].coeff(0) % pk;
            c0 = c0 % pk;
            if (c0 < 0) c0 += pk;
            if (c0 > pk / 2) c0 -= pk;
            Integer r0 = lc * rem.coeff(0);
            bool plausible = c0 != 0 ? mpz_divisible_p(r0.get_mpz_t(), c0.get_mpz_t()) != 0 : r0 == 0;
            if (plausible) {
                IntPoly g(lc);
                for (auto i : idx) g = reduce_mod(g * pool[i], pk);
                g = ipp(symmetric_mod(g, pk));
                IntPoly q;
                if (!g.is_constant() && try_exact_div(rem, g, q)) {
                    found.push_back(g);
                    rem = q;
                    std::vector<IntPoly> next;
                    for (std::size_t i = 0; i < pool.size(); ++i)
                        if (std::find(idx.begin(), idx.end(), i) == idx.end()) next.push_back(pool[i]);
                    pool = std::move(next);
                    hit = true;
                    break;
                }
            }
            // next combination
            std::size_t pos = size;
            while (pos > 0 && idx[pos - 1] == pool.size() - size + pos - 1) --pos;
            if (pos == 0) break;
            ++idx[pos - 1];
            for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!hit) ++size;
    }
    if (!rem.is_constant()) found.push_back(ipp(rem));
    return found;
}

IntPoly prem_step(const IntPoly& a, const IntPoly& b) {
    IntPoly r = a;
    int db = b.degree();
    while (!r.is_zero() && r.degree() >= db) {
        Integer lr = r.lead();
        r = r.scaled(b.lead()) - b.shifted(static_cast<std::size_t>(r.degree() - db)).scaled(lr);
    }
    return r;
}

IntPoly gcd_z(IntPoly a, IntPoly b) {
    if (a.is_zero()) return ipp(b);
    if (b.is_zero()) return ipp(a);
    a = ipp(a);
    b = ipp(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        IntPoly r = prem_step(a, b);
        a = b;
        b = r.is_zero() ? r : ipp(r);
    }
    return ipp(a);
}

IntPoly int_primitive(const RatPoly& p) { return to_int_poly(primitive_part(p)); }

}  // namespace

bool canonical_less(const RatPoly& a, const RatPoly& b) {
    if (a.degree_or_neg() != b.degree_or_neg()) return a.degree_or_neg() < b.degree_or_neg();
    return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(), b.coeffs().end());
}

RatPoly Factorization::product() const {
    RatPoly r(Rational(sign) * content);
    for (const auto& [f, m] : factors) r = r * f.pow(m);
    return r;
}

RatPoly gcd_q(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() && b.is_zero()) throw DomainError("gcd of two zero polynomials");
    IntPoly ia = a.is_zero() ? IntPoly() : int_primitive(a);
    IntPoly ib = b.is_zero() ? IntPoly() : int_primitive(b);
    return to_rat_poly(gcd_z(ia, ib));
}

RatPoly gcd_q(const std::vector<RatPoly>& ps) {
    RatPoly g;
    for (const auto& p : ps) {
        if (p.is_zero()) continue;
        g = g.is_zero() ? primitive_part(p) : gcd_q(g, p);
        if (g.is_constant()) break;
    }
    if (g.is_zero()) throw DomainError("gcd of zero polynomials");
    return g;
}

std::vector<std::pair<RatPoly, unsigned>> squarefree_decomposition(const RatPoly& p) {
    if (p.is_zero()) throw DomainError("squarefree decomposition of the zero polynomial");
    std::vector<std::pair<RatPoly, unsigned>> out;
    RatPoly f = primitive_part(p);
    if (f.is_constant()) return out;
    auto exact = [](const RatPoly& x, const RatPoly& y) {
        RatPoly q, r;
        divmod(x, y, q, r);
        return q;
    };
    RatPoly fd = divided_derivative(f, 1);
    RatPoly a0 = gcd_q(f, fd);
    RatPoly b = exact(f, a0), c = exact(fd, a0);
    RatPoly d = c - divided_derivative(b, 1);
    unsigned i = 1;
    while (!b.is_constant()) {
        RatPoly a = gcd_q(b, d);
        b = exact(b, a);
        c = exact(d, a);
        d = c - divided_derivative(b, 1);
        if (!a.is_constant()) out.emplace_back(primitive_part(a), i);
        ++i;
    }
    return out;
}

Factorization factor_q(const RatPoly& p) {
    if (p.is_zero()) throw DomainError("factor_q of the zero polynomial");
    Factorization fz;
    fz.content = content(p);
    fz.sign = p.lead() < 0 ? -1 : 1;
    for (const auto& [part, mult] : squarefree_decomposition(p))
        for (const auto& g : factor_squarefree(to_int_poly(part))) fz.factors.emplace_back(to_rat_poly(g), mult);
    std::sort(fz.factors.begin(), fz.factors.end(),
              [](const auto& x, const auto& y) { return canonical_less(x.first, y.first); });
    return fz;
}

bool is_irreducible(const RatPoly& p) {
    if (p.is_zero() || p.is_constant()) return false;
    Factorization f = factor_q(p);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

}  // namespace gelfond
