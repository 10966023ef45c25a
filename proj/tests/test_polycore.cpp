#include <doctest.h>

#include "gelfond/polycore.hpp"
#include "gelfond/random.hpp"

#include <numeric>

using namespace gelfond;

namespace {

RatPoly P(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return RatPoly(v);
}

std::vector<Rational> Q(std::initializer_list<const char*> c) {
    std::vector<Rational> v;
    for (auto s : c) v.push_back(parse_rational(s));
    return v;
}

// gcd of numerators over lcm of denominators, with machine integers.
Rational content_oracle(const std::vector<std::pair<long, long>>& v) {
    long g = 0, l = 1;
    for (auto [p, q] : v) {
        long d = std::gcd(p, q);
        p /= d;
        q /= d;
        g = std::gcd(g, std::labs(p));
        l = std::lcm(l, std::labs(q));
    }
    return Rational(g, l);
}

// j-th derivative by repeated differentiation, then divided by j!.
RatPoly derivative_oracle(RatPoly p, unsigned j) {
    for (unsigned r = 0; r < j; ++r) {
        std::vector<Rational> v;
        for (std::size_t k = 1; k < p.size(); ++k) v.push_back(p[k] * Rational(long(k)));
        p = RatPoly(v);
    }
    return p.scaled(Rational(1) / Rational(factorial(j)));
}

bool contains_decimal(const Interval& iv, const char* dec) {
    BigFloat x(256);
    mpfr_set_str(x.get(), dec, 10, MPFR_RNDN);
    return mpfr_lessequal_p(iv.lo().get(), x.get()) && mpfr_lessequal_p(x.get(), iv.hi().get());
}

}  // namespace

TEST_CASE("content and heights of vectors") {
    CHECK(content(Q({"2", "4", "6"})) == 2);
    CHECK(content(Q({"1/3", "2", "1/6"})) == content_oracle({{1, 3}, {2, 1}, {1, 6}}));
    CHECK(content(Q({"1/3", "2", "1/6"})) == Rational(1, 6));
    CHECK(content(Q({"5"})) == 5);
    CHECK_THROWS_AS(content(Q({"0", "0"})), DomainError);

    CHECK(height_point(Q({"2", "4", "6"})) == 3);
    CHECK(height_point(Q({"1", "0"})) == 1);
    CHECK(height_point(Q({"3", "6", "1"})) == 6);

    CHECK(height_rational(Rational(3, 2)) == 3);
    CHECK(height_rational(0) == 1);
    CHECK(height_rational(Rational(-7, 3)) == 7);
}

TEST_CASE("content oracle on random vectors") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::pair<long, long>> raw;
        std::vector<Rational> v;
        int len = static_cast<int>(rng.uniform(1, 6));
        for (int i = 0; i < len; ++i) {
            long p = rng.uniform(-60, 60), q = rng.uniform(1, 30);
            raw.emplace_back(p, q);
            Rational r(p, q);
            r.canonicalize();
            v.push_back(r);
        }
        bool zero = std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
        if (zero) continue;
        CHECK(content(v) == content_oracle(raw));
        CHECK(height_point(v) >= 1);
    }
}

TEST_CASE("divided derivatives") {
    CHECK(divided_derivative(P({0, 0, 0, 1}), 2) == P({0, 3}));
    RatPoly p = P({5, -1, 3});
    CHECK(divided_derivative(p, 0) == p);
    CHECK(divided_derivative(P({0, 1, 2}), 1) == P({1, 4}));
    CHECK(divided_derivative(p, 3).is_zero());

    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        RatPoly f = rng.rat_poly(static_cast<int>(rng.uniform(0, 14)), 9, 5);
        for (unsigned i = 0; i <= 6; ++i)
            for (unsigned j = 0; j <= 6; ++j) {
                RatPoly lhs = divided_derivative(divided_derivative(f, i), j);
                RatPoly rhs = divided_derivative(f, i + j).scaled(Rational(binomial(i + j, i)));
                CHECK(lhs == rhs);
                CHECK(divided_derivative(f, j) == derivative_oracle(f, j));
            }
    }
}

TEST_CASE("poly metrics") {
    auto m = poly_metrics(P({4, 2}));
    CHECK(m.norm == 4);
    CHECK(m.content == 2);
    CHECK(m.height == 2);
    m = poly_metrics(P({1, -1, 1}));
    CHECK((m.norm == 1 && m.content == 1 && m.height == 1));
    m = poly_metrics(RatPoly({Rational(1), Rational(1, 2)}));
    CHECK(m.norm == 1);
    CHECK(m.content == Rational(1, 2));
    CHECK(m.height == 2);
    CHECK_THROWS_AS(poly_metrics(RatPoly()), DomainError);
    CHECK_THROWS_AS(RatPoly().degree(), DomainError);
}

TEST_CASE("height is scale invariant, content scales") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        RatPoly f = rng.rat_poly(static_cast<int>(rng.uniform(0, 8)), 20, 7);
        Rational a = rng.nonzero_rational(30, 11);
        CHECK(height(f.scaled(a)) == height(f));
        CHECK(content(f.scaled(a)) == abs(a) * content(f));
    }
}

TEST_CASE("gauss chains") {
    CHECK(check_gauss_bounds({P({-1, 1}), P({1, 1})}).holds());
    CHECK(check_gauss_bounds({P({7, 0, 2})}).holds());
    CHECK(check_gauss_bounds({P({3})}).holds());
    Verdict v = check_gauss_bounds({P({2, 2}), P({-3, 3})});
    CHECK(v.holds());
    CHECK(height(P({2, 2}) * P({-3, 3})) == 1);

    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        int s = static_cast<int>(rng.uniform(1, 5));
        std::vector<RatPoly> fs;
        int budget = 30;
        for (int i = 0; i < s; ++i) {
            int d = static_cast<int>(rng.uniform(0, std::min(8, budget)));
            budget -= d;
            fs.push_back(rng.rat_poly(d, 12, 4));
        }
        Verdict g = check_gauss_bounds(fs);
        CHECK(g.holds());
        CHECK(g.precision_bits() <= 4096);
    }
}

TEST_CASE("evaluation enclosures") {
    auto five = eval_enclosure(P({1, 0, 1}), ComplexEnclosure::exact(2), 64);
    REQUIRE(five.is_exact());
    CHECK(five.exact_value() == GaussRat(5));

    auto r2 = eval_enclosure(P({0, 1}), ComplexEnclosure::sqrt_of(2), 64);
    CHECK(contains_decimal(r2.at(64).re, "1.41421356237309504880"));

    auto z = eval_enclosure(RatPoly(), ComplexEnclosure::sqrt_of(3), 64);
    REQUIRE(z.is_exact());
    CHECK(z.exact_value().is_zero());

    // Doubling the precision never widens the enclosure.
    Rng rng(23);
    ComplexEnclosure pts[] = {ComplexEnclosure::sqrt_of(2), ComplexEnclosure::sqrt_of(Rational(7, 3)),
                              ComplexEnclosure::from_decimal("0.7071067811865475244", "-1.25", 200)};
    for (int trial = 0; trial < 30; ++trial) {
        RatPoly f = rng.rat_poly(static_cast<int>(rng.uniform(0, 10)), 30, 9);
        for (const auto& p : pts) {
            for (long bits : {64L, 128L, 256L}) {
                ComplexInterval base = eval_interval(f, p.at(bits));
                ComplexInterval fine = eval_interval(f, p.at(2 * bits));
                CHECK(base.contains(fine));
            }
        }
    }
}

TEST_CASE("point set metrics") {
    auto m = point_set_metrics(EvalPointSet::exact({0, 2}), 128);
    CHECK(*m.delta_exact == 2);
    CHECK(*m.Delta_exact == 2);
    m = point_set_metrics(EvalPointSet::exact({7}), 128);
    CHECK(*m.delta_exact == 1);
    CHECK(*m.Delta_exact == 1);
    CHECK(*m.c_exact == 7);
    m = point_set_metrics(EvalPointSet::exact({0, 1, 3}), 128);
    CHECK(*m.delta_exact == 1);
    CHECK(*m.Delta_exact == 6);
    CHECK(contains_decimal(m.Delta, "6"));

    m = point_set_metrics(EvalPointSet::exact({1, 1}), 128);
    CHECK(*m.delta_exact == 0);
    CHECK(delta_vanishes(EvalPointSet::exact({1, 1}), Precision::defaults()));

    // Δ_E^2 equals the product of squared distances over unordered pairs.
    Rng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ComplexEnclosure> pts;
        std::vector<GaussRat> raw;
        int k = static_cast<int>(rng.uniform(2, 5));
        for (int i = 0; i < k; ++i) {
            GaussRat g(rng.rational(20, 6), rng.rational(20, 6));
            raw.push_back(g);
            pts.push_back(ComplexEnclosure::exact(g));
        }
        Rational sq = 1;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) sq *= (raw[j] - raw[i]).norm2();
        auto mm = point_set_metrics(EvalPointSet(pts), 256);
        Interval D2 = sqr(mm.Delta);
        Interval oracle = Interval::from_q(sq, 256);
        CHECK(mpfr_lessequal_p(D2.lo().get(), oracle.hi().get()));
        CHECK(mpfr_lessequal_p(oracle.lo().get(), D2.hi().get()));
    }
}

TEST_CASE("text formats") {
    CHECK(parse_poly("4 2") == P({4, 2}));
    CHECK(format_poly(parse_poly("1/2 0 -3")) == "1/2 0 -3");
    CHECK(pretty_poly(P({2, -2, 1})) == "T^2 - 2*T + 2");
    CHECK_THROWS_AS(parse_poly("1 x"), ParseError);
    EvalPointSet e = parse_points("1/2 0\n3 -1\n");
    REQUIRE(e.size() == 2);
    CHECK(e[1].exact_value() == GaussRat(3, -1));
    EvalPointSet d = parse_points("#bits=100\n1.5 0\n");
    REQUIRE(d.size() == 1);
    CHECK(!d[0].is_exact());
    CHECK(d[0].is_real());
    CHECK(contains_decimal(d[0].at(128).re, "1.5"));
    CHECK(parse_rational("-1.25e1") == Rational(-25, 2));
}

TEST_CASE("verdict decisions") {
    Interval a = Interval::from_si(1, 64), b = Interval::from_si(2, 64);
    CHECK(decide(a, b, Rel::LE) == Outcome::Holds);
    CHECK(decide(b, a, Rel::LE) == Outcome::Fails);
    CHECK(decide(a, a, Rel::LE) == Outcome::Holds);
    CHECK(decide(a, a, Rel::LT) == Outcome::Fails);
    Interval wide = hull(a, b);
    CHECK(decide(wide, Interval::from_q(Rational(3, 2), 64), Rel::LE) == Outcome::Undecided);
    Check c = certify("overlap", [&](long) { return IntervalPair(wide, b - Interval::from_q(Rational(1, 2), 64)); },
                      Precision{128, 512});
    CHECK(c.outcome == Outcome::Undecided);
    CHECK(c.bits == 512);
    CHECK(PosReal::parse("3^4").exact() == Rational(81));
    CHECK(PosReal::parse("e^5/2").exact_log() == Rational(5, 2));
}
