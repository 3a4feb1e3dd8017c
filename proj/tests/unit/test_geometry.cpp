#include <doctest.h>

#include "pgnlab/errors.hpp"
#include "pgnlab/geometry.hpp"

#include <cmath>

using namespace pgn;

namespace {

const RealTarget phi = parse_target("alg:-1,-1,1@[1,2]");
const RealTarget sqrt2 = parse_target("alg:-2,0,1@[1,2]");

double mid(const RationalInterval& v) { return v.mid_double(); }

} // namespace

TEST_CASE("rational powers") {
    auto r = rational_power(100, Rational(1, 2), 64);
    CHECK(r == RationalInterval::point(10));
    auto s = rational_power(10, Rational(1, 3), 80);
    CHECK(!s.is_point());
    CHECK(s.width() / s.lo < Rational(Integer(1), Integer(1) << 79));
    CHECK(std::fabs(mid(s) - std::cbrt(10.0)) < 1e-14);
    auto neg = rational_power(10, Rational(-7, 10), 80);
    CHECK(std::fabs(mid(neg) - std::pow(10.0, -0.7)) < 1e-15);
    CHECK(neg.contains(neg.mid()));
}

TEST_CASE("Q parameter parsing and validation") {
    CHECK(QParam::parse("1e4").base == 10000);
    auto q = QParam::parse("10^(7/2)");
    CHECK(q.exponent == Rational(7, 2));
    CHECK(std::fabs(q.log10() - 3.5) < 1e-12);
    CHECK_THROWS_AS(QParam::exact(1), InvalidParameter);
    CHECK_THROWS_AS(QParam::power(10, Rational(-1)), InvalidParameter);
    CHECK_THROWS_AS(make_body(BodyFamily::Compressed, 2, QParam::exact(10), phi, 0), InvalidParameter);
    CHECK_THROWS_AS(make_body(BodyFamily::ChiB, 2, QParam::exact(10), phi, -1), InvalidParameter);
    auto g = q_grid(10, 60);
    CHECK(g.size() == 51);
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i - 1] < g[i]);
}

TEST_CASE("LinearForm body bounds") {
    auto b = make_body(BodyFamily::LinearForm, 2, QParam::exact(100), sqrt2);
    REQUIRE(b.forms.size() == 3);
    CHECK(b.forms[0].bound.value(b.Q, 64) == RationalInterval::point(10));
    CHECK(b.forms[1].bound.value(b.Q, 64) == RationalInterval::point(10));
    CHECK(b.forms[2].bound.value(b.Q, 64) == RationalInterval::point(Rational(1, 100)));
    CHECK(b.bounded);
}

TEST_CASE("Primal body bounds") {
    auto b = make_body(BodyFamily::Primal, 1, QParam::exact(10), phi);
    CHECK(b.forms[0].bound.value(b.Q, 64) == RationalInterval::point(10));
    CHECK(b.forms[1].bound.value(b.Q, 64) == RationalInterval::point(Rational(1, 10)));
}

TEST_CASE("Compressed body at zeta = 1") {
    auto one = RealTarget::rational(1);
    auto b = make_body(BodyFamily::Compressed, 2, QParam::exact(100), one, 1);
    REQUIRE(b.forms.size() == 4);
    GaugeEvaluator ev(b, natural_lattice(b));
    // derivative form y1 + 2 y2 with bound 10
    auto g = ev.gauge({-5, 5, 0}, 64);
    CHECK(g == RationalInterval::point(Rational(1, 2)));
    auto g2 = ev.gauge({-3, 1, 2}, 64);
    CHECK(g2 == RationalInterval::point(Rational(1, 2)));  // |1 + 4| / 10
    // monotone in c
    auto b2 = make_body(BodyFamily::Compressed, 2, QParam::exact(100), one, 3);
    CHECK(GaugeEvaluator(b2, natural_lattice(b2)).gauge({-3, 1, 2}, 64).hi <= g2.lo);
}

TEST_CASE("slab families are unbounded until intersected") {
    auto Q = QParam::exact(100);
    auto a = make_body(BodyFamily::ChiA, 2, Q, sqrt2);
    auto c = make_body(BodyFamily::ChiC, 2, Q, sqrt2);
    CHECK(!a.bounded);
    CHECK(!c.bounded);
    CHECK(intersect(a, c).bounded);
}

TEST_CASE("gauge examples with the golden ratio") {
    auto Q = QParam::exact(10);
    auto p = make_body(BodyFamily::Primal, 1, Q, phi);
    auto gp = gauge(p, natural_lattice(p), {8, 13});
    CHECK(gp == RationalInterval::point(Rational(4, 5)));
    auto l = make_body(BodyFamily::LinearForm, 1, Q, phi);
    auto gl = gauge(l, natural_lattice(l), {-13, 8});
    CHECK(gl == RationalInterval::point(Rational(4, 5)));
}

TEST_CASE("gauge is positive and homogeneous") {
    auto b = make_body(BodyFamily::LinearForm, 2, QParam::parse("10^(3/2)"), sqrt2);
    GaugeEvaluator ev(b, natural_lattice(b));
    for (IVec v : {IVec{1, 0, 0}, IVec{0, 1, 0}, IVec{-3, 2, 0}, IVec{-2, 0, 1}, IVec{7, -5, 1}}) {
        auto g = ev.gauge(v, 96);
        CHECK(g.lo > 0);
        for (long long k : {-3LL, 2LL, 5LL}) {
            IVec w = v;
            for (auto& c : w) c *= k;
            auto gw = ev.gauge(w, 96);
            auto scaled = Rational(static_cast<long>(std::llabs(k))) * g;
            CHECK(!gw.disjoint(scaled));
        }
        CHECK(std::fabs(static_cast<double>(ev.gauge_ld(v)) - g.mid_double()) <= 1e-12 * g.mid_double());
    }
}

TEST_CASE("embeddings") {
    Lattice plus{LatticeTag::LambdaPlus, sqrt2, 2};
    auto e = embed(plus, {3, -1, 4});
    CHECK(e[0] == RationalInterval::point(3));
    CHECK(e[1] == RationalInterval::point(-1));
    CHECK(e[2] == RationalInterval::point(4));
    auto half = RealTarget::rational(Rational(1, 2));
    auto l = embed(Lattice{LatticeTag::Lambda, half, 1}, {2, 1});
    CHECK(l[0] == RationalInterval::point(2));
    CHECK(l[1] == RationalInterval::point(0));
    auto s = embed(Lattice{LatticeTag::LambdaStar, half, 2}, {1, 2, 4});
    CHECK(s[0] == RationalInterval::point(3));
    CHECK(s[1] == RationalInterval::point(2));
    CHECK(s[2] == RationalInterval::point(4));
}

TEST_CASE("embeddings are unimodular") {
    for (auto tag : {LatticeTag::Lambda, LatticeTag::LambdaStar, LatticeTag::LambdaPlus})
        for (int n = 1; n <= 4; ++n) {
            auto det = embedding_determinant(Lattice{tag, phi, n});
            REQUIRE(degree(det) == 0);
            CHECK(::abs(det[0]) == 1);
        }
}

TEST_CASE("exact ties are detected symbolically") {
    auto b = make_body(BodyFamily::LinearForm, 2, QParam::exact(1000), sqrt2);
    GaugeEvaluator ev(b, natural_lattice(b));
    // |-99 + 70 sqrt2| = |99 - 70 sqrt2| dominate both gauges
    CHECK(ev.compare({-417, 70, 159}, {101, -70, -1}) == Ordering::Equal);
    CHECK(ev.compare({1, 0, 0}, {0, 1, 0}) == Ordering::Less);
    auto one = make_body(BodyFamily::LinearForm, 2, QParam::exact(100), RealTarget::rational(1));
    GaugeEvaluator e1(one, natural_lattice(one));
    CHECK(e1.compare({0, 1, 2}, {0, 2, 1}) == Ordering::Equal);
}

TEST_CASE("sandwich chain on the reciprocal box") {
    auto b = make_body(BodyFamily::Primal, 2, QParam::exact(1000), sqrt2);
    Lattice lam{LatticeTag::Lambda, sqrt2, 2};
    for (IVec v : {IVec{1, 1, 2}, IVec{12, 17, 24}, IVec{0, 1, 0}, IVec{408, 577, 816}}) {
        auto z = embed(lam, v);
        // scale points onto the polar side
        for (auto& c : z) c = Rational(1, 1000) * c;
        auto r = sandwich_check(b, z);
        CHECK(r.consistent);
    }
    // explicit polar point: pairing exactly 1
    auto b100 = make_body(BodyFamily::Primal, 2, QParam::exact(100), sqrt2);
    std::vector<RationalInterval> z{RationalInterval::point(Rational(1, 300)), RationalInterval::point(Rational(10, 3)),
                                    RationalInterval::point(Rational(10, 3))};
    auto r = sandwich_check(b100, z);
    CHECK(r.polar == Ordering::Equal);
    CHECK(r.box == Ordering::Less);
    CHECK(r.consistent);
}

TEST_CASE("body json dump") {
    auto b = make_body(BodyFamily::Compressed, 2, QParam::parse("10^(1/2)"), sqrt2, Rational(3, 2));
    auto s = body_to_json(b);
    CHECK(s.find("\"q_exponent\": \"1/2\"") != std::string::npos);
    CHECK(s.find("\"factor\": \"3/2\"") != std::string::npos);
}
