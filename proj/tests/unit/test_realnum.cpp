#include <doctest.h>

#include "pgnlab/errors.hpp"
#include "pgnlab/realnum.hpp"

#include <cmath>

using namespace pgn;

namespace {

Rational pow2neg(int p) { return Rational(Integer(1), Integer(1) << p); }

} // namespace

TEST_CASE("rational targets are exact") {
    auto t = RealTarget::rational(Rational(1, 3));
    auto iv = t.approximate(10);
    CHECK(iv.is_point());
    CHECK(iv.lo == Rational(1, 3));
    CHECK(t.degree_bound().value() == 1);
    auto f = eval_form({Rational(-1), Rational(3)}, t, 10);
    CHECK(f == RationalInterval::point(0));
}

TEST_CASE("algebraic sqrt2 enclosure") {
    auto t = parse_target("alg:-2,0,1@[1,2]");
    CHECK(t.kind() == TargetKind::Algebraic);
    CHECK(t.degree_bound().value() == 2);
    auto iv = t.approximate(20);
    CHECK(iv.width() <= pow2neg(20));
    // sign change of x^2 - 2 across the enclosure
    CHECK(iv.lo * iv.lo < 2);
    CHECK(iv.hi * iv.hi > 2);
    CHECK(std::fabs(iv.mid_double() - std::sqrt(2.0)) < 1e-6);
}

TEST_CASE("nesting across precisions") {
    for (const char* spec : {"alg:-2,0,1@[1,2]", "alg:-1,-1,1@[1,2]", "alg:-2,0,0,1@[1,2]", "lac:10,factorial"}) {
        auto t = parse_target(spec);
        RationalInterval prev = t.approximate(1);
        for (int p = 2; p < 200; p += 7) {
            auto cur = t.approximate(p);
            CHECK(cur.subset_of(prev));
            CHECK(cur.width() <= pow2neg(p));
            prev = cur;
        }
    }
}

TEST_CASE("lacunary series") {
    auto t = parse_target("lac:10,factorial");
    auto iv = t.approximate(30);
    CHECK(iv.width() <= pow2neg(30));
    // 0.110001000000000000000001...
    Rational s = Rational(1, 10) + Rational(1, 100) + Rational(1, 1000000);
    CHECK(iv.contains(s + Rational(Integer(1), Integer("1000000000000000000000000"))));
    CHECK(!t.degree_bound().has_value());
}

TEST_CASE("eval_form examples") {
    auto s2 = parse_target("alg:-2,0,1@[1,2]");
    auto z = eval_form({Rational(0), Rational(0), Rational(0)}, s2, 10);
    CHECK(z == RationalInterval::point(0));
    auto c = eval_form({Rational(1), Rational(0), Rational(0)}, s2, 10);
    CHECK(c == RationalInterval::point(1));
    auto v = eval_form({Rational(-3), Rational(2)}, s2, 30);
    CHECK(v.width() <= pow2neg(30) * 6);
    CHECK(std::fabs(v.mid_double() - (2 * std::sqrt(2.0) - 3)) < 1e-8);
}

TEST_CASE("certified compare") {
    auto s2 = parse_target("alg:-2,0,1@[1,2]");
    CHECK(certified_compare(lazy_constant(Rational(1, 2)), lazy_constant(Rational(1, 2))) == Ordering::Equal);
    CHECK(certified_compare(lazy_target(s2), lazy_constant(parse_rational("1.414"))) == Ordering::Greater);
    auto sq = [s2](int bits) {
        auto a = s2.approximate(bits + 4);
        return a * a;
    };
    CHECK(certified_compare(sq, lazy_constant(2), 512) == Ordering::Undecided);
    // polynomial route decides the same tie exactly
    CHECK(certified_compare_poly(s2, RatPoly{0, 0, 1}, RatPoly{2}) == Ordering::Equal);
    CHECK(certified_compare_poly(s2, RatPoly{0, 1}, RatPoly{Rational(3, 2)}) == Ordering::Less);
    CHECK(is_exact_root(s2, RatPoly{-2, 0, 1}));
    CHECK(!is_exact_root(s2, RatPoly{-3, 2}));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_target("foo:1"), ParseError);
    try {
        parse_target("alg:-2,x,1@[1,2]");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.position() == 7);
    }
    try {
        parse_target("rat:1/0");
        FAIL("no throw");
    } catch (const ParseError& e) {
        CHECK(e.position() == 6);
    }
    // interval containing both roots of x^2 - 2
    CHECK_THROWS_AS(parse_target("alg:-2,0,1@[-2,2]"), ParseError);
    // reducible: rational root
    CHECK_THROWS_AS(parse_target("alg:-1,0,1@[0,2]"), ParseError);
    CHECK_THROWS_AS(parse_target("lac:1,factorial"), ParseError);
}

TEST_CASE("decimal literals denote exact values") {
    auto t = parse_target("dec:0.12345");
    CHECK(t.is_rational());
    CHECK(t.rational_value() == parse_rational("2469/20000"));
    CHECK(t.id() == "dec:0.12345");
}
