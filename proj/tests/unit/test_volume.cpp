#include <doctest.h>

#include "pgnlab/errors.hpp"
#include "pgnlab/volume.hpp"

#include <cmath>
#include <random>

using namespace pgn;

namespace {

using Pt = std::pair<Rational, Rational>;

// Clip a convex polygon by a.p <= r (Sutherland-Hodgman, exact).
std::vector<Pt> clip(const std::vector<Pt>& poly, const Rational& a1, const Rational& a2, const Rational& r) {
    std::vector<Pt> out;
    auto val = [&](const Pt& p) -> Rational { return a1 * p.first + a2 * p.second - r; };
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Pt& p = poly[i];
        const Pt& q = poly[(i + 1) % poly.size()];
        Rational vp = val(p), vq = val(q);
        if (sgn(vp) <= 0) out.push_back(p);
        if ((sgn(vp) < 0 && sgn(vq) > 0) || (sgn(vp) > 0 && sgn(vq) < 0)) {
            Rational t = vp / (vp - vq);
            out.push_back({p.first + t * (q.first - p.first), p.second + t * (q.second - p.second)});
        }
    }
    return out;
}

Rational polygon_area(const std::vector<Pt>& p) {
    Rational s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Pt& a = p[i];
        const Pt& b = p[(i + 1) % p.size()];
        s += a.first * b.second - a.second * b.first;
    }
    return ::abs(s) / 2;
}

Rational planar_oracle(const Rational& b1, const Rational& b2, const Rational& rho) {
    std::vector<Pt> sq{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    auto p = clip(sq, b1, b2, rho);
    p = clip(p, -b1, -b2, rho);
    return p.size() < 3 ? Rational(0) : polygon_area(p);
}

} // namespace

TEST_CASE("analytic slab volumes") {
    CHECK(slab_cube_volume({1, 2}, 3) == 4);
    CHECK(slab_cube_volume({1, 2}, 0) == 0);
    CHECK(slab_cube_volume({1, 2}, 1) == 2);
    CHECK(slab_cube_volume({1, 2}, 100) == 4);
    CHECK(slab_cube_volume({1}, Rational(1, 2)) == 1);
    CHECK(slab_cube_volume({0, 0, 5}, 1) == Rational(8, 5));
    CHECK(slab_cube_volume({-1, 2}, 1) == 2);
    CHECK_THROWS_AS(slab_cube_volume({0, 0}, 1), DegenerateNormal);
    CHECK_THROWS_AS(slab_cube_volume({1, 1}, -1), InvalidParameter);
}

TEST_CASE("planar volumes match polygon clipping") {
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<int> d(-9, 9), r(0, 40);
    for (int k = 0; k < 300; ++k) {
        Rational b1(d(gen), 3), b2(d(gen), 4), rho(r(gen), 7);
        b1.canonicalize();
        b2.canonicalize();
        rho.canonicalize();
        if (sgn(b1) == 0 && sgn(b2) == 0) continue;
        CHECK(slab_cube_volume({b1, b2}, rho) == planar_oracle(b1, b2, rho));
    }
}

TEST_CASE("slab volume properties") {
    std::vector<Rational> b{Rational(3, 2), Rational(-1), Rational(5, 7)};
    Rational prev = -1;
    for (int k = 0; k <= 40; ++k) {
        Rational rho(k, 10);
        rho.canonicalize();
        auto v = slab_cube_volume(b, rho);
        CHECK(v >= prev);
        CHECK(v >= 0);
        CHECK(v <= 8);
        prev = v;
        std::vector<Rational> kb;
        for (auto& x : b) kb.push_back(Rational(5, 3) * x);
        CHECK(slab_cube_volume(kb, Rational(5, 3) * rho) == v);
    }
    CHECK(slab_cube_volume(b, Rational(3, 2) + 1 + Rational(5, 7)) == 8);
}

TEST_CASE("interval slab volumes enclose the point volumes") {
    SlabCubeInstance inst;
    inst.b = {RationalInterval(Rational(99, 100), Rational(101, 100)), RationalInterval::point(2)};
    inst.rho = RationalInterval::point(1);
    auto v = slab_cube_volume(inst);
    CHECK(v.contains(2));
    CHECK(v.width() < Rational(1, 20));
    inst.b = {RationalInterval(Rational(-1, 100), Rational(1, 100)), RationalInterval(Rational(-1), Rational(1, 100))};
    CHECK_NOTHROW(slab_cube_volume(inst));
    CHECK(slab_cube_volume(inst).hi == 4);
}

TEST_CASE("Monte Carlo oracle") {
    auto full = monte_carlo_volume({1, 2}, 3, 100000, 1);
    CHECK(full.estimate == 4);
    CHECK(full.sigma == 0);
    auto a = monte_carlo_volume({1, 2}, 1, 1000000, 42);
    CHECK(std::fabs(a.estimate - 2) <= 4 * a.sigma);
    auto b = monte_carlo_volume({1, 2}, 1, 1000000, 42);
    CHECK(a.estimate == b.estimate);
    CHECK_THROWS_AS(monte_carlo_volume({1, 2}, 1, 100, 1), InvalidParameter);
}

TEST_CASE("randomized exact versus Monte Carlo") {
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<int> d(-12, 12);
    int fails = 0, total = 0;
    for (int n = 2; n <= 4; ++n)
        for (int k = 0; k < 6; ++k) {
            std::vector<Rational> b;
            std::vector<double> bd;
            Rational sum = 0;
            for (int t = 0; t < n; ++t) {
                int x = d(gen);
                if (x == 0) x = 1;
                b.push_back(Rational(x, 4));
                bd.push_back(x / 4.0);
                sum += ::abs(b.back());
            }
            Rational rho = sum * Rational(k + 1, 8);
            rho.canonicalize();
            auto exact = slab_cube_volume(b, rho).get_d();
            auto mc = monte_carlo_volume(bd, rho.get_d(), 200000, 100 * n + k);
            ++total;
            if (std::fabs(exact - mc.estimate) > 4 * mc.sigma + 1e-12) ++fails;
        }
    CHECK(fails == 0);
    CHECK(total == 18);
}

TEST_CASE("compressed volumes at zeta = 1") {
    auto one = RealTarget::rational(1);
    auto Q = QParam::exact(10);
    CHECK(compressed_volume(2, Q, one, 3) == RationalInterval::point(8));
    CHECK(compressed_volume(2, Q, one, 1) == RationalInterval::point(4));
    CHECK(compressed_volume(2, Q, one, 0) == RationalInterval::point(0));
    CHECK(compressed_volume(2, QParam::exact(10000), one, 1) == RationalInterval::point(4));
    CHECK(compressed_volume(2, Q, one, 1000) == RationalInterval::point(8));
}

TEST_CASE("compression solver") {
    auto one = RealTarget::rational(1);
    auto s = solve_compression(2, QParam::exact(10), one);
    CHECK(s.target_volume == Rational(2, 3));
    CHECK(s.c.lo > 0);
    CHECK(s.c.hi < 1);
    Rational eps(Integer(1), Integer(1) << 50);
    CHECK(::abs(s.residual.lo) < eps);
    CHECK(::abs(s.residual.hi) < eps);
    // exact root: 2 V((1,2), c) = 4c for c <= 1, so c = 1/6
    CHECK(s.c.contains(Rational(1, 6)));
    auto s4 = solve_compression(2, QParam::exact(10000), one);
    CHECK(s4.c == s.c);

    auto sqrt2 = parse_target("alg:-2,0,1@[1,2]");
    auto a = solve_compression(3, QParam::exact(10), sqrt2);
    auto b = solve_compression(3, QParam::parse("10^(9/2)"), sqrt2);
    CHECK(a.c == b.c);
    CHECK(::abs(a.residual.lo) < eps);
    CHECK(::abs(a.residual.hi) < eps);
    CHECK(a.c.width() <= a.c.hi * Rational(Integer(1), Integer(1) << 52));
}

TEST_CASE("lemma ratio") {
    auto one = RealTarget::rational(1);
    auto r = lemma_ratio(2, QParam::exact(100), 10, one);
    CHECK(r.rho == RationalInterval::point(1));
    CHECK(r.vol == RationalInterval::point(4));
    CHECK(r.ratio == RationalInterval::point(4));
    CHECK(!r.saturated);
    auto r2 = lemma_ratio(2, QParam::exact(10000), 100, one);
    CHECK(r2.ratio == r.ratio);
    auto small = lemma_ratio(2, QParam::exact(100), Rational(1, 100000), one);
    CHECK(small.ratio == RationalInterval::point(4));  // V((1,2), rho) = 2 rho near 0
    CHECK(lemma_ratio(2, QParam::exact(100), 1000, one).saturated);
    CHECK_THROWS_AS(lemma_ratio(1, QParam::exact(100), 1, one), InvalidParameter);
}

TEST_CASE("lemma sweep bounds") {
    auto t = parse_target("alg:-2,0,0,1@[1,2]");
    auto sw = lemma_sweep(3, t, q_grid(10, 50, 10), log_spaced(1e-3, 1, 7), 2);
    CHECK(sw.rows.size() == 287);
    CHECK(sw.F > 0);
    CHECK(sw.E >= sw.F);
    CHECK(std::isfinite(sw.E));
    CHECK(sw.B > 0);
    auto c = solve_compression(3, QParam::exact(10), t);
    CHECK(c.c.lo.get_d() >= sw.B * (1 - 1e-12));
    CHECK(sweep_to_csv(sw).find("Q,R,rho,vol_lo,vol_hi,ratio") != std::string::npos);
}
