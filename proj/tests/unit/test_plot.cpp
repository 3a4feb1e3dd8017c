#include <doctest.h>

#include "pgnlab/errors.hpp"
#include "pgnlab/plot.hpp"
#include "pgnlab/transfer.hpp"

#include <cmath>
#include <string>

using namespace pgn;

namespace {

int count(const std::string& s, const std::string& what) {
    int k = 0;
    for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++k;
    return k;
}

} // namespace

TEST_CASE("diagram has one polyline per family and index") {
    auto t = parse_target("alg:-2,0,0,1@[1,2]");
    auto grid = q_grid(10, 20, 10);
    auto primal = psi_profile(t, 2, BodyFamily::Primal, grid);
    auto dual = psi_profile(t, 2, BodyFamily::LinearForm, grid);
    auto svg = profile_svg({primal, dual});
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(count(svg, "<polyline") == 6);
    CHECK(count(svg, "stroke-dasharray=\"6,4\" points=") == 3);
    CHECK(svg.find("log\xE2\x82\x81\xE2\x82\x80 Q") != std::string::npos);
    CHECK(svg.find(">\xCF\x88<") != std::string::npos);
    CHECK(count(svg, "<svg") == 1);
    CHECK(count(svg, "</svg>") == 1);
    // -nu*_j is drawn in the colour of psi_{n+2-j}
    auto colour_of = [&](const std::string& label) {
        auto p = svg.find("data-label=\"" + label);
        auto c = svg.find("stroke=\"", p);
        return svg.substr(c + 8, 7);
    };
    CHECK(colour_of("-nu*_1") == colour_of("psi_3"));
    CHECK(colour_of("-nu*_3") == colour_of("psi_1"));
    CHECK(profile_svg({primal, dual}) == svg);
}

TEST_CASE("diagram of nothing is an error") {
    CHECK_THROWS_AS(profile_svg({}), InsufficientData);
    ProfileTable t;
    t.n = 1;
    ProfileRow r;
    r.error = "budget";
    t.rows.push_back(r);
    CHECK_THROWS_AS(profile_svg({t}), InsufficientData);
}

TEST_CASE("uniform table verdicts") {
    auto t = uniform_table(2, 50);
    CHECK(t.rows.size() == 49);
    for (const auto& v : t.verdicts) CHECK(v.status == Status::Pass);
    auto s = uniform_table(2, 10);
    // |deviation| at n = 10 is above 0.1
    CHECK(s.verdicts[1].status == Status::Fail);
    CHECK_THROWS_AS(uniform_table(1, 5), InvalidParameter);
}
