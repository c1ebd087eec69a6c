#include <doctest.h>

#include <random>

#include "hmt/lp.hpp"

using namespace hmt;
using namespace hmt::lp;

namespace {
Constraint le(std::vector<Rational> a, Rational b) { return {std::move(a), Relation::LessEq, b}; }
Constraint lt(std::vector<Rational> a, Rational b) { return {std::move(a), Relation::Less, b}; }
Constraint eq(std::vector<Rational> a, Rational b) { return {std::move(a), Relation::Equal, b}; }
}  // namespace

TEST_SUITE("lp") {

TEST_CASE("bounded optimum") {
    // max x + y, x + 2y <= 4, 3x + y <= 6, x,y >= 0
    auto r = maximize(2, {le({1, 2}, 4), le({3, 1}, 6), le({-1, 0}, 0), le({0, -1}, 0)}, {1, 1});
    REQUIRE(r.status == Status::Optimal);
    CHECK(r.value == Rational(14, 5));
    CHECK(r.point[0] == Rational(8, 5));
    CHECK(r.point[1] == Rational(6, 5));
}

TEST_CASE("infeasible and unbounded") {
    CHECK(maximize(1, {le({1}, 0), le({-1}, -1)}, {0}).status == Status::Infeasible);
    CHECK(maximize(1, {le({-1}, 0)}, {1}).status == Status::Unbounded);
    CHECK(maximize(2, {eq({1, 1}, 1), eq({2, 2}, 2)}, {1, 0}).status == Status::Unbounded);
}

TEST_CASE("strict feasibility") {
    // 0 < x < 1 feasible, 0 < x < 0 not, 0 <= x <= 0 is
    CHECK(feasible(1, {lt({-1}, 0), lt({1}, 1)}));
    CHECK_FALSE(feasible(1, {lt({-1}, 0), lt({1}, 0)}));
    CHECK(feasible(1, {le({-1}, 0), le({1}, 0)}));
    // open triangle x,y > 0, x + y < 1/2, with the point checked
    auto p = relative_interior_point(2, {lt({-1, 0}, 0), lt({0, -1}, 0), lt({1, 1}, Rational(1, 2))});
    REQUIRE(p);
    CHECK((*p)[0] > 0);
    CHECK((*p)[1] > 0);
    CHECK((*p)[0] + (*p)[1] < Rational(1, 2));
}

TEST_CASE("random boxes agree with direct reasoning") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> v(-5, 5);
    for (int t = 0; t < 200; ++t) {
        Rational lo1(v(rng), 2), hi1(v(rng), 2), lo2(v(rng), 3), hi2(v(rng), 3);
        Rational s(v(rng), 4);
        // lo1 < x < hi1, lo2 < y < hi2, x + y = s
        bool expect = lo1 < hi1 && lo2 < hi2 && lo1 + lo2 < s && s < hi1 + hi2;
        bool got = feasible(2, {lt({-1, 0}, -lo1), lt({1, 0}, hi1), lt({0, -1}, -lo2), lt({0, 1}, hi2),
                                eq({1, 1}, s)});
        CHECK(got == expect);
    }
}

}
