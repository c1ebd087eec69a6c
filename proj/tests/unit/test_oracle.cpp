#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "hmt/oracle.hpp"

using namespace hmt;

TEST_SUITE("oracle") {

TEST_CASE("moment relation") {
    OracleRing tate(fx::tate());
    auto zw = tate.multiply(tate.z(0), tate.w(0));
    OracleElement expect;
    expect.add(Label{0}, Laurent::monomial(tate.qbar()[0]) - Laurent::constant(1, 1));
    CHECK(zw == expect);
    CHECK(tate.multiply(tate.one(), tate.z(0)) == tate.z(0));

    OracleRing a1(fx::a1hat());
    CHECK(a1.qbar()[0] == Label{-a1.qbar()[1][0]});
    auto lhs = a1.multiply(a1.monomial(Label{1, 1}), a1.monomial(Label{-1, -1}));
    auto m = Laurent::monomial(a1.qbar()[0]);
    auto mi = Laurent::monomial(a1.qbar()[1]);
    OracleElement rhs;
    rhs.add(Label{0, 0}, (m - Laurent::constant(1, 1)) * (mi - Laurent::constant(1, 1)));
    CHECK(lhs == rhs);

    OracleRing neg(fx::a1hat(), {-1, 1});
    auto zw2 = neg.multiply(neg.z(0), neg.w(0));
    CHECK(zw2.terms.at(Label{0, 0}).coefficient(neg.qbar()[0]) == -1);
}

TEST_CASE("weights") {
    OracleRing a1(fx::a1hat());
    CHECK(a1.restriction(Label{0, 0}) == std::vector<Integer>{0});
    CHECK(a1.restriction(Label{1, -1}) == std::vector<Integer>{0});
    OracleRing tate(fx::tate());
    CHECK(tate.restriction(Label{1}).empty());
    std::mt19937 rng(9);
    OracleRing tri(fx::triangle());
    for (int t = 0; t < 50; ++t) {
        Label a(3), b(3);
        for (auto& v : a) v = static_cast<std::int64_t>(rng() % 5) - 2;
        for (auto& v : b) v = static_cast<std::int64_t>(rng() % 5) - 2;
        auto prod = tri.multiply(tri.monomial(a), tri.monomial(b));
        for (const auto& [d, c] : prod.terms) CHECK(tri.restriction(d) == tri.restriction(add(a, b)));
    }
}

TEST_CASE("associativity of renormalization") {
    std::mt19937 rng(13);
    for (const auto& d : {fx::triangle(), fx::rank2(), fx::a1hat()}) {
        OracleRing ring(d, std::vector<int>(d.n(), 1));
        auto rnd = [&] {
            Label x(d.n());
            for (auto& v : x) v = static_cast<std::int64_t>(rng() % 5) - 2;
            Label c(ring.rank());
            for (auto& v : c) v = static_cast<std::int64_t>(rng() % 3) - 1;
            return ring.monomial(x, c, Rational(static_cast<long>(rng() % 5) + 1));
        };
        for (int t = 0; t < 30; ++t) {
            auto a = rnd(), b = rnd(), c = rnd();
            CHECK(ring.multiply(ring.multiply(a, b), c) == ring.multiply(a, ring.multiply(b, c)));
            CHECK(ring.multiply(a, b) == ring.multiply(b, a));
        }
    }
}

TEST_CASE("basis change is unimodular") {
    for (const auto& d : {fx::tate(), fx::a1hat(), fx::triangle(), fx::rank2()}) {
        OracleRing ring(d);
        auto t = oracle_basis_change(ring, d);
        REQUIRE(t.has_value());
        for (std::size_t i = 0; i < d.n(); ++i) {
            auto img = t->apply(d.quotient().coord_chars[i]);
            CHECK(to_label(img) == ring.qbar()[i]);
        }
    }
}

TEST_CASE("tilting and corner checks") {
    auto t1 = verify_tilting_iso(fx::tate(), fx::lift({}), 4);
    CHECK(t1.pass);
    CHECK(t1.ranks.at(0) == std::vector<std::size_t>{9, 18, 18, 18, 18, 9, 18, 18, 18, 18});
    auto a1 = verify_tilting_iso(fx::a1hat(), fx::half(), 3);
    CHECK(a1.pass);
    CHECK(a1.stats.at("products") > 0);
    auto neg = verify_tilting_iso(fx::a1hat(), fx::half(), 3, OracleOptions{0});
    CHECK_FALSE(neg.pass);
    REQUIRE_FALSE(neg.mismatches.empty());
    CHECK(neg.mismatches.front().find("->") != std::string::npos);
    CHECK(verify_invariant_corner(fx::a1hat(), fx::lift({Rational(1, 2)}, {-1, 1}), 3).pass);
    CHECK(verify_invariant_corner(fx::triangle(), fx::half(), 2).pass);
    CHECK_FALSE(verify_invariant_corner(fx::tate(), fx::lift({}), 2, OracleOptions{0}).pass);
    CHECK_THROWS_AS(verify_tilting_iso(fx::orbifold(), fx::half(), 2), OrbifoldUnsupported);
    CHECK_THROWS_AS(verify_tilting_iso(fx::a1hat(), fx::lift({Rational(1)}), 2), NonGenericParameter);
    auto j = to_json(t1);
    CHECK(j["status"] == "pass");
}

}
