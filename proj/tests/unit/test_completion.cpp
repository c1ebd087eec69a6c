#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "hmt/completion.hpp"

using namespace hmt;

namespace {

Rational coeff(const TruncatedSeries& s, std::int64_t j) { return s.rational_coefficient(Label{j}); }

}  // namespace

TEST_SUITE("completion") {

TEST_CASE("gamma and delta coefficients") {
    auto g = build_gamma_series(3);
    CHECK(coeff(g, 0) == 1);
    CHECK(coeff(g, 1) == Rational(-1, 2));
    CHECK(coeff(g, 2) == Rational(1, 3));
    CHECK(coeff(g, 3) == Rational(-1, 4));
    CHECK(g.terms().size() == 4);
    CHECK(build_gamma_series(0).terms().size() == 1);
    auto d = build_delta_series(2);
    CHECK(coeff(d, 0) == 1);
    CHECK(coeff(d, 1) == Rational(1, 2));
    CHECK(coeff(d, 2) == Rational(1, 6));
    CHECK(build_delta_series(0).terms().size() == 1);
}

TEST_CASE("formal branch matches the displayed expansions") {
    auto g = build_gamma_series(1, false);
    // L + (p + 1 - H)/H = (L + H^-1 - 1) + H^-1 p
    Laurent hinv = Laurent::variable(2, 0, -1);
    CHECK(g.coefficient(Label{0}) == Laurent::variable(2, 1) + hinv - Laurent::constant(2, 1));
    CHECK(g.coefficient(Label{1}) == hinv);
    auto g2 = build_gamma_series(2, false);
    // - (p + 1 - H)^2 / (2 H^2) contributes -1/(2H^2) p^2
    CHECK(g2.coefficient(Label{2}) == Laurent::variable(2, 0, -2) * Rational(-1, 2));
    auto d = build_delta_series(1, false);
    CHECK(d.coefficient(Label{0}) == Laurent::variable(2, 0) - Laurent::constant(2, 1));
    CHECK(d.coefficient(Label{1}) == Laurent::variable(2, 0));
    auto d3 = build_delta_series(3, false);
    CHECK(d3.coefficient(Label{3}) == Laurent::variable(2, 0) * Rational(1, 6));
    for (double h : {0.5, 1.7, 3.0}) CHECK(numeric_branch_diagnostic(h, 1e-3, 8) < 1e-9);
}

TEST_CASE("truncation exactness") {
    std::mt19937 rng(21);
    std::vector<std::string> v{"a", "b"};
    for (int t = 0; t < 20; ++t) {
        TruncatedSeries f(v, 4), g(v, 4), fe(v, 8), ge(v, 8);
        for (int k = 0; k < 6; ++k) {
            Label e{static_cast<std::int64_t>(rng() % 3), static_cast<std::int64_t>(rng() % 3)};
            Laurent c = Laurent::constant(0, Rational(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1));
            if (l1_norm(e) <= 4) {
                f.add_term(e, c);
                fe.add_term(e, c);
            }
            e = {static_cast<std::int64_t>(rng() % 3), static_cast<std::int64_t>(rng() % 3)};
            if (l1_norm(e) <= 4) {
                g.add_term(e, c);
                ge.add_term(e, c);
            }
        }
        CHECK((f * g) == (fe * ge).truncated(4));
    }
}

TEST_CASE("roundtrip and moment maps") {
    auto r1 = verify_roundtrip(fx::tate(), 6);
    CHECK(r1.pass);
    CHECK(verify_roundtrip(fx::a1hat(), 4).pass);
    CHECK(verify_roundtrip(fx::tate(), 1).pass);
    CHECK(verify_moment_intertwine(fx::tate(), 6).pass);
    auto m = verify_moment_intertwine(fx::a1hat(), 6);
    CHECK(m.pass);
    CHECK(m.stats.at("vectors") >= 1);
    CHECK(verify_moment_intertwine(fx::rank2(), 5).pass);
}

TEST_CASE("substitution rejects constant terms") {
    TruncatedSeries s({"a"}, 3);
    s.add_term(Label{1}, Laurent::constant(0, 1));
    auto one = TruncatedSeries::constant({"b"}, 3, Laurent::constant(0, 1));
    CHECK_THROWS(s.substitute({one}));
}

}
