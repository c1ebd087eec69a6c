#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "hmt/rewrite.hpp"

using namespace hmt;

namespace {

std::shared_ptr<MirrorModel> model(const TorusDatum& d, const ParameterLift& p) {
    return std::make_shared<MirrorModel>(d, p);
}

Laurent one(std::size_t r) { return Laurent::constant(r, 1); }

NormalFormElement basis(const Label& x, const Label& y, std::size_t r) {
    NormalFormElement e;
    e.add(x, y, one(r));
    return e;
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("tate composition") {
    NormalFormAlgebra alg(model(fx::tate(), fx::lift({})));
    auto u = alg.minimal_path_element(Label{0}, Label{1});
    auto v = alg.minimal_path_element(Label{1}, Label{0});
    auto m = Laurent::variable(1, 0);
    CHECK(alg.compose(v, u) == alg.idempotent(Label{0}) * (m - one(1)));
    CHECK(alg.compose(u, v) == alg.idempotent(Label{1}) * (m - one(1)));
    auto c03 = alg.minimal_path_element(Label{0}, Label{3});
    CHECK(c03 == basis(Label{0}, Label{3}, 1));
    CHECK(alg.path_element({Label{0}, Label{1}, Label{2}, Label{3}}) == c03);
    CHECK(alg.minimal_path_element(Label{2}, Label{2}) == alg.idempotent(Label{2}));
    CHECK(alg.compose(alg.idempotent(Label{3}), c03) == c03);
    CHECK(alg.compose(c03, alg.idempotent(Label{3})).is_zero());
}

TEST_CASE("sign of the facet unit") {
    NormalFormAlgebra alg(model(fx::a1hat(), fx::lift({Rational(1, 2)}, {-1, 1})));
    auto& m = alg.model();
    auto rep = m.classes()[0].representative;
    for (std::size_t i = 0; i < 2; ++i) {
        Label up = rep, down = rep;
        ++up[i];
        --down[i];
        Label other = m.has_arrow(rep, i) ? up : down;
        if (!m.has_vertex(other) || !(m.has_arrow(rep, i) || m.has_arrow(down, i))) continue;
        auto there = alg.minimal_path_element(rep, other);
        auto back = alg.minimal_path_element(other, rep);
        CHECK(alg.compose(back, there) == alg.idempotent(rep) * (m.facet_unit(i) - one(1)));
    }
    CHECK(m.facet_unit(0).coefficient(Label{1}) == -1);
}

TEST_CASE("excess crossings are nonnegative integers") {
    std::mt19937 rng(3);
    for (int t = 0; t < 500; ++t) {
        Label x(3), y(3), z(3);
        for (auto* l : {&x, &y, &z})
            for (auto& v : *l) v = static_cast<std::int64_t>(rng() % 9) - 4;
        for (std::size_t i = 0; i < 3; ++i) {
            std::int64_t twice = std::abs(y[i] - x[i]) + std::abs(z[i] - y[i]) - std::abs(z[i] - x[i]);
            CHECK(twice % 2 == 0);
            CHECK(excess_crossings(x, y, z)[i] * 2 == twice);
            CHECK(twice >= 0);
        }
    }
}

TEST_CASE("associativity and deck equivariance") {
    std::mt19937 rng(5);
    for (auto [d, p] : {std::pair{fx::triangle(), fx::half()}, std::pair{fx::rank2(), fx::rank2_lift()},
                        std::pair{fx::a1hat(), fx::half()}}) {
        NormalFormAlgebra alg(model(d, p));
        const auto& m = alg.model();
        std::vector<Label> labels;
        for (const auto& c : m.classes())
            for (int a = -1; a <= 1; ++a)
                for (int b = -1; b <= 1; ++b) {
                    Label u(m.rank());
                    u[0] = a;
                    if (u.size() > 1) u[1] = b;
                    labels.push_back(m.deck_translate(c.representative, u));
                }
        std::size_t r = m.rank();
        auto pick = [&] { return labels[rng() % labels.size()]; };
        for (int t = 0; t < 60; ++t) {
            Label w = pick(), x = pick(), y = pick(), z = pick();
            auto a = basis(y, z, r) * Laurent::variable(r, 0);
            auto b = basis(x, y, r);
            auto c = basis(w, x, r) * (one(r) + Laurent::variable(r, r - 1, -1));
            CHECK(alg.compose(alg.compose(a, b), c) == alg.compose(a, alg.compose(b, c)));
            Label u(r, 0);
            u[0] = 1;
            CHECK(alg.deck_translate(alg.compose(a, b), u) == alg.compose(alg.deck_translate(a, u), alg.deck_translate(b, u)));
        }
    }
}

TEST_CASE("minimal paths") {
    NormalFormAlgebra alg(model(fx::triangle(), fx::half()));
    const auto& m = alg.model();
    for (const auto& c : m.classes())
        for (const auto& e : m.classes()) {
            Label y = m.deck_translate(e.representative, Label{1, -1});
            auto path = monotone_facet_path(m, c.representative, y);
            REQUIRE(path.has_value());
            CHECK(alg.path_element(*path) == alg.minimal_path_element(c.representative, y));
        }
    CHECK_THROWS_AS(alg.minimal_path_element(Label{0, 0, 0}, Label{5, 5, 5}), EmptyChamber);
}

TEST_CASE("hom ranks and truncation") {
    NormalFormAlgebra tate(model(fx::tate(), fx::lift({})));
    CHECK(tate.hom_rank_table(Label{0}, Label{1}, 3) == std::vector<std::size_t>{1, 3, 5, 7});
    CHECK(tate.hom_rank_table(Label{0}, Label{0}, 0) == std::vector<std::size_t>{1});
    NormalFormAlgebra tri(model(fx::triangle(), fx::half()));
    CHECK(tri.hom_rank_table(Label{0, 0, 0}, Label{0, 0, 0}, 2) == std::vector<std::size_t>{1, 9, 25});
    CHECK_THROWS_AS(NormalFormAlgebra(model(fx::orbifold(), fx::half())), OrbifoldUnsupported);

    auto corner = tate.truncate_by_idempotents({Label{0}});
    auto u = tate.minimal_path_element(Label{0}, Label{1});
    auto v = tate.minimal_path_element(Label{1}, Label{0});
    CHECK(corner.project(u).is_zero());
    CHECK(corner.project(tate.compose(v, u)) == tate.compose(v, u));
    CHECK(corner.minimal_path_element(Label{0}, Label{1}).is_zero());
    CHECK(corner.hom_rank_table(Label{0}, Label{1}, 1) == std::vector<std::size_t>{0, 0});
    auto full = tate.truncate_by_idempotents({Label{0}, Label{1}});
    CHECK(full.project(u) == u);
}

TEST_CASE("json round trip") {
    NormalFormAlgebra tri(model(fx::triangle(), fx::half()));
    Label far = tri.model().deck_translate(Label{0, 0, 0}, Label{1, 0});
    auto e = tri.compose(tri.minimal_path_element(Label{0, 0, 0}, far),
                         tri.minimal_path_element(Label{0, 0, 0}, Label{0, 0, 0}) * Laurent::variable(2, 1, -2));
    CHECK(normal_form_from_json(to_json(e), 2) == e);
    CHECK_THROWS_AS(normal_form_from_json(nlohmann::json{{"entries", 3}}, 2), SchemaError);
}

TEST_CASE("rewriting basics") {
    auto tm = model(fx::tate(), fx::lift({}));
    RewriteSystem rs(quotient_quiver(*tm));
    Word uvu{Label{0}, {{0, 1}, {0, -1}, {0, 1}}};
    auto red = rs.reduce(uvu);
    auto m = Laurent::variable(1, 0);
    RewriteElement expect = word_element(Word{Label{0}, {{0, 1}}}, m - one(1));
    CHECK(red.terms == expect.terms);
    CHECK(rs.reduce(Word{Label{4}, {}}).terms == word_element(Word{Label{4}, {}}, one(1)).terms);
    CHECK_THROWS(rs.reduce(Word{Label{0, 0}, {}}));

    SliceArrangement s(fx::triangle(), fx::half());
    auto star = local_star(s, Label{0, 0, 0});
    auto lq = local_quiver(star, fx::triangle());
    RewriteSystem local(lq, fx::triangle().quotient().char_lattice);
    REQUIRE(lq.commute.size() == 9);
    for (const auto& r : lq.commute) {
        Label low = lq.vertices[r.low].label;
        Word wi{low, {{r.i, 1}, {r.j, 1}}}, wj{low, {{r.j, 1}, {r.i, 1}}};
        auto diff = local.reduce(word_element(wi, one(2)) - word_element(wj, one(2)));
        CHECK(diff.is_zero());
    }
}

TEST_CASE("rewriting agrees with normal form on short words") {
    for (auto [d, p] : {std::pair{fx::tate(), fx::lift({})}, std::pair{fx::a1hat(), fx::half()},
                        std::pair{fx::a1hat(), fx::lift({Rational(1, 2)}, {1, -1})},
                        std::pair{fx::triangle(), fx::half()}, std::pair{fx::rank2(), fx::rank2_lift()}}) {
        auto m = model(d, p);
        NormalFormAlgebra alg(m);
        RewriteSystem rs(quotient_quiver(*m));
        for (const auto& c : m->classes()) {
            std::map<std::pair<Label, Label>, std::vector<Word>> groups;
            for (const auto& w : rs.words_from(c.representative, 4)) groups[{w.source, w.target()}].push_back(w);
            for (const auto& [ends, ws] : groups) {
                std::vector<NormalFormElement> nf;
                std::vector<RewriteElement> red;
                for (const auto& w : ws) {
                    nf.push_back(alg.path_element(word_labels(w)));
                    red.push_back(rs.reduce(w));
                    CHECK(to_normal_form(alg, red.back()) == nf.back());
                }
                for (std::size_t a = 0; a < ws.size(); ++a)
                    for (std::size_t b = a + 1; b < ws.size(); ++b)
                        if (ws[a].length() + ws[b].length() <= 4) CHECK((red[a].terms == red[b].terms) == (nf[a] == nf[b]));
            }
        }
    }
}

}
