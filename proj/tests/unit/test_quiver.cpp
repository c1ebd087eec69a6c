#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "hmt/quiver.hpp"
#include "oracles.hpp"

using namespace hmt;

namespace {

std::size_t count_of(const std::string& s, const std::string& pat) {
    std::size_t k = 0;
    for (auto p = s.find(pat); p != std::string::npos; p = s.find(pat, p + 1)) ++k;
    return k;
}

struct Case {
    const char* name;
    TorusDatum d;
    ParameterLift p;
    std::size_t vertices, pairs;
};

std::vector<Case> corpus() {
    return {{"tate", fx::tate(), fx::lift({}), 1, 1},
            {"a1hat", fx::a1hat(), fx::half(), 2, 2},
            {"triangle", fx::triangle(), fx::half(), 3, 6},
            {"rank2", fx::rank2(), fx::rank2_lift(), 3, 0},
            {"orbifold", fx::orbifold(), fx::half(), 3, 0}};
}

}  // namespace

TEST_SUITE("quiver") {

TEST_CASE("star quiver of the triangle chamber") {
    SliceArrangement s(fx::triangle(), fx::half());
    auto star = local_star(s, Label{0, 0, 0});
    auto q = local_quiver(star, fx::triangle());
    CHECK(q.vertices.size() == 7);
    CHECK(q.arrow_pairs.size() == 9);
    CHECK(q.monodromy.size() == 18);
    CHECK(q.commute.size() == 9);
    for (const auto& p : q.arrow_pairs) {
        Label step = sub(q.vertices[p.dst].label, q.vertices[p.src].label);
        CHECK(l1_norm(step) == 1);
        CHECK(step[p.facet.coordinate] == 1);
        CHECK(q.vertices[p.dst].label[p.facet.coordinate] == p.facet.level);
    }
    for (const auto& r : q.commute) {
        const Label& low = q.vertices[r.low].label;
        Label hi = low;
        ++hi[r.i];
        ++hi[r.j];
        CHECK(q.vertices[r.high].label == hi);
        CHECK(r.i < r.j);
    }
}

TEST_CASE("corpus quotient sizes") {
    for (auto& c : corpus()) {
        CAPTURE(c.name);
        MirrorModel m(c.d, c.p);
        auto q = quotient_quiver(m);
        CHECK(q.vertices.size() == c.vertices);
        if (c.pairs) CHECK(q.arrow_pairs.size() == c.pairs);
        CHECK(q.monodromy.size() == 2 * q.arrow_pairs.size());
        for (const auto& p : q.arrow_pairs) {
            Label y = q.vertices[p.src].label;
            ++y[p.facet.coordinate];
            CHECK(m.deck_translate(q.vertices[p.dst].label, m.deck_coordinates(y)) == y);
            CHECK(add(q.vertices[p.dst].label, p.shift) == y);
        }
    }
}

TEST_CASE("tate quotient is a single loop pair") {
    MirrorModel m(fx::tate(), fx::lift({}));
    auto q = quotient_quiver(m);
    REQUIRE(q.arrow_pairs.size() == 1);
    CHECK(q.arrow_pairs[0].src == 0);
    CHECK(q.arrow_pairs[0].dst == 0);
    CHECK(q.arrow_pairs[0].shift == Label{1});
    CHECK(q.commute.empty());
}

TEST_CASE("a1hat dot output") {
    MirrorModel m(fx::a1hat(), fx::half());
    auto dot = to_dot(quotient_quiver(m));
    CHECK(count_of(dot, "[label=\"c") == 2);
    CHECK(count_of(dot, "->") == 4);
}

TEST_CASE("deck quotient of the cover agrees with the direct quotient") {
    for (auto& c : corpus()) {
        CAPTURE(c.name);
        MirrorModel m(c.d, c.p);
        auto direct = quotient_quiver(m);
        auto g1 = global_quiver(m, 1);
        auto g2 = global_quiver(m, 2);
        CHECK(quotient_by_deck(g1) == direct);
        CHECK(quotient_by_deck(g2) == direct);
        CHECK(g2.vertices.size() >= g1.vertices.size());
    }
}

TEST_CASE("cover quiver is deck periodic") {
    MirrorModel m(fx::triangle(), fx::half());
    auto g = global_quiver(m, 2);
    std::set<Label> labels;
    for (const auto& v : g.vertices) labels.insert(v.label);
    for (const auto& p : g.arrow_pairs) {
        for (const Label& u : {Label{1, 0}, Label{0, 1}, Label{-1, 1}}) {
            Label a = m.deck_translate(g.vertices[p.src].label, u), b = m.deck_translate(g.vertices[p.dst].label, u);
            if (!labels.count(a) || !labels.count(b)) continue;
            CHECK(m.has_arrow(a, p.facet.coordinate));
            CHECK(g.vertices[g.vertex_index(b)].orbit == g.vertices[p.dst].orbit);
        }
    }
}

TEST_CASE("loop lattices") {
    MirrorModel tri(fx::triangle(), fx::half());
    for (const auto& c : tri.classes()) {
        auto l = chamber_loop_lattice(tri, c.representative);
        CHECK(l.ambient_rank == 2);
        CHECK(l.rank == 2);
        CHECK(l.index == 1);
        CHECK(l.extra_generators.empty());
    }
    SliceArrangement orb(fx::orbifold(), fx::half());
    auto facet = local_star(orb, Label{0, 0}, {CubeWall{0, false}});
    auto q = local_quiver(facet, fx::orbifold());
    REQUIRE(q.vertices.size() == 2);
    for (const auto& v : q.vertices) {
        CHECK(v.loops.rank == 1);
        CHECK(v.loops.index == 2);
        REQUIRE(v.loops.extra_generators.size() == 1);
    }
    MirrorModel om(fx::orbifold(), fx::half());
    CHECK(chamber_loop_lattice(om, Label{0, 0}).index == 1);
    auto none = make_loop_lattice(3, {});
    CHECK(none.rank == 0);
    CHECK(none.index == 1);
}

TEST_CASE("json round trip") {
    for (auto& c : corpus()) {
        CAPTURE(c.name);
        MirrorModel m(c.d, c.p);
        auto q = quotient_quiver(m);
        CHECK(quiver_from_json(to_json(q)) == q);
        auto g = global_quiver(m, 1);
        CHECK(quiver_from_json(nlohmann::json::parse(to_json(g).dump())) == g);
    }
    CHECK_THROWS_AS(quiver_from_json(nlohmann::json{{"schema", "quiver/0"}}), SchemaError);
    auto j = to_json(quotient_quiver(MirrorModel(fx::a1hat(), fx::half())));
    j["relations"].push_back({{"kind", "bogus"}});
    CHECK_THROWS_AS(quiver_from_json(j), SchemaError);
}

TEST_CASE("deck coordinates invert translation") {
    std::mt19937 rng(7);
    for (auto& c : corpus()) {
        MirrorModel m(c.d, c.p);
        for (const auto& cl : m.classes()) {
            for (int t = 0; t < 5; ++t) {
                Label u(m.rank());
                for (auto& x : u) x = static_cast<std::int64_t>(rng() % 7) - 3;
                Label y = m.deck_translate(cl.representative, u);
                CHECK(m.class_of(y) == cl.id);
                CHECK(m.deck_coordinates(y) == u);
            }
        }
    }
}

}
