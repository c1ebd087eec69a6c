#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace hmt;

TEST_SUITE("arrangement") {

TEST_CASE("genericity examples") {
    CHECK(is_generic(fx::a1hat(), fx::half()).generic);
    auto w = is_generic(fx::a1hat(), fx::lift({Rational(0)}));
    REQUIRE_FALSE(w.generic);
    CHECK(w.witness->circuit == std::vector<Integer>{1, 1});
    CHECK(w.witness->level == 0);
    CHECK(is_generic(fx::tate(), fx::lift({})).generic);
    // the pairing of (1,-1,0) with gamma = (1/3,1/3) is 0
    auto r = is_generic(fx::rank2(), fx::lift({Rational(1, 3), Rational(1, 3)}));
    REQUIRE_FALSE(r.generic);
    CHECK(r.witness->circuit == std::vector<Integer>{1, -1, 0});
    CHECK(is_generic(fx::rank2(), fx::rank2_lift()).generic);
}

TEST_CASE("chamber nonemptiness examples") {
    CHECK(chamber_nonempty(fx::tate(), fx::lift({}), Label{5}));
    CHECK(chamber_nonempty(fx::a1hat(), fx::half(), Label{0, 0}));
    CHECK_FALSE(chamber_nonempty(fx::a1hat(), fx::half(), Label{1, 0}));
}

TEST_CASE("class counts") {
    CHECK(enumerate_chambers(fx::tate(), fx::lift({})).size() == 1);
    CHECK(enumerate_chambers(fx::a1hat(), fx::half()).size() == 2);
    CHECK(enumerate_chambers(fx::rank2(), fx::rank2_lift()).size() == 3);
    CHECK(enumerate_chambers(fx::triangle(), fx::half()).size() == 3);
    CHECK(enumerate_chambers(fx::orbifold(), fx::half()).size() == 3);
    CHECK_THROWS_AS(enumerate_chambers(fx::a1hat(), fx::lift({Rational(0)})), NonGenericParameter);
}

TEST_CASE("class counts match zonotope volume on random data") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> num(-20, 20);
    int tested = 0;
    while (tested < 25) {
        auto d = oracle::random_datum(rng, 5, 3);
        std::vector<Rational> g;
        for (std::size_t j = 0; j < d.k(); ++j) g.emplace_back(num(rng), 7 + 2 * static_cast<int>(j));
        for (auto& v : g) v.canonicalize();
        ParameterLift p{g, {}};
        if (!is_generic(d, p)) continue;
        CHECK(Integer(enumerate_chambers(d, p).size()) == oracle::zonotope_volume(d));
        ++tested;
    }
}

TEST_CASE("window independence") {
    for (auto [d, p] : {std::pair{fx::a1hat(), fx::half()}, std::pair{fx::triangle(), fx::half()},
                        std::pair{fx::rank2(), fx::rank2_lift()}, std::pair{fx::orbifold(), fx::half()}}) {
        SliceArrangement s(d, p);
        std::set<std::vector<Integer>> a, b;
        for (const auto& c : enumerate_chambers(s)) a.insert(c.invariant);
        Window w;
        for (std::size_t j = 0; j < s.dim(); ++j) w.offset.emplace_back(Rational(7, 3 + static_cast<int>(j)));
        for (const auto& c : enumerate_chambers(s, w)) b.insert(c.invariant);
        CHECK(a == b);
    }
}

TEST_CASE("deck equivariance of nonemptiness") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> u(-3, 3);
    for (auto [d, p] : {std::pair{fx::triangle(), fx::half()}, std::pair{fx::rank2(), fx::rank2_lift()}}) {
        SliceArrangement s(d, p);
        const auto& l = d.quotient().char_lattice;
        for (int t = 0; t < 40; ++t) {
            Label x(d.n()), lam(d.n(), 0);
            for (auto& v : x) v = u(rng);
            for (std::size_t j = 0; j < l.cols(); ++j) {
                long c = u(rng);
                for (std::size_t i = 0; i < d.n(); ++i) lam[i] += c * l(i, j).get_si();
            }
            CHECK(s.chamber_nonempty_uncached(x) == s.chamber_nonempty_uncached(add(x, lam)));
        }
    }
}

TEST_CASE("adjacency") {
    auto tate = chamber_adjacency(fx::tate(), fx::lift({}));
    REQUIRE(tate.size() == 1);
    CHECK(tate[0].lower_class == tate[0].upper_class);
    auto a1 = chamber_adjacency(fx::a1hat(), fx::half());
    CHECK(a1.size() == 2);
    for (const auto& f : a1) CHECK(f.lower_class != f.upper_class);
    // trihexagonal: each triangle class meets the hexagon class across 3 facet orbits
    SliceArrangement tri(fx::triangle(), fx::half());
    auto classes = enumerate_chambers(tri);
    auto adj = chamber_adjacency(tri, classes);
    CHECK(adj.size() == 6);
    std::map<std::pair<std::size_t, std::size_t>, int> pairs;
    for (const auto& f : adj) pairs[{std::min(f.lower_class, f.upper_class), std::max(f.lower_class, f.upper_class)}]++;
    CHECK(pairs.size() == 2);
    for (const auto& [k, v] : pairs) CHECK(v == 3);
}

TEST_CASE("facets join exactly two distinct labels") {
    SliceArrangement s(fx::triangle(), fx::half());
    for (const auto& x : window_labels(s)) {
        for (const auto& act : s.face_active_sets(x)) {
            if (act.size() != 1) continue;
            Label y = x;
            y[act[0].coordinate] += act[0].upper ? 1 : -1;
            CHECK(y != x);
            CHECK(s.chamber_nonempty(y));
            CubeWall back{act[0].coordinate, !act[0].upper};
            CHECK(s.face_nonempty(y, {back}));
        }
    }
}

TEST_CASE("simplicity: faces are transversal intersections") {
    for (auto [d, p] : {std::pair{fx::triangle(), fx::half()}, std::pair{fx::rank2(), fx::rank2_lift()}}) {
        SliceArrangement s(d, p);
        for (const auto& x : window_labels(s))
            for (const auto& act : s.face_active_sets(x)) {
                IntMatrix q(act.size(), d.rank_g());
                for (std::size_t a = 0; a < act.size(); ++a)
                    for (std::size_t j = 0; j < d.rank_g(); ++j) q(a, j) = d.quotient().char_lattice(act[a].coordinate, j);
                CHECK(rank(q) == act.size());
            }
    }
}

TEST_CASE("local stars") {
    SliceArrangement tri(fx::triangle(), fx::half());
    Label up{0, 0, 0};
    REQUIRE(tri.chamber_nonempty(up));
    auto star = local_star(tri, up);
    CHECK(star.chambers.size() == 7);
    CHECK(star.facets.size() == 9);
    CHECK(star.codim2_faces.size() == 3);
    CHECK(star.faces.size() == 19);
    for (const auto& y : star.chambers) CHECK(tri.chamber_nonempty(y));

    SliceArrangement tate(fx::tate(), fx::lift({}));
    auto ts = local_star(tate, Label{0});
    CHECK(ts.chambers.size() == 3);
    CHECK(ts.facets.size() == 2);
    auto tf = local_star(tate, Label{0}, {CubeWall{0, true}});
    CHECK(tf.chambers.size() == 2);
    CHECK(tf.facets.size() == 1);

    auto point = TorusDatum::create(1, std::vector<std::vector<long>>{{1}});
    auto ps = local_star(point, fx::lift({Rational(1, 2)}), Label{0});
    CHECK(ps.chambers.size() == 1);
    CHECK(ps.facets.empty());

    CHECK_THROWS_AS(local_star(fx::a1hat(), fx::half(), Label{1, 0}), EmptyChamber);
}

TEST_CASE("star of a codim-c face is the local product model") {
    for (auto [d, p] : {std::pair{fx::triangle(), fx::half()}, std::pair{fx::rank2(), fx::rank2_lift()}}) {
        SliceArrangement s(d, p);
        for (const auto& c : enumerate_chambers(s))
            for (const auto& act : s.face_active_sets(c.representative)) {
                auto star = local_star(s, c.representative, act, StarKind::Open);
                std::size_t cd = act.size();
                CHECK(star.chambers.size() == (std::size_t{1} << cd));
                std::size_t pow3 = 1;
                for (std::size_t t = 0; t < cd; ++t) pow3 *= 3;
                CHECK(star.faces.size() == pow3);
                for (const auto& [a, b] : star.covers) CHECK(star.faces[a].dim + 1 == star.faces[b].dim);
            }
    }
}

TEST_CASE("degeneracy probe agrees with circuit pairing") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    for (auto d : {fx::a1hat(), fx::triangle(), fx::rank2(), fx::orbifold()}) {
        for (int t = 0; t < 30; ++t) {
            std::vector<Rational> g;
            for (std::size_t j = 0; j < d.k(); ++j) {
                Rational v(num(rng), den(rng));
                v.canonicalize();
                g.push_back(v);
            }
            CHECK(is_generic(d, ParameterLift{g, {}}).generic == !oracle::probe_degenerate(d, g));
        }
    }
}

}
