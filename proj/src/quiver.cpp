#include "hmt/quiver.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace hmt {

bool LoopLattice::operator==(const LoopLattice& o) const {
    if (ambient_rank != o.ambient_rank || rank != o.rank || index != o.index ||
        extra_generators != o.extra_generators || facet_images.size() != o.facet_images.size())
        return false;
    for (std::size_t a = 0; a < facet_images.size(); ++a)
        if (!(facet_images[a].first == o.facet_images[a].first) || facet_images[a].second != o.facet_images[a].second)
            return false;
    return true;
}

LoopLattice make_loop_lattice(std::size_t ambient_rank, std::vector<std::pair<FacetRef, std::vector<Integer>>> images) {
    LoopLattice l;
    l.ambient_rank = ambient_rank;
    std::sort(images.begin(), images.end(), [](const auto& a, const auto& b) {
        return std::tie(a.first.coordinate, a.first.level) < std::tie(b.first.coordinate, b.first.level);
    });
    l.facet_images = std::move(images);
    if (ambient_rank == 0 || l.facet_images.empty()) return l;
    IntMatrix m(ambient_rank, l.facet_images.size());
    for (std::size_t j = 0; j < l.facet_images.size(); ++j)
        for (std::size_t i = 0; i < ambient_rank; ++i) m(i, j) = l.facet_images[j].second.at(i);
    SmithDecomposition s = smith_decompose(m);
    for (std::size_t t = 0; t < s.diag.size(); ++t) {
        if (s.diag[t] == 0) break;
        ++l.rank;
        l.index *= s.diag[t];
        if (s.diag[t] != 1) l.extra_generators.push_back(s.left_inverse.column(t));
    }
    return l;
}

std::size_t QuiverWithRelations::vertex_index(const Label& label) const {
    for (std::size_t v = 0; v < vertices.size(); ++v)
        if (vertices[v].label == label) return v;
    throw Error("no vertex with label " + to_string(label));
}

bool QuiverWithRelations::operator==(const QuiverWithRelations& o) const {
    return name == o.name && n == o.n && rank == o.rank && quotient == o.quotient && signs == o.signs &&
           deck == o.deck && vertices == o.vertices && arrow_pairs == o.arrow_pairs && monodromy == o.monodromy &&
           commute == o.commute;
}

namespace {

std::string label_id(const Label& x) { return "x" + to_string(x); }

void add_pair_relations(QuiverWithRelations& q, std::size_t pair) {
    q.monodromy.push_back({q.arrow_pairs[pair].src, pair, true});
    q.monodromy.push_back({q.arrow_pairs[pair].dst, pair, false});
}

void add_square(QuiverWithRelations& q, std::size_t low, std::size_t mi, std::size_t mj, std::size_t high, std::size_t i,
                std::size_t j) {
    for (auto v : {CommuteVariant::A, CommuteVariant::B, CommuteVariant::C}) q.commute.push_back({low, mi, mj, high, i, j, v});
}

Label unit_step(const Label& x, std::size_t i, std::int64_t s = 1) {
    Label y = x;
    y[i] = checked_add(y[i], s);
    return y;
}

}  // namespace

LoopLattice chamber_loop_lattice(const CoverModel& m, const Label& x) {
    std::vector<std::pair<FacetRef, std::vector<Integer>>> images;
    const auto& q = m.datum().quotient().coord_chars;
    for (std::size_t i = 0; i < m.n(); ++i) {
        if (m.has_arrow(x, i)) images.push_back({FacetRef{i, checked_add(x[i], 1)}, q[i]});
        Label y = unit_step(x, i, -1);
        if (m.has_vertex(y) && m.has_arrow(y, i)) images.push_back({FacetRef{i, x[i]}, q[i]});
    }
    return make_loop_lattice(m.rank(), std::move(images));
}

QuiverWithRelations local_quiver(const LocalStar& star, const TorusDatum& d, const std::vector<int>& signs) {
    QuiverWithRelations q;
    q.name = "star" + to_string(star.base);
    q.n = d.n();
    q.rank = d.rank_g();
    q.signs = signs.empty() ? std::vector<int>(d.n(), 1) : signs;
    const auto& chars = d.quotient().coord_chars;
    std::vector<std::vector<std::pair<FacetRef, std::vector<Integer>>>> images(star.chambers.size());
    for (std::size_t c = 0; c < star.chambers.size(); ++c) {
        QVertex v;
        v.id = "v" + std::to_string(c);
        v.label = star.chambers[c];
        v.orbit = d.restrict(v.label);
        q.vertices.push_back(v);
    }
    for (const auto& f : star.facets) {
        const auto& w = star.walls[f.wall];
        std::size_t a = f.lower, b = f.upper;
        if (star.chambers[a][w.coordinate] > star.chambers[b][w.coordinate]) std::swap(a, b);
        FacetRef ref{w.coordinate, w.level};
        ArrowPair p;
        p.src = a;
        p.dst = b;
        p.facet = ref;
        p.u = "u" + std::to_string(q.arrow_pairs.size());
        p.v = "v" + std::to_string(q.arrow_pairs.size());
        q.arrow_pairs.push_back(p);
        add_pair_relations(q, q.arrow_pairs.size() - 1);
        images[a].push_back({ref, chars[w.coordinate]});
        images[b].push_back({ref, chars[w.coordinate]});
    }
    for (std::size_t c = 0; c < star.chambers.size(); ++c) q.vertices[c].loops = make_loop_lattice(q.rank, images[c]);
    std::map<std::vector<int>, std::size_t> chamber_by_sign;
    for (std::size_t c = 0; c < star.chambers.size(); ++c) chamber_by_sign[star.faces[star.chamber_faces[c]].sign] = c;
    for (auto f : star.codim2_faces) {
        const auto& sg = star.faces[f].sign;
        std::vector<std::size_t> zero;
        for (std::size_t w = 0; w < sg.size(); ++w)
            if (sg[w] == 0) zero.push_back(w);
        std::vector<std::size_t> around;
        for (int s1 : {-1, 1})
            for (int s2 : {-1, 1}) {
                auto t = sg;
                t[zero[0]] = s1;
                t[zero[1]] = s2;
                around.push_back(chamber_by_sign.at(t));
            }
        std::size_t ci = star.walls[zero[0]].coordinate, cj = star.walls[zero[1]].coordinate;
        if (ci > cj) std::swap(ci, cj);
        auto lowest = *std::min_element(around.begin(), around.end(), [&](std::size_t a, std::size_t b) {
            return star.chambers[a][ci] + star.chambers[a][cj] < star.chambers[b][ci] + star.chambers[b][cj];
        });
        Label base = star.chambers[lowest];
        auto find = [&](const Label& y) {
            for (auto c : around)
                if (star.chambers[c] == y) return c;
            throw Error("local quiver: square corner missing");
        };
        add_square(q, lowest, find(unit_step(base, ci)), find(unit_step(base, cj)),
                   find(unit_step(unit_step(base, ci), cj)), ci, cj);
    }
    return q;
}

QuiverWithRelations global_quiver(const CoverModel& m, std::int64_t radius) {
    QuiverWithRelations q;
    q.name = m.kind() + "-cover";
    q.n = m.n();
    q.rank = m.rank();
    q.signs = m.signs();
    q.deck = m.datum().quotient().char_lattice;
    const std::size_t r = m.rank();
    std::vector<QVertex> verts;
    for (const auto& c : m.classes()) {
        Label u(r, -radius);
        while (true) {
            QVertex v;
            v.label = m.deck_translate(c.representative, u);
            v.orbit = c.invariant;
            v.deck = u;
            if (m.has_vertex(v.label)) verts.push_back(v);
            std::size_t a = 0;
            while (a < r && u[a] == radius) u[a++] = -radius;
            if (a == r) break;
            ++u[a];
        }
    }
    std::sort(verts.begin(), verts.end(), [](const QVertex& a, const QVertex& b) { return a.label < b.label; });
    std::map<Label, std::size_t> index;
    for (auto& v : verts) {
        v.id = label_id(v.label);
        v.loops = chamber_loop_lattice(m, v.label);
        index[v.label] = q.vertices.size();
        q.vertices.push_back(v);
    }
    for (std::size_t a = 0; a < q.vertices.size(); ++a) {
        const Label& x = q.vertices[a].label;
        for (std::size_t i = 0; i < m.n(); ++i) {
            auto it = index.find(unit_step(x, i));
            if (it == index.end() || !m.has_arrow(x, i)) continue;
            ArrowPair p;
            p.src = a;
            p.dst = it->second;
            p.facet = {i, checked_add(x[i], 1)};
            p.u = "u:" + q.vertices[a].id + "->" + q.vertices[p.dst].id;
            p.v = "v:" + q.vertices[p.dst].id + "->" + q.vertices[a].id;
            q.arrow_pairs.push_back(p);
            add_pair_relations(q, q.arrow_pairs.size() - 1);
        }
    }
    for (std::size_t a = 0; a < q.vertices.size(); ++a) {
        const Label& x = q.vertices[a].label;
        for (std::size_t i = 0; i < m.n(); ++i)
            for (std::size_t j = i + 1; j < m.n(); ++j) {
                auto xi = index.find(unit_step(x, i)), xj = index.find(unit_step(x, j)),
                     xij = index.find(unit_step(unit_step(x, i), j));
                if (xi == index.end() || xj == index.end() || xij == index.end()) continue;
                if (!m.has_square(x, i, j)) continue;
                add_square(q, a, xi->second, xj->second, xij->second, i, j);
            }
    }
    return q;
}

QuiverWithRelations global_quiver(const TorusDatum& d, const ParameterLift& p, std::int64_t radius) {
    return global_quiver(MirrorModel(d, p), radius);
}

namespace {

void sort_quotient_relations(QuiverWithRelations& q) {
    std::sort(q.monodromy.begin(), q.monodromy.end(), [](const MonodromyRel& a, const MonodromyRel& b) {
        return std::make_tuple(a.arrow_pair, !a.at_src) < std::make_tuple(b.arrow_pair, !b.at_src);
    });
    std::sort(q.commute.begin(), q.commute.end(), [](const CommuteRel& a, const CommuteRel& b) {
        return std::make_tuple(a.low, a.i, a.j, a.variant) < std::make_tuple(b.low, b.i, b.j, b.variant);
    });
}

}  // namespace

QuiverWithRelations quotient_by_deck(const QuiverWithRelations& cover) {
    if (!cover.deck) throw Error("quotient_by_deck: quiver carries no deck action");
    if (cover.quotient) return cover;
    QuiverWithRelations q;
    q.name = cover.name.substr(0, cover.name.rfind("-cover")) + "-quotient";
    q.n = cover.n;
    q.rank = cover.rank;
    q.quotient = true;
    q.signs = cover.signs;
    q.deck = cover.deck;
    // orbit representatives: deck coordinate zero, else the smallest label
    std::map<std::vector<Integer>, std::size_t> rep;
    for (std::size_t a = 0; a < cover.vertices.size(); ++a) {
        const auto& v = cover.vertices[a];
        auto it = rep.find(v.orbit);
        bool zero = std::all_of(v.deck.begin(), v.deck.end(), [](std::int64_t x) { return x == 0; });
        if (it == rep.end()) {
            rep[v.orbit] = a;
        } else {
            const auto& cur = cover.vertices[it->second];
            bool cur_zero = std::all_of(cur.deck.begin(), cur.deck.end(), [](std::int64_t x) { return x == 0; });
            if ((zero && !cur_zero) || (zero == cur_zero && v.label < cur.label)) it->second = a;
        }
    }
    std::vector<std::size_t> reps;
    for (const auto& [orbit, a] : rep) reps.push_back(a);
    std::sort(reps.begin(), reps.end(),
              [&](std::size_t a, std::size_t b) { return cover.vertices[a].label < cover.vertices[b].label; });
    std::map<std::vector<Integer>, std::size_t> orbit_index;
    for (std::size_t c = 0; c < reps.size(); ++c) {
        QVertex v = cover.vertices[reps[c]];
        v.id = "c" + std::to_string(c);
        v.deck.assign(cover.rank, 0);
        orbit_index[v.orbit] = c;
        q.vertices.push_back(v);
    }
    auto orbit_of = [&](std::size_t a) { return orbit_index.at(cover.vertices[a].orbit); };
    // arrow orbits keyed by (source orbit, coordinate)
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> arrow_of;
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> keyed;
    for (std::size_t a = 0; a < cover.arrow_pairs.size(); ++a) {
        const auto& p = cover.arrow_pairs[a];
        auto key = std::make_pair(orbit_of(p.src), p.facet.coordinate);
        if (!arrow_of.count(key)) {
            arrow_of[key] = keyed.size();
            keyed.push_back({key, a});
        }
    }
    std::sort(keyed.begin(), keyed.end());
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> final_index;
    for (const auto& [key, a] : keyed) {
        const auto& p = cover.arrow_pairs[a];
        std::size_t s = key.first, t = orbit_of(p.dst);
        const Label& src_rep = q.vertices[s].label;
        Label lambda = sub(cover.vertices[p.src].label, src_rep);
        Label dst_moved = sub(cover.vertices[p.dst].label, lambda);
        ArrowPair ap;
        ap.src = s;
        ap.dst = t;
        ap.facet = {key.second, checked_add(src_rep[key.second], 1)};
        ap.u = "u" + std::to_string(q.arrow_pairs.size());
        ap.v = "v" + std::to_string(q.arrow_pairs.size());
        ap.shift = sub(dst_moved, q.vertices[t].label);
        final_index[key] = q.arrow_pairs.size();
        q.arrow_pairs.push_back(ap);
    }
    std::set<std::tuple<std::size_t, std::size_t, bool>> mono;
    for (const auto& r : cover.monodromy) {
        const auto& p = cover.arrow_pairs[r.arrow_pair];
        std::size_t ap = final_index.at({orbit_of(p.src), p.facet.coordinate});
        mono.insert({orbit_of(r.vertex), ap, r.at_src});
    }
    for (const auto& [v, ap, at_src] : mono) q.monodromy.push_back({v, ap, at_src});
    std::set<std::tuple<std::size_t, std::size_t, std::size_t, CommuteVariant>> seen;
    for (const auto& r : cover.commute) {
        auto key = std::make_tuple(orbit_of(r.low), r.i, r.j, r.variant);
        if (!seen.insert(key).second) continue;
        q.commute.push_back({orbit_of(r.low), orbit_of(r.mid_i), orbit_of(r.mid_j), orbit_of(r.high), r.i, r.j, r.variant});
    }
    sort_quotient_relations(q);
    return q;
}

QuiverWithRelations quotient_quiver(const CoverModel& m) {
    QuiverWithRelations q;
    q.name = m.kind() + "-quotient";
    q.n = m.n();
    q.rank = m.rank();
    q.quotient = true;
    q.signs = m.signs();
    q.deck = m.datum().quotient().char_lattice;
    const auto& classes = m.classes();
    for (const auto& c : classes) {
        QVertex v;
        v.id = "c" + std::to_string(c.id);
        v.label = c.representative;
        v.orbit = c.invariant;
        v.deck.assign(m.rank(), 0);
        v.loops = chamber_loop_lattice(m, c.representative);
        q.vertices.push_back(v);
    }
    for (const auto& c : classes)
        for (std::size_t i = 0; i < m.n(); ++i) {
            if (!m.has_arrow(c.representative, i)) continue;
            Label y = unit_step(c.representative, i);
            std::size_t t = m.class_of(y);
            ArrowPair ap;
            ap.src = c.id;
            ap.dst = t;
            ap.facet = {i, y[i]};
            ap.u = "u" + std::to_string(q.arrow_pairs.size());
            ap.v = "v" + std::to_string(q.arrow_pairs.size());
            ap.shift = sub(y, classes[t].representative);
            q.arrow_pairs.push_back(ap);
            add_pair_relations(q, q.arrow_pairs.size() - 1);
        }
    for (const auto& c : classes)
        for (std::size_t i = 0; i < m.n(); ++i)
            for (std::size_t j = i + 1; j < m.n(); ++j) {
                const Label& x = c.representative;
                if (!m.has_square(x, i, j)) continue;
                add_square(q, c.id, m.class_of(unit_step(x, i)), m.class_of(unit_step(x, j)),
                           m.class_of(unit_step(unit_step(x, i), j)), i, j);
            }
    sort_quotient_relations(q);
    return q;
}

std::vector<std::string> quotient_differences(const QuiverWithRelations& a, const QuiverWithRelations& b) {
    std::vector<std::string> out;
    if (a.n != b.n || a.rank != b.rank) return {"ambient sizes differ"};
    if (a.signs != b.signs) out.push_back("facet signs differ");
    using Orbit = std::vector<Integer>;
    auto vertex_keys = [](const QuiverWithRelations& q) {
        std::map<Orbit, std::pair<std::size_t, Integer>> m;
        for (const auto& v : q.vertices) m[v.orbit] = {v.loops.rank, v.loops.index};
        return m;
    };
    auto va = vertex_keys(a), vb = vertex_keys(b);
    for (const auto& [o, l] : va) {
        auto it = vb.find(o);
        if (it == vb.end())
            out.push_back("vertex orbit " + to_string(to_label(o)) + " only in " + a.name);
        else if (it->second != l)
            out.push_back("loop lattice differs at orbit " + to_string(to_label(o)));
    }
    for (const auto& [o, l] : vb)
        if (!va.count(o)) out.push_back("vertex orbit " + to_string(to_label(o)) + " only in " + b.name);
    auto arrows = [](const QuiverWithRelations& q) {
        std::multiset<std::tuple<Orbit, std::size_t, Orbit>> s;
        for (const auto& p : q.arrow_pairs) s.insert({q.vertices[p.src].orbit, p.facet.coordinate, q.vertices[p.dst].orbit});
        return s;
    };
    if (arrows(a) != arrows(b)) out.push_back("arrow pairs differ");
    auto squares = [](const QuiverWithRelations& q) {
        std::multiset<std::tuple<Orbit, Orbit, Orbit, Orbit, std::size_t, std::size_t, int>> s;
        for (const auto& c : q.commute)
            s.insert({q.vertices[c.low].orbit, q.vertices[c.mid_i].orbit, q.vertices[c.mid_j].orbit,
                      q.vertices[c.high].orbit, c.i, c.j, static_cast<int>(c.variant)});
        return s;
    };
    if (squares(a) != squares(b)) out.push_back("commutation relations differ");
    if (a.monodromy.size() != b.monodromy.size()) out.push_back("monodromy relation counts differ");
    return out;
}

bool quotient_isomorphic(const QuiverWithRelations& a, const QuiverWithRelations& b) {
    return quotient_differences(a, b).empty();
}

std::string to_dot(const QuiverWithRelations& q) {
    std::ostringstream os;
    os << "digraph \"" << q.name << "\" {\n";
    for (const auto& v : q.vertices)
        os << "  \"" << v.id << "\" [label=\"" << v.id << "\\n" << to_string(v.label) << "\\nloops " << v.loops.rank
           << "/" << v.loops.ambient_rank << (v.loops.index != 1 ? " index " + v.loops.index.get_str() : "") << "\"];\n";
    for (const auto& p : q.arrow_pairs) {
        os << "  \"" << q.vertices[p.src].id << "\" -> \"" << q.vertices[p.dst].id << "\" [label=\"" << p.u << "\"];\n";
        os << "  \"" << q.vertices[p.dst].id << "\" -> \"" << q.vertices[p.src].id << "\" [label=\"" << p.v
           << "\", style=dashed];\n";
    }
    os << "}\n";
    return os.str();
}

namespace {

nlohmann::json ints(const std::vector<Integer>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) {
        if (x.fits_slong_p()) a.push_back(x.get_si());
        else a.push_back(x.get_str());
    }
    return a;
}

std::vector<Integer> ints_from(const nlohmann::json& j) {
    std::vector<Integer> v;
    for (const auto& x : j) v.push_back(x.is_string() ? Integer(x.get<std::string>()) : Integer(x.get<long>()));
    return v;
}

const char* variant_name(CommuteVariant v) {
    switch (v) {
        case CommuteVariant::A: return "a";
        case CommuteVariant::B: return "b";
        default: return "c";
    }
}

}  // namespace

nlohmann::json to_json(const QuiverWithRelations& q) {
    nlohmann::json j;
    j["schema"] = "quiver/1";
    j["name"] = q.name;
    j["n"] = q.n;
    j["rank"] = q.rank;
    j["quotient"] = q.quotient;
    j["signs"] = q.signs;
    if (q.deck) {
        nlohmann::json cols = nlohmann::json::array();
        for (std::size_t c = 0; c < q.deck->cols(); ++c) cols.push_back(ints(q.deck->column(c)));
        j["deck"] = cols;
    } else {
        j["deck"] = nullptr;
    }
    j["vertices"] = nlohmann::json::array();
    for (const auto& v : q.vertices) {
        nlohmann::json facets = nlohmann::json::array();
        for (const auto& [f, img] : v.loops.facet_images)
            facets.push_back({{"coordinate", f.coordinate}, {"level", f.level}, {"image", ints(img)}});
        nlohmann::json extra = nlohmann::json::array();
        for (const auto& e : v.loops.extra_generators) extra.push_back(ints(e));
        j["vertices"].push_back({{"id", v.id},
                                 {"label", v.label},
                                 {"orbit", ints(v.orbit)},
                                 {"deck", v.deck},
                                 {"loops",
                                  {{"ambientRank", v.loops.ambient_rank},
                                   {"rank", v.loops.rank},
                                   {"index", v.loops.index.get_str()},
                                   {"facets", facets},
                                   {"extra", extra}}}});
    }
    j["arrowPairs"] = nlohmann::json::array();
    for (const auto& p : q.arrow_pairs)
        j["arrowPairs"].push_back({{"src", p.src},
                                   {"dst", p.dst},
                                   {"coordinate", p.facet.coordinate},
                                   {"level", p.facet.level},
                                   {"u", p.u},
                                   {"v", p.v},
                                   {"shift", p.shift}});
    j["relations"] = nlohmann::json::array();
    for (const auto& r : q.monodromy)
        j["relations"].push_back({{"kind", "monodromy"}, {"vertex", r.vertex}, {"arrowPair", r.arrow_pair}, {"atSrc", r.at_src}});
    for (const auto& r : q.commute)
        j["relations"].push_back({{"kind", "commute"},
                                  {"variant", variant_name(r.variant)},
                                  {"vertices", {r.low, r.mid_i, r.mid_j, r.high}},
                                  {"coordinates", {r.i, r.j}}});
    return j;
}

QuiverWithRelations quiver_from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.value("schema", "") != "quiver/1") throw SchemaError("expected schema quiver/1");
    try {
        QuiverWithRelations q;
        q.name = j.at("name").get<std::string>();
        q.n = j.at("n").get<std::size_t>();
        q.rank = j.at("rank").get<std::size_t>();
        q.quotient = j.at("quotient").get<bool>();
        q.signs = j.at("signs").get<std::vector<int>>();
        if (!j.at("deck").is_null()) {
            std::vector<std::vector<Integer>> cols;
            for (const auto& c : j.at("deck")) cols.push_back(ints_from(c));
            q.deck = IntMatrix::from_columns(cols, q.n);
        }
        for (const auto& jv : j.at("vertices")) {
            QVertex v;
            v.id = jv.at("id").get<std::string>();
            v.label = jv.at("label").get<Label>();
            v.orbit = ints_from(jv.at("orbit"));
            v.deck = jv.at("deck").get<Label>();
            const auto& lj = jv.at("loops");
            v.loops.ambient_rank = lj.at("ambientRank").get<std::size_t>();
            v.loops.rank = lj.at("rank").get<std::size_t>();
            v.loops.index = Integer(lj.at("index").get<std::string>());
            for (const auto& f : lj.at("facets"))
                v.loops.facet_images.push_back(
                    {FacetRef{f.at("coordinate").get<std::size_t>(), f.at("level").get<std::int64_t>()}, ints_from(f.at("image"))});
            for (const auto& e : lj.at("extra")) v.loops.extra_generators.push_back(ints_from(e));
            q.vertices.push_back(v);
        }
        for (const auto& jp : j.at("arrowPairs")) {
            ArrowPair p;
            p.src = jp.at("src").get<std::size_t>();
            p.dst = jp.at("dst").get<std::size_t>();
            p.facet = {jp.at("coordinate").get<std::size_t>(), jp.at("level").get<std::int64_t>()};
            p.u = jp.at("u").get<std::string>();
            p.v = jp.at("v").get<std::string>();
            p.shift = jp.at("shift").get<Label>();
            q.arrow_pairs.push_back(p);
        }
        for (const auto& jr : j.at("relations")) {
            auto kind = jr.at("kind").get<std::string>();
            if (kind == "monodromy") {
                q.monodromy.push_back({jr.at("vertex").get<std::size_t>(), jr.at("arrowPair").get<std::size_t>(),
                                       jr.at("atSrc").get<bool>()});
            } else if (kind == "commute") {
                auto vs = jr.at("vertices").get<std::vector<std::size_t>>();
                auto cs = jr.at("coordinates").get<std::vector<std::size_t>>();
                auto var = jr.at("variant").get<std::string>();
                if (vs.size() != 4 || cs.size() != 2) throw SchemaError("malformed commute relation");
                CommuteVariant cv = var == "a" ? CommuteVariant::A : var == "b" ? CommuteVariant::B : CommuteVariant::C;
                q.commute.push_back({vs[0], vs[1], vs[2], vs[3], cs[0], cs[1], cv});
            } else {
                throw SchemaError("unknown relation kind " + kind);
            }
        }
        return q;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("quiver json: ") + e.what());
    }
}

}  // namespace hmt
