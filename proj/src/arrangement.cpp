#include "hmt/arrangement.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace hmt {

namespace {

Rational json_rational(const nlohmann::json& v) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    throw SchemaError("expected a rational (integer or \"p/q\" string), got " + v.dump());
}

}  // namespace

ParameterLift parameter_from_json(const nlohmann::json& j, std::size_t n) {
    if (!j.is_object() || !j.contains("gammaTilde") || !j["gammaTilde"].is_array())
        throw SchemaError("parameter needs a \"gammaTilde\" array");
    ParameterLift p;
    for (const auto& v : j["gammaTilde"]) p.gamma_tilde.push_back(json_rational(v));
    if (j.contains("signs")) {
        for (const auto& v : j["signs"]) {
            if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1))
                throw SchemaError("signs must be +1 or -1");
            p.signs.push_back(v.get<int>());
        }
        if (p.signs.size() != n) throw SchemaError("signs must have length n");
    }
    return p;
}

nlohmann::json to_json(const ParameterLift& p) {
    nlohmann::json g = nlohmann::json::array();
    for (const auto& v : p.gamma_tilde) g.push_back(v.get_str());
    nlohmann::json j{{"gammaTilde", g}};
    if (!p.signs.empty()) j["signs"] = p.signs;
    return j;
}

GenericityResult is_generic(const TorusDatum& d, const ParameterLift& p) {
    if (p.gamma_tilde.size() != d.k()) throw SchemaError("gammaTilde must have length k");
    GenericityResult res;
    for (const auto& c : circuits(d)) {
        Rational v = 0;
        for (std::size_t j = 0; j < d.k(); ++j) v += c.coefficients[j] * p.gamma_tilde[j];
        if (is_integer(v)) {
            res.generic = false;
            res.witness = WallWitness{c.vector, v.get_num()};
            return res;
        }
    }
    return res;
}

SliceArrangement::SliceArrangement(TorusDatum d, ParameterLift p) : d_(std::move(d)), p_(std::move(p)) {
    if (p_.gamma_tilde.size() != d_.k()) throw SchemaError("gammaTilde must have length k");
    if (!p_.signs.empty() && p_.signs.size() != d_.n()) throw SchemaError("signs must have length n");
    const std::size_t n = d_.n(), k = d_.k();
    base_.assign(n, 0);
    if (k > 0) {
        // least-norm solution E (E^T E)^{-1} gammaTilde
        RatMatrix e = to_rational(d_.embedding());
        RatMatrix gram = e.transpose() * e;
        auto c = solve(gram, p_.gamma_tilde);
        if (!c) throw Error("slice base point: singular Gram matrix");
        base_ = e.apply(*c);
    }
}

std::vector<Rational> SliceArrangement::point_at(const std::vector<Rational>& t) const {
    std::vector<Rational> a = base_;
    const auto& l = d_.quotient().char_lattice;
    for (std::size_t i = 0; i < d_.n(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) a[i] += l(i, j) * t[j];
    return a;
}

lp::Constraint SliceArrangement::coordinate_constraint(std::size_t i, lp::Relation rel, const Rational& level,
                                                       bool negate) const {
    const auto& l = d_.quotient().char_lattice;
    lp::Constraint c;
    c.coeffs.resize(dim());
    for (std::size_t j = 0; j < dim(); ++j) c.coeffs[j] = negate ? Rational(-l(i, j)) : Rational(l(i, j));
    c.relation = rel;
    c.rhs = negate ? base_[i] - level : level - base_[i];
    return c;
}

std::optional<std::vector<Rational>> SliceArrangement::face_point(const Label& x, const std::vector<CubeWall>& active,
                                                                  const std::vector<lp::Constraint>& extra) const {
    if (x.size() != d_.n()) throw Error("label length differs from n");
    std::vector<int> state(d_.n(), 0);  // 0 open, -1 lower active, +1 upper active
    for (const auto& w : active) {
        int s = w.upper ? 1 : -1;
        if (state[w.coordinate] != 0 && state[w.coordinate] != s) return std::nullopt;
        state[w.coordinate] = s;
    }
    std::vector<lp::Constraint> cons = extra;
    for (std::size_t i = 0; i < d_.n(); ++i) {
        Rational lo(static_cast<long>(x[i])), hi = lo + 1;
        if (state[i] == -1) {
            cons.push_back(coordinate_constraint(i, lp::Relation::Equal, lo, false));
            cons.push_back(coordinate_constraint(i, lp::Relation::Less, hi, false));
        } else if (state[i] == 1) {
            cons.push_back(coordinate_constraint(i, lp::Relation::Equal, hi, false));
            cons.push_back(coordinate_constraint(i, lp::Relation::Less, lo, true));
        } else {
            cons.push_back(coordinate_constraint(i, lp::Relation::Less, lo, true));
            cons.push_back(coordinate_constraint(i, lp::Relation::Less, hi, false));
        }
    }
    return lp::relative_interior_point(dim(), cons);
}

bool SliceArrangement::face_nonempty(const Label& x, const std::vector<CubeWall>& active) const {
    return face_point(x, active).has_value();
}

bool SliceArrangement::chamber_nonempty_uncached(const Label& x) const { return face_nonempty(x, {}); }

bool SliceArrangement::chamber_nonempty(const Label& x) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(x);
        if (it != cache_.end()) return it->second;
    }
    bool v = chamber_nonempty_uncached(x);
    std::lock_guard<std::mutex> lock(mu_);
    cache_.emplace(x, v);
    return v;
}

bool SliceArrangement::facet_exists(const Label& x, std::size_t i) const {
    Label key = x;
    key.push_back(static_cast<std::int64_t>(i));
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = facet_cache_.find(key);
        if (it != facet_cache_.end()) return it->second;
    }
    Label y = x;
    y[i] = checked_add(y[i], 1);
    bool v = chamber_nonempty(x) && chamber_nonempty(y) && face_nonempty(x, {CubeWall{i, true}});
    std::lock_guard<std::mutex> lock(mu_);
    facet_cache_.emplace(key, v);
    return v;
}

bool SliceArrangement::codim2_exists(const Label& x, std::size_t i, std::size_t j) const {
    if (i == j) return false;
    Label xi = x, xj = x;
    xi[i] = checked_add(xi[i], 1);
    xj[j] = checked_add(xj[j], 1);
    Label xij = xi;
    xij[j] = checked_add(xij[j], 1);
    if (!chamber_nonempty(x) || !chamber_nonempty(xi) || !chamber_nonempty(xj) || !chamber_nonempty(xij)) return false;
    return face_nonempty(x, {CubeWall{std::min(i, j), true}, CubeWall{std::max(i, j), true}});
}

std::vector<std::vector<CubeWall>> SliceArrangement::face_active_sets(const Label& x) const {
    std::vector<std::vector<CubeWall>> out;
    if (!chamber_nonempty(x)) return out;
    std::vector<CubeWall> all;
    for (std::size_t i = 0; i < d_.n(); ++i) {
        all.push_back({i, false});
        all.push_back({i, true});
    }
    std::vector<CubeWall> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        out.push_back(cur);
        if (cur.size() == dim()) return;
        for (std::size_t w = start; w < all.size(); ++w) {
            if (!cur.empty() && cur.back().coordinate == all[w].coordinate) continue;
            cur.push_back(all[w]);
            if (face_nonempty(x, cur)) rec(w + 1);
            cur.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

bool chamber_nonempty(const TorusDatum& d, const ParameterLift& p, const Label& x) {
    return SliceArrangement(d, p).chamber_nonempty_uncached(x);
}

std::vector<Label> window_labels(const SliceArrangement& s, const Window& w) {
    const std::size_t n = s.datum().n(), r = s.dim();
    const auto& l = s.datum().quotient().char_lattice;
    std::vector<Rational> off = w.offset.empty() ? std::vector<Rational>(r) : w.offset;
    if (off.size() != r) throw Error("window offset has wrong length");
    std::vector<lp::Constraint> box;
    for (std::size_t j = 0; j < r; ++j) {
        lp::Constraint lo{std::vector<Rational>(r), lp::Relation::LessEq, -off[j]};
        lo.coeffs[j] = -1;
        lp::Constraint hi{std::vector<Rational>(r), lp::Relation::LessEq, off[j] + 1};
        hi.coeffs[j] = 1;
        box.push_back(lo);
        box.push_back(hi);
    }
    std::vector<std::int64_t> xmin(n), xmax(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational lo = s.base_point()[i], hi = s.base_point()[i];
        for (std::size_t j = 0; j < r; ++j) {
            Rational a = Rational(l(i, j)) * off[j], b = Rational(l(i, j)) * (off[j] + 1);
            lo += std::min(a, b);
            hi += std::max(a, b);
        }
        xmin[i] = to_int64(floor_of(lo));
        xmax[i] = to_int64(ceil_of(hi)) - 1;
    }
    std::vector<Label> out;
    Label x(n);
    std::vector<lp::Constraint> cons = box;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            out.push_back(x);
            return;
        }
        for (std::int64_t v = xmin[i]; v <= xmax[i]; ++v) {
            x[i] = v;
            cons.push_back(s.coordinate_constraint(i, lp::Relation::Less, Rational(static_cast<long>(v)), true));
            cons.push_back(s.coordinate_constraint(i, lp::Relation::Less, Rational(static_cast<long>(v) + 1), false));
            if (lp::feasible(r, cons)) rec(i + 1);
            cons.pop_back();
            cons.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<ChamberClass> enumerate_chambers(const SliceArrangement& s, const Window& w) {
    auto g = is_generic(s.datum(), s.parameter());
    if (!g) throw NonGenericParameter("parameter lies on a wall");
    std::map<std::vector<Integer>, Label> reps;
    for (const auto& x : window_labels(s, w)) {
        auto inv = s.datum().restrict(x);
        auto it = reps.find(inv);
        if (it == reps.end() || x < it->second) reps[inv] = x;
    }
    std::vector<ChamberClass> out;
    for (const auto& [inv, x] : reps) out.push_back({0, x, inv});
    std::sort(out.begin(), out.end(),
              [](const ChamberClass& a, const ChamberClass& b) { return a.representative < b.representative; });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = i;
    return out;
}

std::vector<ChamberClass> enumerate_chambers(const TorusDatum& d, const ParameterLift& p) {
    return enumerate_chambers(SliceArrangement(d, p));
}

std::size_t class_index(const std::vector<ChamberClass>& classes, const std::vector<Integer>& invariant) {
    for (const auto& c : classes)
        if (c.invariant == invariant) return c.id;
    throw Error("label outside every chamber class");
}

std::vector<FacetOrbit> chamber_adjacency(const SliceArrangement& s, const std::vector<ChamberClass>& classes) {
    std::vector<FacetOrbit> out;
    for (const auto& c : classes) {
        for (std::size_t i = 0; i < s.datum().n(); ++i) {
            if (!s.facet_exists(c.representative, i)) continue;
            Label y = c.representative;
            y[i] = checked_add(y[i], 1);
            FacetOrbit f;
            f.lower_class = c.id;
            f.upper_class = class_index(classes, s.datum().restrict(y));
            f.coordinate = i;
            f.lower_label = c.representative;
            f.level = y[i];
            out.push_back(f);
        }
    }
    return out;
}

std::vector<FacetOrbit> chamber_adjacency(const TorusDatum& d, const ParameterLift& p) {
    SliceArrangement s(d, p);
    return chamber_adjacency(s, enumerate_chambers(s));
}

std::vector<SquareOrbit> square_orbits(const SliceArrangement& s, const std::vector<ChamberClass>& classes) {
    std::vector<SquareOrbit> out;
    const std::size_t n = s.datum().n();
    for (const auto& c : classes)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (s.codim2_exists(c.representative, i, j)) out.push_back({c.id, c.representative, i, j});
    return out;
}

std::size_t LocalStar::face_count(std::size_t codim) const {
    std::size_t k = 0;
    for (const auto& f : faces)
        if (f.dim + codim == ambient_dim) ++k;
    return k;
}

LocalStar local_star(const SliceArrangement& s, const Label& x, const std::vector<CubeWall>& center_walls,
                     StarKind kind) {
    if (!s.chamber_nonempty(x)) throw EmptyChamber("label " + to_string(x) + " has an empty chamber");
    auto sets = s.face_active_sets(x);
    std::vector<CubeWall> center = center_walls;
    std::sort(center.begin(), center.end());
    std::set<std::vector<CubeWall>> active(sets.begin(), sets.end());
    if (!active.count(center)) throw EmptyChamber("center walls do not cut out a face of " + to_string(x));
    std::set<CubeWall> wall_set(center.begin(), center.end());
    if (kind == StarKind::Closed) {
        for (const auto& a : sets)
            if (std::includes(a.begin(), a.end(), center.begin(), center.end())) wall_set.insert(a.begin(), a.end());
    }

    LocalStar star;
    star.base = x;
    star.ambient_dim = s.dim();
    std::vector<CubeWall> walls(wall_set.begin(), wall_set.end());
    for (const auto& w : walls)
        star.walls.push_back({w.coordinate, w.upper, w.upper ? checked_add(x[w.coordinate], 1) : x[w.coordinate]});
    const std::size_t m = walls.size();
    std::vector<bool> in_center(m, false);
    for (std::size_t a = 0; a < m; ++a)
        in_center[a] = std::find(center.begin(), center.end(), walls[a]) != center.end();
    star.center.assign(m, 1);
    for (std::size_t a = 0; a < m; ++a)
        if (in_center[a]) star.center[a] = 0;

    std::map<std::vector<int>, std::size_t> index;
    std::vector<int> sign(m, -1);
    while (true) {
        std::vector<CubeWall> z;
        std::size_t zeros = 0;
        for (std::size_t a = 0; a < m; ++a) {
            if (sign[a] == 0) ++zeros;
            if (in_center[a] || sign[a] != 1) z.push_back(walls[a]);
        }
        if (active.count(z) && zeros <= s.dim()) {
            index[sign] = star.faces.size();
            star.faces.push_back({sign, s.dim() - zeros});
        }
        std::size_t a = 0;
        while (a < m && sign[a] == 1) sign[a++] = -1;
        if (a == m) break;
        ++sign[a];
    }
    for (std::size_t f = 0; f < star.faces.size(); ++f) {
        const auto& sg = star.faces[f].sign;
        std::size_t zeros = std::count(sg.begin(), sg.end(), 0);
        if (zeros == 0) {
            Label y = x;
            for (std::size_t a = 0; a < m; ++a)
                if (sg[a] == -1) y[walls[a].coordinate] = checked_add(y[walls[a].coordinate], walls[a].upper ? 1 : -1);
            star.chambers.push_back(y);
            star.chamber_faces.push_back(f);
        } else if (zeros == 2) {
            star.codim2_faces.push_back(f);
        }
    }
    auto chamber_of = [&](const std::vector<int>& sg) {
        std::size_t f = index.at(sg);
        return static_cast<std::size_t>(std::find(star.chamber_faces.begin(), star.chamber_faces.end(), f) -
                                        star.chamber_faces.begin());
    };
    for (std::size_t f = 0; f < star.faces.size(); ++f) {
        const auto& sg = star.faces[f].sign;
        if (std::count(sg.begin(), sg.end(), 0) != 1) continue;
        std::size_t w = std::find(sg.begin(), sg.end(), 0) - sg.begin();
        auto minus = sg, plus = sg;
        minus[w] = -1;
        plus[w] = 1;
        star.facets.push_back({f, chamber_of(minus), chamber_of(plus), w});
    }
    for (std::size_t a = 0; a < star.faces.size(); ++a)
        for (std::size_t b = 0; b < star.faces.size(); ++b) {
            if (star.faces[b].dim != star.faces[a].dim + 1) continue;
            bool le = true;
            for (std::size_t w = 0; w < m && le; ++w)
                le = star.faces[a].sign[w] == 0 || star.faces[a].sign[w] == star.faces[b].sign[w];
            if (le) star.covers.emplace_back(a, b);
        }
    return star;
}

LocalStar local_star(const TorusDatum& d, const ParameterLift& p, const Label& x) {
    return local_star(SliceArrangement(d, p), x);
}

nlohmann::json to_json(const LocalStar& star) {
    nlohmann::json faces = nlohmann::json::array();
    for (const auto& f : star.faces) faces.push_back({{"sign", f.sign}, {"dim", f.dim}});
    nlohmann::json walls = nlohmann::json::array();
    for (const auto& w : star.walls) walls.push_back({{"coordinate", w.coordinate}, {"level", w.level}});
    nlohmann::json facets = nlohmann::json::array();
    for (const auto& f : star.facets) facets.push_back({f.lower, f.upper});
    return {{"base", star.base},         {"center", star.center}, {"walls", walls},
            {"faces", faces},            {"chambers", star.chambers}, {"facets", facets},
            {"codim2", star.codim2_faces.size()}};
}

}  // namespace hmt
