#include "hmt/algebra.hpp"

#include <functional>

namespace hmt {

void NormalFormElement::add(const Label& src, const Label& dst, const Laurent& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(src, dst);
    auto it = entries.find(key);
    if (it == entries.end()) {
        entries.emplace(key, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) entries.erase(it);
}

NormalFormElement& NormalFormElement::operator+=(const NormalFormElement& o) {
    for (const auto& [k, c] : o.entries) add(k.first, k.second, c);
    return *this;
}

NormalFormElement NormalFormElement::operator-(const NormalFormElement& o) const {
    NormalFormElement r = *this;
    for (const auto& [k, c] : o.entries) r.add(k.first, k.second, -c);
    return r;
}

NormalFormElement NormalFormElement::operator*(const Laurent& c) const {
    NormalFormElement r;
    for (const auto& [k, v] : entries) r.add(k.first, k.second, v * c);
    return r;
}

std::vector<std::int64_t> excess_crossings(const Label& x, const Label& y, const Label& z) {
    std::vector<std::int64_t> b(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::int64_t twice = std::abs(y[i] - x[i]) + std::abs(z[i] - y[i]) - std::abs(z[i] - x[i]);
        b[i] = twice / 2;
    }
    return b;
}

NormalFormAlgebra::NormalFormAlgebra(std::shared_ptr<const CoverModel> model) : model_(std::move(model)) {
    if (!is_unimodular(model_->datum()))
        throw OrbifoldUnsupported("normal form needs unimodular data; use the rewriting evaluator");
    for (std::size_t i = 0; i < model_->n(); ++i)
        facet_minus_one_.push_back(model_->facet_unit(i) - Laurent::constant(nvars(), 1));
}

NormalFormElement NormalFormAlgebra::idempotent(const Label& x) const {
    if (!model_->has_vertex(x)) throw EmptyChamber("no vertex " + to_string(x));
    NormalFormElement e;
    if (in_corner(x)) e.add(x, x, Laurent::constant(nvars(), 1));
    return e;
}

NormalFormElement NormalFormAlgebra::scalar(const Label& x, const Laurent& c) const {
    return idempotent(x) * c;
}

std::optional<std::vector<Label>> monotone_facet_path(const CoverModel& m, const Label& x, const Label& y) {
    if (!m.has_vertex(x) || !m.has_vertex(y)) return std::nullopt;
    std::set<Label> dead;
    std::vector<Label> path{x};
    std::function<bool(const Label&)> walk = [&](const Label& a) -> bool {
        if (a == y) return true;
        if (dead.count(a)) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == y[i]) continue;
            std::int64_t s = y[i] > a[i] ? 1 : -1;
            Label b = a;
            b[i] += s;
            bool ok = s > 0 ? m.has_arrow(a, i) : m.has_arrow(b, i);
            if (!ok) continue;
            path.push_back(b);
            if (walk(b)) return true;
            path.pop_back();
        }
        dead.insert(a);
        return false;
    };
    if (!walk(x)) return std::nullopt;
    return path;
}

NormalFormElement NormalFormAlgebra::minimal_path_element(const Label& x, const Label& y) const {
    if (!model_->has_vertex(x) || !model_->has_vertex(y))
        throw EmptyChamber("minimal path between " + to_string(x) + " and " + to_string(y) + ": empty chamber");
    if (!monotone_facet_path(*model_, x, y))
        throw NoMinimalPath("no taxicab-minimal facet path from " + to_string(x) + " to " + to_string(y));
    NormalFormElement e;
    if (in_corner(x) && in_corner(y)) e.add(x, y, Laurent::constant(nvars(), 1));
    return e;
}

NormalFormElement NormalFormAlgebra::compose(const NormalFormElement& a, const NormalFormElement& b) const {
    std::map<Label, std::vector<const std::pair<const std::pair<Label, Label>, Laurent>*>> by_src;
    for (const auto& e : a.entries) by_src[e.first.first].push_back(&e);
    NormalFormElement r;
    for (const auto& [kb, cb] : b.entries) {
        auto it = by_src.find(kb.second);
        if (it == by_src.end()) continue;
        for (const auto* ea : it->second) {
            const Label& x = kb.first;
            const Label& y = kb.second;
            const Label& z = ea->first.second;
            Laurent c = ea->second * cb;
            auto bs = excess_crossings(x, y, z);
            for (std::size_t i = 0; i < bs.size(); ++i)
                if (bs[i] > 0) c = c * facet_minus_one_[i].pow(static_cast<unsigned>(bs[i]));
            r.add(x, z, c);
        }
    }
    return r;
}

NormalFormElement NormalFormAlgebra::path_element(const std::vector<Label>& path) const {
    if (path.empty()) return {};
    NormalFormElement acc = idempotent(path.front());
    for (std::size_t s = 1; s < path.size(); ++s) {
        const Label& a = path[s - 1];
        const Label& b = path[s];
        Label d = sub(b, a);
        if (l1_norm(d) != 1) throw Error("path step " + to_string(a) + " -> " + to_string(b) + " is not a facet crossing");
        std::size_t i = 0;
        while (d[i] == 0) ++i;
        bool ok = d[i] > 0 ? model_->has_arrow(a, i) : model_->has_arrow(b, i);
        if (!ok) throw Error("no arrow between " + to_string(a) + " and " + to_string(b));
        NormalFormElement step;
        step.add(a, b, Laurent::constant(nvars(), 1));
        acc = compose(step, acc);
    }
    return acc;
}

NormalFormElement NormalFormAlgebra::project(const NormalFormElement& a) const {
    NormalFormElement r;
    for (const auto& [k, c] : a.entries)
        if (in_corner(k.first) && in_corner(k.second)) r.add(k.first, k.second, c);
    return r;
}

NormalFormElement NormalFormAlgebra::deck_translate(const NormalFormElement& a, const Label& u) const {
    NormalFormElement r;
    for (const auto& [k, c] : a.entries) r.add(model_->deck_translate(k.first, u), model_->deck_translate(k.second, u), c);
    return r;
}

std::vector<std::size_t> NormalFormAlgebra::hom_rank_table(const Label& x, const Label& y, std::size_t cutoff) const {
    minimal_path_element(x, y);
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t <= cutoff; ++t) {
        Integer v = 1;
        for (std::size_t a = 0; a < nvars(); ++a) v *= Integer(2 * t + 1);
        out.push_back(v.get_ui());
    }
    if (corner_ && !(corner_->count(x) && corner_->count(y))) std::fill(out.begin(), out.end(), 0);
    return out;
}

NormalFormAlgebra NormalFormAlgebra::truncate_by_idempotents(const std::set<Label>& vertices) const {
    for (const auto& v : vertices)
        if (!model_->has_vertex(v)) throw EmptyChamber("truncation vertex " + to_string(v) + " is empty");
    NormalFormAlgebra r = *this;
    std::set<Label> keep;
    for (const auto& v : vertices)
        if (in_corner(v)) keep.insert(v);
    r.corner_ = keep;
    return r;
}

nlohmann::json to_json(const NormalFormElement& a) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [k, c] : a.entries) entries.push_back({{"src", k.first}, {"dst", k.second}, {"coeff", to_json(c)}});
    return {{"entries", entries}};
}

NormalFormElement normal_form_from_json(const nlohmann::json& j, std::size_t nvars) {
    try {
        NormalFormElement a;
        for (const auto& e : j.at("entries"))
            a.add(e.at("src").get<Label>(), e.at("dst").get<Label>(), laurent_from_json(e.at("coeff"), nvars));
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("algebra element json: ") + e.what());
    }
}

}  // namespace hmt
