#include "hmt/rewrite.hpp"

#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace hmt {

Label Word::target() const {
    Label x = source;
    for (const auto& s : steps) x[s.coordinate] = checked_add(x[s.coordinate], s.dir);
    return x;
}

Word Word::then(const Word& after) const {
    if (target() != after.source) throw Error("words " + str() + " and " + after.str() + " are not composable");
    Word w = *this;
    w.steps.insert(w.steps.end(), after.steps.begin(), after.steps.end());
    return w;
}

std::string Word::str() const {
    std::ostringstream os;
    os << to_string(source);
    for (const auto& s : steps) os << (s.dir > 0 ? " u" : " v") << s.coordinate;
    return os.str();
}

std::vector<Label> word_labels(const Word& w) {
    std::vector<Label> out{w.source};
    for (const auto& s : w.steps) {
        Label x = out.back();
        x[s.coordinate] = checked_add(x[s.coordinate], s.dir);
        out.push_back(x);
    }
    return out;
}

void RewriteElement::add(const Word& w, const Laurent& c) {
    if (c.is_zero()) return;
    auto it = terms.find(w);
    if (it == terms.end()) {
        terms.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

RewriteElement RewriteElement::operator-(const RewriteElement& o) const {
    RewriteElement r = *this;
    for (const auto& [w, c] : o.terms) r.add(w, -c);
    r.non_terminating = non_terminating || o.non_terminating;
    return r;
}

RewriteElement word_element(const Word& w, const Laurent& c) {
    RewriteElement e;
    e.add(w, c);
    return e;
}

RewriteSystem::RewriteSystem(QuiverWithRelations q, RewriteOptions opt)
    : RewriteSystem(q, q.deck ? *q.deck : throw Error("rewriting needs facet characters or a deck matrix"), opt) {}

RewriteSystem::RewriteSystem(QuiverWithRelations q, const IntMatrix& chars, RewriteOptions opt)
    : q_(std::move(q)), chars_(chars), opt_(opt) {
    if (chars_.rows() != q_.n) throw Error("rewriting: character matrix has wrong size");
    signs_ = q_.signs.empty() ? std::vector<int>(q_.n, 1) : q_.signs;
    if (q_.quotient) {
        if (!q_.deck) throw Error("rewriting on a quotient quiver needs the deck matrix");
        deck_left_inverse_ = integer_left_inverse(*q_.deck);
    }
    for (std::size_t v = 0; v < q_.vertices.size(); ++v) by_label_[q_.vertices[v].label] = v;
    for (std::size_t a = 0; a < q_.arrow_pairs.size(); ++a)
        pair_of_[{q_.arrow_pairs[a].src, q_.arrow_pairs[a].facet.coordinate}] = a;
    for (const auto& r : q_.commute) squares_.insert({r.low, std::min(r.i, r.j), std::max(r.i, r.j), r.variant});
}

std::optional<std::size_t> RewriteSystem::vertex_of(const Label& x) const {
    if (!q_.quotient) {
        auto it = by_label_.find(x);
        if (it == by_label_.end()) return std::nullopt;
        return it->second;
    }
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = vertex_cache_.find(x);
        if (it != vertex_cache_.end()) return it->second;
    }
    std::optional<std::size_t> found;
    for (std::size_t v = 0; v < q_.vertices.size() && !found; ++v) {
        auto diff = to_integer(sub(x, q_.vertices[v].label));
        auto u = deck_left_inverse_.apply(diff);
        if (q_.deck->apply(u) == diff) found = v;
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    vertex_cache_[x] = found;
    return found;
}

bool RewriteSystem::has_vertex(const Label& x) const { return x.size() == q_.n && vertex_of(x).has_value(); }

bool RewriteSystem::has_step(const Label& x, const Step& s) const {
    if (s.dir > 0) {
        auto v = vertex_of(x);
        if (!v || !pair_of_.count({*v, s.coordinate})) return false;
        if (!q_.quotient) {
            Label y = x;
            ++y[s.coordinate];
            return q_.vertices[q_.arrow_pairs[pair_of_.at({*v, s.coordinate})].dst].label == y;
        }
        return true;
    }
    Label y = x;
    y[s.coordinate] = checked_add(y[s.coordinate], -1);
    return has_step(y, Step{s.coordinate, 1});
}

bool RewriteSystem::has_square(const Label& low, std::size_t i, std::size_t j, CommuteVariant var) const {
    if (i > j) std::swap(i, j);
    auto v = vertex_of(low);
    return v && squares_.count({*v, i, j, var});
}

bool RewriteSystem::valid(const Word& w) const {
    if (!has_vertex(w.source)) return false;
    Label x = w.source;
    for (const auto& s : w.steps) {
        if (s.coordinate >= q_.n || (s.dir != 1 && s.dir != -1) || !has_step(x, s)) return false;
        x[s.coordinate] += s.dir;
    }
    return true;
}

Laurent RewriteSystem::facet_unit(std::size_t i) const {
    Label e(chars_.cols());
    for (std::size_t a = 0; a < chars_.cols(); ++a) e[a] = to_int64(chars_(i, a));
    return Laurent::monomial(e, Rational(signs_[i]));
}

bool RewriteSystem::reduce_into(const Word& w, const Laurent& c, RewriteElement& out, std::size_t& budget) const {
    std::set<std::vector<Step>> seen{w.steps};
    std::deque<std::vector<Step>> queue{w.steps};
    while (!queue.empty()) {
        if (budget == 0 || seen.size() > opt_.max_class) {
            out.add(w, c);
            out.non_terminating = true;
            return false;
        }
        --budget;
        std::vector<Step> cur = std::move(queue.front());
        queue.pop_front();
        for (std::size_t p = 0; p + 1 < cur.size(); ++p) {
            if (cur[p].coordinate == cur[p + 1].coordinate && cur[p].dir == -cur[p + 1].dir) {
                Word shorter{w.source, {}};
                shorter.steps.insert(shorter.steps.end(), cur.begin(), cur.begin() + p);
                shorter.steps.insert(shorter.steps.end(), cur.begin() + p + 2, cur.end());
                Laurent f = facet_unit(cur[p].coordinate) - Laurent::constant(nvars(), 1);
                return reduce_into(shorter, c * f, out, budget);
            }
        }
        Label x = w.source;
        for (std::size_t p = 0; p + 1 < cur.size(); ++p) {
            const Step a = cur[p], b = cur[p + 1];
            if (a.coordinate != b.coordinate) {
                Label low = x;
                if (a.dir < 0) --low[a.coordinate];
                if (b.dir < 0) --low[b.coordinate];
                CommuteVariant var = a.dir > 0 && b.dir > 0   ? CommuteVariant::B
                                     : a.dir < 0 && b.dir < 0 ? CommuteVariant::A
                                                              : CommuteVariant::C;
                bool allowed = (var == CommuteVariant::A && opt_.use_a) || (var == CommuteVariant::B && opt_.use_b) ||
                               (var == CommuteVariant::C && opt_.use_c);
                if (allowed && has_square(low, a.coordinate, b.coordinate, var)) {
                    auto next = cur;
                    std::swap(next[p], next[p + 1]);
                    if (seen.insert(next).second) queue.push_back(std::move(next));
                }
            }
            x[a.coordinate] += a.dir;
        }
    }
    out.add(Word{w.source, *seen.begin()}, c);
    return true;
}

RewriteElement RewriteSystem::reduce(const Word& w, std::size_t max_steps) const {
    if (!valid(w)) throw Error("word " + w.str() + " is not a path in the quiver");
    RewriteElement out;
    std::size_t budget = max_steps;
    reduce_into(w, Laurent::constant(nvars(), 1), out, budget);
    return out;
}

RewriteElement RewriteSystem::reduce(const RewriteElement& e, std::size_t max_steps) const {
    RewriteElement out;
    out.non_terminating = e.non_terminating;
    std::size_t budget = max_steps;
    for (const auto& [w, c] : e.terms) {
        if (!valid(w)) throw Error("word " + w.str() + " is not a path in the quiver");
        reduce_into(w, c, out, budget);
    }
    return out;
}

std::optional<bool> RewriteSystem::equal(const RewriteElement& a, const RewriteElement& b, std::size_t max_steps) const {
    auto d = reduce(a - b, max_steps);
    if (d.non_terminating) return std::nullopt;
    return d.is_zero();
}

std::vector<Word> RewriteSystem::words_from(const Label& x, std::size_t max_len) const {
    std::vector<Word> out;
    if (!has_vertex(x)) return out;
    Word w{x, {}};
    std::function<void(const Label&)> grow = [&](const Label& at) {
        out.push_back(w);
        if (w.steps.size() == max_len) return;
        for (std::size_t i = 0; i < q_.n; ++i)
            for (int d : {1, -1}) {
                Step s{i, d};
                if (!has_step(at, s)) continue;
                Label next = at;
                next[i] += d;
                w.steps.push_back(s);
                grow(next);
                w.steps.pop_back();
            }
    };
    grow(x);
    return out;
}

NormalFormElement to_normal_form(const NormalFormAlgebra& alg, const RewriteElement& e) {
    NormalFormElement r;
    for (const auto& [w, c] : e.terms) r += alg.path_element(word_labels(w)) * c;
    return r;
}

OracleReport compare_rewriting(std::shared_ptr<const CoverModel> m, std::size_t max_total, RewriteOptions opt) {
    OracleReport r;
    r.check = "rewriting";
    r.cutoff = max_total;
    NormalFormAlgebra alg(m);
    RewriteSystem rs(quotient_quiver(*m), opt);
    std::size_t pairs = 0, words = 0;
    for (const auto& c : m->classes()) {
        std::map<std::pair<Label, Label>, std::vector<Word>> parallel;
        for (auto& w : rs.words_from(c.representative, max_total)) parallel[{w.source, w.target()}].push_back(w);
        for (const auto& [ends, ws] : parallel) {
            std::vector<NormalFormElement> nf;
            std::vector<RewriteElement> red;
            for (const auto& w : ws) {
                nf.push_back(alg.path_element(word_labels(w)));
                red.push_back(rs.reduce(w));
                ++words;
                if (red.back().non_terminating) r.fail("rewriting budget exhausted on " + w.str());
            }
            for (std::size_t a = 0; a < ws.size(); ++a)
                for (std::size_t b = a + 1; b < ws.size(); ++b) {
                    if (ws[a].length() + ws[b].length() > max_total) continue;
                    ++pairs;
                    bool rw = red[a].terms == red[b].terms, n = nf[a] == nf[b];
                    if (rw != n && r.mismatches.size() < 20)
                        r.fail(ws[a].str() + " vs " + ws[b].str() + ": rewriting says " + (rw ? "equal" : "different") +
                               ", normal form says " + (n ? "equal" : "different"));
                    else if (rw != n)
                        r.pass = false;
                }
        }
    }
    r.stats["words"] = words;
    r.stats["pairs"] = pairs;
    return r;
}

}  // namespace hmt
