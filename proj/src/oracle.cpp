#include "hmt/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace hmt {

void OracleElement::add(const Label& d, const Laurent& c) {
    if (c.is_zero()) return;
    auto it = terms.find(d);
    if (it == terms.end()) {
        terms.emplace(d, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

OracleElement OracleElement::operator-(const OracleElement& o) const {
    OracleElement r = *this;
    for (const auto& [d, c] : o.terms) r.add(d, -c);
    return r;
}

OracleRing::OracleRing(const TorusDatum& d, std::vector<int> signs)
    : n_(d.n()), e_(d.embedding()), signs_(std::move(signs)) {
    if (signs_.empty()) signs_.assign(n_, 1);
    const std::size_t k = d.k(), r = n_ - k;
    qbar_.assign(n_, Label(r, 0));
    if (k == 0) {
        for (std::size_t i = 0; i < n_; ++i) qbar_[i][i] = 1;
        return;
    }
    // U E V = diag(1,...,1,0...): the last n-k rows of U give Z^n -> Z^n / image(E)
    SmithDecomposition s = smith_decompose(e_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t a = 0; a < r; ++a) qbar_[i][a] = to_int64(s.left(k + a, i));
}

OracleElement OracleRing::one() const { return monomial(Label(n_, 0)); }

OracleElement OracleRing::z(std::size_t i) const {
    Label d(n_, 0);
    d[i] = 1;
    return monomial(d);
}

OracleElement OracleRing::w(std::size_t i) const {
    Label d(n_, 0);
    d[i] = -1;
    return monomial(d);
}

OracleElement OracleRing::monomial(const Label& d, const Label& c, const Rational& coeff) const {
    OracleElement e;
    e.add(d, Laurent::monomial(c.empty() ? Label(rank(), 0) : c, coeff));
    return e;
}

OracleElement OracleRing::multiply(const OracleElement& a, const OracleElement& b) const {
    OracleElement out;
    for (const auto& [d1, c1] : a.terms)
        for (const auto& [d2, c2] : b.terms) {
            Label d(n_);
            Laurent coeff = c1 * c2;
            for (std::size_t i = 0; i < n_; ++i) {
                d[i] = checked_add(d1[i], d2[i]);
                // z^{a} w^{b} with a = d1+ + d2+, b = d1- + d2-: cancel min(a, b) pairs z_i w_i
                std::int64_t zs = std::max<std::int64_t>(d1[i], 0) + std::max<std::int64_t>(d2[i], 0);
                std::int64_t ws = std::max<std::int64_t>(-d1[i], 0) + std::max<std::int64_t>(-d2[i], 0);
                std::int64_t p = std::min(zs, ws);
                if (p == 0) continue;
                // (sign M^qbar - 1)^p
                Laurent expand(rank());
                Integer binom = 1;
                for (std::int64_t j = 0; j <= p; ++j) {
                    Label ex(rank());
                    for (std::size_t t = 0; t < rank(); ++t) ex[t] = checked_mul(j, qbar_[i][t]);
                    Rational c(binom);
                    if ((p - j) % 2) c = -c;
                    if (signs_[i] < 0 && j % 2) c = -c;
                    expand.add_term(ex, c);
                    binom = binom * (p - j) / (j + 1);
                }
                coeff = coeff * expand;
            }
            out.add(d, coeff);
        }
    return out;
}

std::vector<Integer> OracleRing::restriction(const Label& d) const {
    std::vector<Integer> r(e_.cols());
    for (std::size_t j = 0; j < e_.cols(); ++j)
        for (std::size_t i = 0; i < n_; ++i) r[j] += e_(i, j) * Integer(static_cast<long>(d[i]));
    return r;
}

void OracleReport::fail(const std::string& what) {
    pass = false;
    mismatches.push_back(what);
}

nlohmann::json to_json(const OracleReport& r) {
    return {{"check", r.check},
            {"cutoff", r.cutoff},
            {"status", r.pass ? "pass" : "fail"},
            {"mismatches", r.mismatches},
            {"stats", r.stats},
            {"ranks", r.ranks}};
}

std::optional<IntMatrix> oracle_basis_change(const OracleRing& ring, const TorusDatum& d) {
    const std::size_t n = d.n(), r = ring.rank();
    const auto& quo = d.quotient();
    // T = Qbar * P^T where P L = I, then check Qbar = T L^T and det T = +-1
    IntMatrix qbar(r, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < r; ++a) qbar(a, i) = ring.qbar()[i][a];
    IntMatrix t = qbar * quo.char_left_inverse.transpose();
    if (t * quo.char_lattice.transpose() != qbar) return std::nullopt;
    Integer det = r == 0 ? Integer(1) : determinant(t);
    if (det != 1 && det != -1) return std::nullopt;
    return t;
}

OracleElement oracle_image(const NormalFormElement& a, const IntMatrix& t) {
    std::vector<std::vector<std::int64_t>> m(t.rows(), std::vector<std::int64_t>(t.cols()));
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t j = 0; j < t.cols(); ++j) m[i][j] = to_int64(t(i, j));
    OracleElement out;
    for (const auto& [k, c] : a.entries) out.add(sub(k.second, k.first), c.transform(m, t.rows()));
    return out;
}

namespace {

struct HomBasis {
    Label deck;    // target = representative(y) + L deck
    Label target;
    Label weight;  // target - source
    NormalFormElement element;
};

std::int64_t deg(const Label& d) { return l1_norm(d); }

// All d in Z^n with |d|_1 <= cutoff.
std::vector<Label> l1_ball(std::size_t n, std::int64_t cutoff) {
    std::vector<Label> out;
    Label d(n, 0);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
        if (i == n) {
            out.push_back(d);
            return;
        }
        for (std::int64_t v = -left; v <= left; ++v) {
            d[i] = v;
            rec(i + 1, left - std::abs(v));
        }
        d[i] = 0;
    };
    rec(0, cutoff);
    return out;
}

// Deck coordinates u with |y + L u - x|_1 <= cutoff.
std::vector<Label> deck_candidates(const CoverModel& m, const Label& x, const Label& y, std::int64_t cutoff) {
    const auto& p = m.datum().quotient().char_left_inverse;
    std::int64_t norm = 0;
    for (std::size_t a = 0; a < p.rows(); ++a) {
        std::int64_t row = 0;
        for (std::size_t b = 0; b < p.cols(); ++b) row += to_int64(abs(p(a, b)));
        norm = std::max(norm, row);
    }
    const std::int64_t bound = norm * (cutoff + l1_norm(sub(y, x)));
    std::vector<Label> out;
    const std::size_t r = m.rank();
    Label u(r, -bound);
    while (true) {
        if (l1_norm(sub(m.deck_translate(y, u), x)) <= cutoff) out.push_back(u);
        std::size_t a = 0;
        while (a < r && u[a] == bound) u[a++] = -bound;
        if (a == r) break;
        ++u[a];
    }
    return out;
}

std::string show(const OracleElement& e) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, c] : e.terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*zw" << to_string(d);
    }
    return first ? "0" : os.str();
}

struct Context {
    std::shared_ptr<MirrorModel> model;
    std::unique_ptr<NormalFormAlgebra> alg;
    std::unique_ptr<OracleRing> ring;
    IntMatrix t;
};

bool setup(Context& ctx, OracleReport& rep, const TorusDatum& d, const ParameterLift& p, const OracleOptions& opt) {
    ctx.model = std::make_shared<MirrorModel>(d, p);
    ctx.alg = std::make_unique<NormalFormAlgebra>(ctx.model);
    auto signs = ctx.model->signs();
    if (opt.flip_sign) signs.at(*opt.flip_sign) = -signs.at(*opt.flip_sign);
    ctx.ring = std::make_unique<OracleRing>(d, signs);
    auto t = oracle_basis_change(*ctx.ring, d);
    if (!t) {
        rep.fail("quotient bases are not related by a unimodular change of basis");
        return false;
    }
    ctx.t = *t;
    return true;
}

// Hom slice e_y A e_x summed over deck translates of y, cut at |weight| <= cutoff.
std::vector<HomBasis> hom_slice(const Context& ctx, OracleReport& rep, const Label& x, const Label& y,
                                std::int64_t cutoff) {
    std::vector<HomBasis> out;
    for (const auto& u : deck_candidates(*ctx.model, x, y, cutoff)) {
        Label target = ctx.model->deck_translate(y, u);
        try {
            out.push_back({u, target, sub(target, x), ctx.alg->minimal_path_element(x, target)});
        } catch (const NoMinimalPath& e) {
            rep.fail(e.what());
        }
    }
    return out;
}

void compare_ranks(const Context& ctx, OracleReport& rep, const std::string& where, const std::vector<HomBasis>& path,
                   const Label& x, const Label& y, std::int64_t cutoff) {
    const std::size_t n = ctx.model->n();
    auto want = ctx.ring->restriction(sub(y, x));
    std::set<Label> oracle_weights;
    for (const auto& d : l1_ball(n, cutoff))
        if (ctx.ring->restriction(d) == want) oracle_weights.insert(d);
    std::set<Label> path_weights;
    for (const auto& b : path) {
        if (!path_weights.insert(b.weight).second) rep.fail(where + ": weight " + to_string(b.weight) + " hit twice");
        auto img = oracle_image(b.element, ctx.t);
        if (!(img == ctx.ring->monomial(b.weight)))
            rep.fail(where + ": image of c" + to_string(b.target) + " is " + show(img));
    }
    std::vector<std::size_t> pr(cutoff + 1, 0), orr(cutoff + 1, 0);
    for (const auto& w : path_weights) ++pr[deg(w)];
    for (const auto& w : oracle_weights) ++orr[deg(w)];
    // the lattice factor: M^c with |c|_inf <= cutoff on both sides (T is unimodular, so T^{-1} of the box)
    std::size_t lattice = 1;
    for (std::size_t a = 0; a < ctx.ring->rank(); ++a) lattice *= 2 * cutoff + 1;
    for (auto& v : pr) v *= lattice;
    for (auto& v : orr) v *= lattice;
    if (pr != orr) {
        std::ostringstream os;
        os << where << ": graded ranks differ";
        for (std::size_t t = 0; t < pr.size(); ++t) os << " [" << t << ": " << pr[t] << " vs " << orr[t] << "]";
        rep.fail(os.str());
    }
    if (path_weights != oracle_weights) rep.fail(where + ": weight sets differ");
    std::vector<std::size_t> row = pr;
    row.insert(row.end(), orr.begin(), orr.end());
    rep.ranks.push_back(row);
    rep.stats["basis"] += path.size() * lattice;
}

void check_product(const Context& ctx, OracleReport& rep, const std::string& where, const HomBasis& a,
                   const HomBasis& b_translated_src, const NormalFormElement& b_moved) {
    auto path = oracle_image(ctx.alg->compose(b_moved, a.element), ctx.t);
    auto oracle = ctx.ring->multiply(oracle_image(a.element, ctx.t), oracle_image(b_translated_src.element, ctx.t));
    ++rep.stats["products"];
    if (!(path == oracle))
        rep.fail(where + ": c" + to_string(a.target) + " then weight " + to_string(b_translated_src.weight) +
                 ": path " + show(path) + " vs oracle " + show(oracle));
}

void check_scalars(const Context& ctx, OracleReport& rep, const std::string& where, const HomBasis& a) {
    const std::size_t r = ctx.model->rank();
    for (std::size_t j = 0; j < r; ++j)
        for (std::int64_t s : {1, -1}) {
            Laurent m = Laurent::variable(r, j, s);
            auto left = oracle_image(ctx.alg->compose(a.element, ctx.alg->scalar(a.element.entries.begin()->first.first, m)), ctx.t);
            auto right = oracle_image(ctx.alg->compose(ctx.alg->scalar(a.target, m), a.element), ctx.t);
            Label e(r, 0);
            e[j] = s;
            Label te(r, 0);
            for (std::size_t i = 0; i < r; ++i) te[i] = checked_mul(s, to_int64(ctx.t(i, j)));
            auto oracle = ctx.ring->multiply(ctx.ring->monomial(a.weight), ctx.ring->monomial(Label(ctx.model->n(), 0), te));
            ++rep.stats["scalars"];
            if (!(left == oracle) || !(right == oracle)) rep.fail(where + ": loop m^" + to_string(e) + " is not central");
        }
}

bool full(const OracleReport& rep, const OracleOptions& opt) { return rep.mismatches.size() >= opt.max_mismatches; }

}  // namespace

OracleReport verify_tilting_iso(const TorusDatum& d, const ParameterLift& p, std::size_t cutoff, const OracleOptions& opt) {
    OracleReport rep;
    rep.check = "tilting";
    rep.cutoff = cutoff;
    Context ctx;
    if (!setup(ctx, rep, d, p, opt)) return rep;
    const auto& classes = ctx.model->classes();
    const auto N = static_cast<std::int64_t>(cutoff);
    std::map<std::pair<std::size_t, std::size_t>, std::vector<HomBasis>> homs;
    for (const auto& cx : classes)
        for (const auto& cy : classes) {
            auto& h = homs[{cx.id, cy.id}];
            h = hom_slice(ctx, rep, cx.representative, cy.representative, N);
            std::string where = "Hom(" + to_string(cx.representative) + ", " + to_string(cy.representative) + ")";
            compare_ranks(ctx, rep, where, h, cx.representative, cy.representative, N);
            for (const auto& a : h) check_scalars(ctx, rep, where, a);
        }
    for (const auto& cx : classes)
        for (const auto& cy : classes)
            for (const auto& cw : classes) {
                if (full(rep, opt)) break;
                std::string where = "classes " + std::to_string(cx.id) + "->" + std::to_string(cy.id) + "->" + std::to_string(cw.id);
                for (const auto& a : homs[{cx.id, cy.id}])
                    for (const auto& b : homs[{cy.id, cw.id}]) {
                        if (deg(a.weight) + deg(b.weight) > N) continue;
                        check_product(ctx, rep, where, a, b, ctx.alg->deck_translate(b.element, a.deck));
                    }
            }
    return rep;
}

OracleReport verify_invariant_corner(const TorusDatum& d, const ParameterLift& p, std::size_t cutoff,
                                     const OracleOptions& opt) {
    OracleReport rep;
    rep.check = "invariant-corner";
    rep.cutoff = cutoff;
    Context ctx;
    if (!setup(ctx, rep, d, p, opt)) return rep;
    const auto N = static_cast<std::int64_t>(cutoff);
    for (const auto& c : ctx.model->classes()) {
        const Label& x = c.representative;
        std::string where = "corner " + to_string(x);
        auto h = hom_slice(ctx, rep, x, x, N);
        compare_ranks(ctx, rep, where, h, x, x, N);
        for (const auto& a : h) {
            auto res = ctx.ring->restriction(a.weight);
            if (std::any_of(res.begin(), res.end(), [](const Integer& v) { return v != 0; }))
                rep.fail(where + ": weight " + to_string(a.weight) + " is not invariant");
            check_scalars(ctx, rep, where, a);
        }
        for (const auto& a : h)
            for (const auto& b : h) {
                if (full(rep, opt)) break;
                if (deg(a.weight) + deg(b.weight) > N) continue;
                auto moved = ctx.alg->deck_translate(b.element, a.deck);
                check_product(ctx, rep, where, a, b, moved);
                auto prod = ctx.ring->multiply(ctx.ring->monomial(a.weight), ctx.ring->monomial(b.weight));
                for (const auto& [w, coeff] : prod.terms)
                    for (const auto& v : ctx.ring->restriction(w))
                        if (v != 0) rep.fail(where + ": invariant slice not closed at " + to_string(w));
            }
    }
    return rep;
}

}  // namespace hmt
