#include "hmt/completion.hpp"

#include <cmath>
#include <sstream>

namespace hmt {

TruncatedSeries::TruncatedSeries(std::vector<std::string> vars, std::size_t order, std::size_t nsymbols)
    : vars_(std::move(vars)), order_(order), nsymbols_(nsymbols) {}

TruncatedSeries TruncatedSeries::constant(std::vector<std::string> vars, std::size_t order, const Laurent& c) {
    TruncatedSeries s(std::move(vars), order, c.nvars());
    s.add_term(Label(s.nvars(), 0), c);
    return s;
}

TruncatedSeries TruncatedSeries::variable(std::vector<std::string> vars, std::size_t order, std::size_t i,
                                          std::size_t nsymbols) {
    TruncatedSeries s(std::move(vars), order, nsymbols);
    Label e(s.nvars(), 0);
    e.at(i) = 1;
    s.add_term(e, Laurent::constant(nsymbols, 1));
    return s;
}

Laurent TruncatedSeries::coefficient(const Label& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Laurent(nsymbols_) : it->second;
}

Rational TruncatedSeries::rational_coefficient(const Label& e) const {
    Laurent c = coefficient(e);
    if (c.is_zero()) return 0;
    if (c.terms().size() != 1 || c.max_abs_exponent() != 0) throw Error("coefficient involves formal symbols");
    return c.terms().begin()->second;
}

std::size_t TruncatedSeries::degree() const {
    std::size_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max<std::size_t>(d, l1_norm(e));
    return d;
}

void TruncatedSeries::add_term(const Label& e, const Laurent& c) {
    if (e.size() != nvars()) throw Error("series exponent has wrong length");
    if (c.is_zero() || static_cast<std::size_t>(l1_norm(e)) > order_) return;
    if (c.nvars() != nsymbols_) throw Error("series coefficient has wrong symbol count");
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
    if (vars_ != o.vars_ || nsymbols_ != o.nsymbols_) throw Error("series live in different rings");
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
    check_compatible(o);
    order_ = std::min(order_, o.order_);
    std::map<Label, Laurent> keep;
    for (auto& [e, c] : terms_)
        if (static_cast<std::size_t>(l1_norm(e)) <= order_) keep.emplace(e, c);
    terms_ = std::move(keep);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const { return *this + o * Laurent::constant(nsymbols_, -1); }

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    check_compatible(o);
    TruncatedSeries r(vars_, std::min(order_, o.order_), nsymbols_);
    for (const auto& [e1, c1] : terms_) {
        auto d1 = l1_norm(e1);
        for (const auto& [e2, c2] : o.terms_) {
            if (static_cast<std::size_t>(d1 + l1_norm(e2)) > r.order_) continue;
            r.add_term(add(e1, e2), c1 * c2);
        }
    }
    return r;
}

TruncatedSeries TruncatedSeries::operator*(const Laurent& c) const {
    TruncatedSeries r(vars_, order_, nsymbols_);
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

TruncatedSeries TruncatedSeries::pow(unsigned e) const {
    TruncatedSeries r = constant(vars_, order_, Laurent::constant(nsymbols_, 1));
    TruncatedSeries b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
    return vars_ == o.vars_ && order_ == o.order_ && nsymbols_ == o.nsymbols_ && terms_ == o.terms_;
}

TruncatedSeries TruncatedSeries::truncated(std::size_t order) const {
    TruncatedSeries r(vars_, order, nsymbols_);
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    return r;
}

TruncatedSeries TruncatedSeries::substitute(const std::vector<TruncatedSeries>& images) const {
    if (images.size() != nvars()) throw Error("substitution needs one image per variable");
    if (images.empty()) throw Error("substitution into a constant series needs a target ring");
    for (const auto& im : images) {
        images[0].check_compatible(im);
        if (!im.coefficient(Label(im.nvars(), 0)).is_zero()) throw Error("substituted series must have no constant term");
        if (im.nsymbols() != nsymbols_) throw Error("substitution mixes symbol rings");
    }
    const std::size_t order = images[0].order();
    std::vector<std::vector<TruncatedSeries>> powers(nvars());
    TruncatedSeries out(images[0].vars(), order, nsymbols_);
    for (const auto& [e, c] : terms_) {
        TruncatedSeries term = constant(images[0].vars(), order, c);
        for (std::size_t v = 0; v < nvars(); ++v) {
            auto& pw = powers[v];
            if (pw.empty()) pw.push_back(constant(images[0].vars(), order, Laurent::constant(nsymbols_, 1)));
            while (pw.size() <= static_cast<std::size_t>(e[v])) pw.push_back(pw.back() * images[v].truncated(order));
            if (e[v] > 0) term = term * pw[e[v]];
        }
        out += term;
    }
    return out;
}

std::string TruncatedSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    std::vector<std::string> symbols;
    for (std::size_t s = 0; s < nsymbols_; ++s) symbols.push_back(s % 2 == 0 ? "H" : "L");
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str(symbols) << ")";
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v]) os << "*" << vars_[v] << (e[v] > 1 ? "^" + std::to_string(e[v]) : "");
    }
    return os.str();
}

namespace {

Rational factorial(std::size_t k) {
    Integer f = 1;
    for (std::size_t j = 2; j <= k; ++j) f *= static_cast<unsigned long>(j);
    return Rational(f);
}

}  // namespace

TruncatedSeries build_gamma_series(std::size_t order, bool h_is_one) {
    if (h_is_one) {
        TruncatedSeries s({"p"}, order);
        for (std::size_t j = 0; j <= order; ++j)
            s.add_term(Label{static_cast<std::int64_t>(j)},
                       Laurent::constant(0, Rational(j % 2 ? -1 : 1, static_cast<long>(j + 1))));
        return s;
    }
    // symbols: 0 = H, 1 = L
    TruncatedSeries s({"p"}, order, 2);
    s.add_term(Label{0}, Laurent::variable(2, 1));
    TruncatedSeries shifted({"p"}, order, 2);  // (p + 1 - H) / H
    shifted.add_term(Label{1}, Laurent::variable(2, 0, -1));
    shifted.add_term(Label{0}, Laurent::variable(2, 0, -1) - Laurent::constant(2, 1));
    TruncatedSeries power = TruncatedSeries::constant({"p"}, order, Laurent::constant(2, 1));
    for (std::size_t j = 1; j <= order; ++j) {
        power = power * shifted;
        s += power * Laurent::constant(2, Rational(j % 2 ? 1 : -1, static_cast<long>(j)));
    }
    return s;
}

TruncatedSeries build_delta_series(std::size_t order, bool h_is_one) {
    if (h_is_one) {
        TruncatedSeries s({"q"}, order);
        for (std::size_t j = 0; j <= order; ++j)
            s.add_term(Label{static_cast<std::int64_t>(j)}, Laurent::constant(0, 1 / factorial(j + 1)));
        return s;
    }
    TruncatedSeries s({"t"}, order, 2);
    s.add_term(Label{0}, Laurent::variable(2, 0) - Laurent::constant(2, 1));
    for (std::size_t k = 1; k <= order; ++k)
        s.add_term(Label{static_cast<std::int64_t>(k)}, Laurent::variable(2, 0) * (1 / factorial(k)));
    return s;
}

TruncatedSeries log_series(std::size_t order) {
    TruncatedSeries s({"p"}, order);
    for (std::size_t j = 1; j <= order; ++j)
        s.add_term(Label{static_cast<std::int64_t>(j)}, Laurent::constant(0, Rational(j % 2 ? 1 : -1, static_cast<long>(j))));
    return s;
}

namespace {

std::vector<std::string> pair_names(const std::string& a, const std::string& b, std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(a + std::to_string(i + 1));
    for (std::size_t i = 0; i < n; ++i) v.push_back(b + std::to_string(i + 1));
    return v;
}

// Images of (x, y) in the (z, w) ring, or of (z, w) in the (x, y) ring.
std::vector<TruncatedSeries> pair_map(std::size_t n, std::size_t order, const std::vector<std::string>& target,
                                      const TruncatedSeries& univariate) {
    std::vector<TruncatedSeries> images;
    for (std::size_t i = 0; i < n; ++i) images.push_back(TruncatedSeries::variable(target, order, i));
    for (std::size_t i = 0; i < n; ++i) {
        auto a = TruncatedSeries::variable(target, order, i), b = TruncatedSeries::variable(target, order, n + i);
        auto f = univariate.truncated(order / 2).substitute({a * b});
        images.push_back(b * f);
    }
    return images;
}

void record_residual(OracleReport& rep, const std::string& what, const TruncatedSeries& residual) {
    rep.stats["residualTerms"] += residual.terms().size();
    if (!residual.is_zero()) rep.fail(what + ": residual " + residual.str());
}

}  // namespace

OracleReport verify_roundtrip(const TorusDatum& d, std::size_t order) {
    OracleReport rep;
    rep.check = "roundtrip";
    rep.cutoff = order;
    const std::size_t n = d.n();
    auto zw = pair_names("z", "w", n), xy = pair_names("x", "y", n);
    auto forward = pair_map(n, order, zw, build_gamma_series(order));  // x, y in terms of z, w
    auto inverse = pair_map(n, order, xy, build_delta_series(order));  // z, w in terms of x, y
    for (std::size_t v = 0; v < 2 * n; ++v) {
        auto back = inverse[v].substitute(forward);
        record_residual(rep, "z,w -> x,y -> " + zw[v], back - TruncatedSeries::variable(zw, order, v));
        auto there = forward[v].substitute(inverse);
        record_residual(rep, "x,y -> z,w -> " + xy[v], there - TruncatedSeries::variable(xy, order, v));
    }
    rep.stats["variables"] = 2 * n;
    return rep;
}

OracleReport verify_moment_intertwine(const TorusDatum& d, std::size_t order) {
    OracleReport rep;
    rep.check = "moment-intertwine";
    rep.cutoff = order;
    const std::size_t n = d.n();
    auto zw = pair_names("z", "w", n);
    auto forward = pair_map(n, order, zw, build_gamma_series(order));
    auto lg = log_series(order / 2);
    std::vector<std::vector<Integer>> vectors = d.columns();
    for (const auto& c : circuits(d)) vectors.push_back(c.vector);
    for (const auto& a : vectors) {
        TruncatedSeries lhs(zw, order), rhs(zw, order);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] == 0) continue;
            Laurent ai = Laurent::constant(0, Rational(a[i]));
            lhs += forward[i] * forward[n + i] * ai;
            auto zi = TruncatedSeries::variable(zw, order, i), wi = TruncatedSeries::variable(zw, order, n + i);
            rhs += lg.substitute({zi * wi}) * ai;
        }
        std::ostringstream name;
        name << "a = (";
        for (std::size_t i = 0; i < n; ++i) name << (i ? "," : "") << a[i].get_str();
        name << ")";
        record_residual(rep, name.str(), lhs - rhs);
        ++rep.stats["vectors"];
    }
    return rep;
}

namespace {

double eval_double(const TruncatedSeries& s, double var, double h, double l) {
    double total = 0;
    for (const auto& [e, c] : s.terms()) {
        double coeff = 0;
        for (const auto& [se, r] : c.terms()) {
            double v = r.get_d();
            if (!se.empty()) v *= std::pow(h, static_cast<double>(se[0])) * std::pow(l, static_cast<double>(se[1]));
            coeff += v;
        }
        total += coeff * std::pow(var, static_cast<double>(e[0]));
    }
    return total;
}

}  // namespace

double numeric_branch_diagnostic(double h, double eps, std::size_t order) {
    const double l = std::log(h);
    const double p = h - 1 + eps;  // z w
    const double z = 1.0, w = p;
    auto g = build_gamma_series(order, false);
    auto dl = build_delta_series(order, false);
    double logp = eval_double(g, p, h, l);  // log(1 + p)
    double x = z, y = w * logp / p;
    double q = x * y;
    double wback = y * eval_double(dl, q - l, h, l) / q;
    return std::abs(wback - w) / std::abs(w);
}

}  // namespace hmt
