#include "hmt/laurent.hpp"

#include <sstream>

namespace hmt {

Laurent Laurent::constant(std::size_t nvars, const Rational& c) {
    Laurent p(nvars);
    p.add_term(Label(nvars, 0), c);
    return p;
}

Laurent Laurent::monomial(const Label& exponent, const Rational& c) {
    Laurent p(exponent.size());
    p.add_term(exponent, c);
    return p;
}

Laurent Laurent::variable(std::size_t nvars, std::size_t i, std::int64_t power) {
    Label e(nvars, 0);
    e.at(i) = power;
    return monomial(e);
}

Rational Laurent::coefficient(const Label& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::int64_t Laurent::max_abs_exponent() const {
    std::int64_t m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, linf_norm(e));
    return m;
}

void Laurent::add_term(const Label& e, const Rational& c) {
    if (e.size() != nvars_) throw Error("Laurent: exponent arity mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Laurent& Laurent::operator+=(const Laurent& o) {
    if (o.nvars_ != nvars_) throw Error("Laurent: arity mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
    if (o.nvars_ != nvars_) throw Error("Laurent: arity mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Laurent& Laurent::operator*=(const Rational& s) {
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

Laurent Laurent::operator-() const { return *this * Rational(-1); }

Laurent Laurent::operator*(const Laurent& o) const {
    if (o.nvars_ != nvars_) throw Error("Laurent: arity mismatch");
    Laurent r(nvars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) r.add_term(add(e1, e2), c1 * c2);
    return r;
}

Laurent Laurent::pow(unsigned e) const {
    Laurent r = constant(nvars_, 1), base = *this;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

Rational Laurent::evaluate(const std::vector<Rational>& point) const {
    if (point.size() != nvars_) throw Error("Laurent: evaluation arity mismatch");
    Rational total = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            if (point[i] == 0) throw Error("Laurent: evaluation at zero");
            Rational b = e[i] > 0 ? point[i] : 1 / point[i];
            std::int64_t k = e[i] > 0 ? e[i] : -e[i];
            Rational pw;
            mpz_pow_ui(pw.get_num_mpz_t(), b.get_num_mpz_t(), static_cast<unsigned long>(k));
            mpz_pow_ui(pw.get_den_mpz_t(), b.get_den_mpz_t(), static_cast<unsigned long>(k));
            t *= pw;
        }
        total += t;
    }
    return total;
}

Laurent Laurent::transform(const std::vector<std::vector<std::int64_t>>& m, std::size_t new_nvars) const {
    Laurent r(new_nvars);
    for (const auto& [e, c] : terms_) {
        Label ne(new_nvars, 0);
        for (std::size_t i = 0; i < new_nvars; ++i)
            for (std::size_t j = 0; j < nvars_; ++j) ne[i] = checked_add(ne[i], checked_mul(m.at(i).at(j), e[j]));
        r.add_term(ne, c);
    }
    return r;
}

std::string Laurent::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        bool unit = true;
        for (auto x : e) unit = unit && x == 0;
        Rational a = c;
        if (!first) {
            os << (a < 0 ? " - " : " + ");
            a = abs(a);
        }
        first = false;
        if (unit || (a != 1 && a != -1)) os << a.get_str();
        else if (a == -1) os << '-';
        bool need_star = unit ? false : (a != 1 && a != -1);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << '*';
            os << (i < names.size() ? names[i] : "m" + std::to_string(i + 1));
            if (e[i] != 1) os << '^' << e[i];
            need_star = true;
        }
    }
    return os.str();
}

nlohmann::json to_json(const Laurent& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : p.terms())
        arr.push_back({{"exp", e}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
    return arr;
}

Laurent laurent_from_json(const nlohmann::json& j, std::size_t nvars) {
    Laurent p(nvars);
    for (const auto& t : j) {
        Label e = t.at("exp").get<Label>();
        auto num = t.at("num"), den = t.at("den");
        Integer a(num.is_string() ? num.get<std::string>() : std::to_string(num.get<long>()));
        Integer b(den.is_string() ? den.get<std::string>() : std::to_string(den.get<long>()));
        Rational c(a, b);
        c.canonicalize();
        p.add_term(e, c);
    }
    return p;
}

}  // namespace hmt
