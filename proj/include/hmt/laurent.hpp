#pragma once

#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "hmt/numeric.hpp"

namespace hmt {

// Rational Laurent polynomial in a fixed number of variables. Used for the
// group ring of the deck lattice and for formal coefficient symbols.
class Laurent {
public:
    using Terms = std::map<Label, Rational>;

    explicit Laurent(std::size_t nvars = 0) : nvars_(nvars) {}
    static Laurent constant(std::size_t nvars, const Rational& c);
    static Laurent monomial(const Label& exponent, const Rational& c = 1);
    static Laurent variable(std::size_t nvars, std::size_t i, std::int64_t power = 1);

    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coefficient(const Label& e) const;
    std::int64_t max_abs_exponent() const;

    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent& operator*=(const Rational& s);
    Laurent operator+(const Laurent& o) const { return Laurent(*this) += o; }
    Laurent operator-(const Laurent& o) const { return Laurent(*this) -= o; }
    Laurent operator-() const;
    Laurent operator*(const Laurent& o) const;
    Laurent operator*(const Rational& s) const { return Laurent(*this) *= s; }
    Laurent pow(unsigned e) const;
    void add_term(const Label& e, const Rational& c);

    // Substitute each variable by a nonzero rational.
    Rational evaluate(const std::vector<Rational>& point) const;
    // Apply an integer linear change of exponents: e -> m e.
    Laurent transform(const std::vector<std::vector<std::int64_t>>& m, std::size_t new_nvars) const;

    bool operator==(const Laurent& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }
    bool operator<(const Laurent& o) const { return terms_ < o.terms_; }

    std::string str(const std::vector<std::string>& names = {}) const;

private:
    std::size_t nvars_;
    Terms terms_;
};

nlohmann::json to_json(const Laurent& p);
Laurent laurent_from_json(const nlohmann::json& j, std::size_t nvars);

}  // namespace hmt
