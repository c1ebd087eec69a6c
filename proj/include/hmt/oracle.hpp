#pragma once

#include <json.hpp>
#include <map>
#include <string>

#include "hmt/algebra.hpp"

namespace hmt {

// Element of the localized coordinate ring: D-weight d -> Laurent coefficient in M,
// standing for sum_c coeff_c z^{d+} w^{d-} M^c (always normal).
struct OracleElement {
    std::map<Label, Laurent> terms;

    void add(const Label& d, const Laurent& c);
    bool is_zero() const { return terms.empty(); }
    bool operator==(const OracleElement& o) const { return terms == o.terms; }
    OracleElement operator-(const OracleElement& o) const;
};

class OracleRing {
public:
    // Builds its own basis of Z^n / image(E); signs empty means all +1.
    OracleRing(const TorusDatum& d, std::vector<int> signs = {});

    std::size_t n() const { return n_; }
    std::size_t rank() const { return qbar_.empty() ? 0 : qbar_[0].size(); }
    const std::vector<Label>& qbar() const { return qbar_; }
    const std::vector<int>& signs() const { return signs_; }

    OracleElement one() const;
    OracleElement z(std::size_t i) const;
    OracleElement w(std::size_t i) const;
    OracleElement monomial(const Label& d, const Label& c = {}, const Rational& coeff = 1) const;
    OracleElement multiply(const OracleElement& a, const OracleElement& b) const;

    // D-weight and its restriction to the torus characters.
    std::vector<Integer> restriction(const Label& d) const;

private:
    std::size_t n_;
    IntMatrix e_;
    std::vector<Label> qbar_;
    std::vector<int> signs_;
};

struct OracleReport {
    std::string check;
    std::size_t cutoff = 0;
    bool pass = true;
    std::vector<std::string> mismatches;
    std::map<std::string, std::size_t> stats;
    std::vector<std::vector<std::size_t>> ranks;  // per checked slice: path ranks by degree, then oracle ranks

    void fail(const std::string& what);
};

nlohmann::json to_json(const OracleReport& r);

struct OracleOptions {
    // Negative control: flip the sign of facet `flip_sign` on the oracle side only.
    std::optional<std::size_t> flip_sign;
    std::size_t max_mismatches = 20;
};

// Change of basis T with qbar_i = T q_i, or nullopt if none exists.
std::optional<IntMatrix> oracle_basis_change(const OracleRing& ring, const TorusDatum& d);

// Image of a path-algebra element: c_{y,x} m^e -> z^{(y-x)+} w^{(y-x)-} M^{T e}.
OracleElement oracle_image(const NormalFormElement& a, const IntMatrix& t);

OracleReport verify_tilting_iso(const TorusDatum& d, const ParameterLift& p, std::size_t cutoff, const OracleOptions& opt = {});
OracleReport verify_invariant_corner(const TorusDatum& d, const ParameterLift& p, std::size_t cutoff,
                                     const OracleOptions& opt = {});

}  // namespace hmt
