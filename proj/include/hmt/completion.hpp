#pragma once

#include <string>
#include <vector>

#include "hmt/laurent.hpp"
#include "hmt/oracle.hpp"

namespace hmt {

// Polynomial truncated at total degree `order`; coefficients are Laurent
// polynomials in formal symbols (H_i, L_i for the h != 1 branch, none otherwise).
class TruncatedSeries {
public:
    TruncatedSeries(std::vector<std::string> vars, std::size_t order, std::size_t nsymbols = 0);

    static TruncatedSeries constant(std::vector<std::string> vars, std::size_t order, const Laurent& c);
    static TruncatedSeries variable(std::vector<std::string> vars, std::size_t order, std::size_t i,
                                    std::size_t nsymbols = 0);

    std::size_t nvars() const { return vars_.size(); }
    std::size_t order() const { return order_; }
    std::size_t nsymbols() const { return nsymbols_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Label, Laurent>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Laurent coefficient(const Label& e) const;
    Rational rational_coefficient(const Label& e) const;  // symbol-free coefficient
    std::size_t degree() const;

    void add_term(const Label& e, const Laurent& c);
    TruncatedSeries& operator+=(const TruncatedSeries& o);
    TruncatedSeries operator+(const TruncatedSeries& o) const { return TruncatedSeries(*this) += o; }
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const Laurent& c) const;
    TruncatedSeries pow(unsigned e) const;
    bool operator==(const TruncatedSeries& o) const;

    // Replace variable v by images[v]; images share one target ring and have no constant term.
    TruncatedSeries substitute(const std::vector<TruncatedSeries>& images) const;
    // Same polynomial viewed with a different truncation order.
    TruncatedSeries truncated(std::size_t order) const;

    std::string str() const;

private:
    void check_compatible(const TruncatedSeries& o) const;

    std::vector<std::string> vars_;
    std::size_t order_;
    std::size_t nsymbols_;
    std::map<Label, Laurent> terms_;
};

// Univariate series in p = z_i w_i.
// h = 1: gamma = log(1+p)/p = sum (-1)^j p^j / (j+1).
// h != 1: the expansion of log(1+p) = L + sum_{j=1}^{N} (-1)^{j+1} (p+1-H)^j / (j H^j), symbols (H, L).
TruncatedSeries build_gamma_series(std::size_t order, bool h_is_one = true);
// Univariate series in q = x_i y_i.
// h = 1: delta = (e^q - 1)/q = sum q^j / (j+1)!.
// h != 1: q * delta = (H - 1) + H sum_{k=1}^{N} t^k / k! in the expansion variable t = q - L, symbols (H, L).
TruncatedSeries build_delta_series(std::size_t order, bool h_is_one = true);
// log(1+p) = sum_{j>=1} (-1)^{j+1} p^j / j
TruncatedSeries log_series(std::size_t order);

OracleReport verify_roundtrip(const TorusDatum& d, std::size_t order);
OracleReport verify_moment_intertwine(const TorusDatum& d, std::size_t order);

// Floating-point spot check of the h != 1 branch at p = h - 1 + eps; returns |w' - w| / |w|.
double numeric_branch_diagnostic(double h, double eps, std::size_t order);

}  // namespace hmt
