#pragma once

#include <json.hpp>
#include <vector>

#include "hmt/linalg.hpp"
#include "hmt/numeric.hpp"

namespace hmt {

struct QuotientData {
    IntMatrix char_lattice;                       // n x (n-k), Hermite basis of ker(restriction)
    std::vector<std::vector<Integer>> coord_chars;  // q_i, rows of char_lattice
    IntMatrix restriction;                        // k x n
    IntMatrix char_left_inverse;                  // (n-k) x n, times char_lattice is the identity
};

class TorusDatum {
public:
    // Validates the standing assumptions; throws InvalidDatum.
    static TorusDatum create(std::size_t n, const std::vector<std::vector<Integer>>& columns);
    static TorusDatum create(std::size_t n, const std::vector<std::vector<long>>& columns);

    std::size_t n() const { return n_; }
    std::size_t k() const { return embedding_.cols(); }
    std::size_t rank_g() const { return n_ - k(); }
    const IntMatrix& embedding() const { return embedding_; }
    const QuotientData& quotient() const { return quotient_; }
    std::vector<std::vector<Integer>> columns() const;

    std::vector<Integer> restrict(const std::vector<Integer>& x) const;
    std::vector<Integer> restrict(const Label& x) const;
    std::vector<Rational> restrict(const std::vector<Rational>& a) const;

    bool operator==(const TorusDatum& o) const { return n_ == o.n_ && embedding_ == o.embedding_; }

private:
    std::size_t n_ = 0;
    IntMatrix embedding_;
    QuotientData quotient_;
};

struct Circuit {
    std::vector<Integer> vector;
    std::vector<std::size_t> support;
    std::vector<Rational> coefficients;  // vector = embedding * coefficients
    bool operator==(const Circuit& o) const { return vector == o.vector; }
};

std::vector<Circuit> circuits(const TorusDatum& d);
const QuotientData& quotient_data(const TorusDatum& d);
bool is_unimodular(const TorusDatum& d);

// Canonical sign: first nonzero entry positive.
std::vector<Integer> canonical_sign(std::vector<Integer> v);

TorusDatum torus_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TorusDatum& d);

}  // namespace hmt
