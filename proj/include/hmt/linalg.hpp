#pragma once

#include <optional>
#include <vector>

#include "hmt/numeric.hpp"

namespace hmt {

// Reduced row echelon form over Q. pivots receives the pivot columns.
RatMatrix rref(RatMatrix m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);

// Basis of {v : m v = 0}, one vector per free column.
std::vector<std::vector<Rational>> nullspace(const RatMatrix& m);

// Some solution of m v = b, or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve(const RatMatrix& m, const std::vector<Rational>& b);

// Smallest positive multiple of v with coprime integer entries (zero stays zero).
std::vector<Integer> primitive(const std::vector<Rational>& v);
std::vector<Integer> primitive(const std::vector<Integer>& v);

Integer determinant(const IntMatrix& m);

struct SmithDecomposition {
    std::vector<Integer> diag;  // d1 | d2 | ..., length min(rows, cols), trailing zeros allowed
    IntMatrix left, right;      // left * m * right = diag
    IntMatrix left_inverse, right_inverse;
};

SmithDecomposition smith_decompose(const IntMatrix& m);

// Column-style Hermite normal form of the lattice spanned by the columns.
// Zero columns are dropped, so the result has rank(m) columns.
IntMatrix column_hermite(const IntMatrix& m);

// P with P * m = I for a saturated full column rank m (rows x r).
IntMatrix integer_left_inverse(const IntMatrix& m);

// Hermite basis of ker(m) intersected with Z^cols, as columns.
IntMatrix integer_kernel(const IntMatrix& m);

// Integer solution of m v = b, if any.
std::optional<std::vector<Integer>> integer_solve(const IntMatrix& m, const std::vector<Integer>& b);

}  // namespace hmt
