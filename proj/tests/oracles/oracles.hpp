#pragma once

// Brute-force reference computations used only by tests. They deliberately
// avoid the library's own algorithms (Hermite bases, LP, normal forms).

#include <random>
#include <vector>

#include "hmt/lattice.hpp"

namespace oracle {

using hmt::Integer;
using hmt::Rational;

// Small self-contained Gaussian elimination.
std::vector<std::vector<Rational>> kernel(std::vector<std::vector<Rational>> rows, std::size_t cols);
std::size_t rank_of(std::vector<std::vector<Rational>> rows, std::size_t cols);

// Circuits by scanning every support S and solving for vectors of the
// column span that vanish off S.
std::vector<std::vector<Integer>> brute_force_circuits(const hmt::TorusDatum& d);

// Sum of |k x k minors| of the embedding: the lattice volume of the zonotope
// restriction([0,1]^n), which counts chamber classes for generic parameters.
Integer zonotope_volume(const hmt::TorusDatum& d);

// Decides whether the periodic arrangement on the slice restriction(a) = gamma
// is degenerate by searching for a flat {a_i = m_i, i in S} whose defining
// equations are dependent, inside a fundamental domain of a finite-index
// sublattice of the deck lattice.
bool probe_degenerate(const hmt::TorusDatum& d, const std::vector<Rational>& gamma);

// Random valid datum with n <= max_n, k <= max_k.
hmt::TorusDatum random_datum(std::mt19937_64& rng, std::size_t max_n, std::size_t max_k);
// Random valid datum of exactly this shape (k < n).
hmt::TorusDatum random_datum_of_shape(std::mt19937_64& rng, std::size_t n, std::size_t k);

}  // namespace oracle
