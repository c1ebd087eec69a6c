#pragma once

#include <optional>
#include <vector>

#include "hmt/numeric.hpp"

namespace hmt::lp {

enum class Relation { Less, LessEq, Equal };

// coeffs . x  (relation)  rhs
struct Constraint {
    std::vector<Rational> coeffs;
    Relation relation = Relation::LessEq;
    Rational rhs;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    Rational value;
    std::vector<Rational> point;
};

// Maximize objective . x over free variables x subject to non-strict constraints.
// Strict constraints are not accepted here; see relative_interior_point.
Result maximize(std::size_t num_vars, const std::vector<Constraint>& constraints,
                const std::vector<Rational>& objective);

// A point satisfying every constraint, strict ones strictly. Decided by
// maximizing a shared slack on the strict rows; nullopt when none exists.
std::optional<std::vector<Rational>> relative_interior_point(std::size_t num_vars,
                                                             const std::vector<Constraint>& constraints);

bool feasible(std::size_t num_vars, const std::vector<Constraint>& constraints);

}  // namespace hmt::lp
