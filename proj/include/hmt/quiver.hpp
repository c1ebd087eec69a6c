#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hmt/arrangement.hpp"
#include "hmt/cover.hpp"

namespace hmt {

struct FacetRef {
    std::size_t coordinate = 0;
    std::int64_t level = 0;  // the facet lies on a_coordinate = level
    bool operator==(const FacetRef& o) const { return coordinate == o.coordinate && level == o.level; }
};

struct LoopLattice {
    std::size_t ambient_rank = 0;  // rank of the globally trivialized lattice Z^(n-k)
    std::size_t rank = 0;          // rank of the saturated span of the facet loops
    std::vector<std::pair<FacetRef, std::vector<Integer>>> facet_images;
    std::vector<std::vector<Integer>> extra_generators;  // torsion of saturation / span
    Integer index = 1;

    bool operator==(const LoopLattice& o) const;
};

LoopLattice make_loop_lattice(std::size_t ambient_rank, std::vector<std::pair<FacetRef, std::vector<Integer>>> images);

struct QVertex {
    std::string id;
    Label label;
    std::vector<Integer> orbit;  // restriction(label), the deck-orbit invariant
    Label deck;                  // coordinates in the deck lattice relative to the orbit representative
    LoopLattice loops;
    bool operator==(const QVertex& o) const {
        return id == o.id && label == o.label && orbit == o.orbit && deck == o.deck && loops == o.loops;
    }
};

// u: src -> dst crosses the facet upward (src is the lower label), v: dst -> src.
struct ArrowPair {
    std::size_t src = 0, dst = 0;
    FacetRef facet;
    std::string u, v;
    Label shift;  // quotient only: src label + e_i = dst label + shift (shift in the deck lattice)
    bool operator==(const ArrowPair& o) const {
        return src == o.src && dst == o.dst && facet == o.facet && u == o.u && v == o.v && shift == o.shift;
    }
};

// v u + 1 = image of the facet loop, at the given end of the pair.
struct MonodromyRel {
    std::size_t vertex = 0;
    std::size_t arrow_pair = 0;
    bool at_src = true;
    bool operator==(const MonodromyRel& o) const {
        return vertex == o.vertex && arrow_pair == o.arrow_pair && at_src == o.at_src;
    }
};

enum class CommuteVariant { A, B, C };

// Codim-2 face with chambers low, low+e_i, low+e_j, high = low+e_i+e_j.
// (a) the two paths high -> low agree, (b) the two paths low -> high agree,
// (c) the two paths low+e_i -> low+e_j agree.
struct CommuteRel {
    std::size_t low = 0, mid_i = 0, mid_j = 0, high = 0;
    std::size_t i = 0, j = 0;
    CommuteVariant variant = CommuteVariant::A;
    bool operator==(const CommuteRel& o) const {
        return low == o.low && mid_i == o.mid_i && mid_j == o.mid_j && high == o.high && i == o.i && j == o.j &&
               variant == o.variant;
    }
};

struct QuiverWithRelations {
    std::string name;
    std::size_t n = 0;
    std::size_t rank = 0;  // deck lattice rank
    bool quotient = false;
    std::vector<int> signs;
    std::optional<IntMatrix> deck;  // deck translation basis (n x rank) when the deck action is carried
    std::vector<QVertex> vertices;
    std::vector<ArrowPair> arrow_pairs;
    std::vector<MonodromyRel> monodromy;
    std::vector<CommuteRel> commute;

    std::size_t vertex_index(const Label& label) const;
    bool operator==(const QuiverWithRelations& o) const;
};

// Quiver of a local star: one vertex per star chamber.
QuiverWithRelations local_quiver(const LocalStar& star, const TorusDatum& d, const std::vector<int>& signs = {});

// Cover quiver on the labels representative + L u, |u|_inf <= radius.
QuiverWithRelations global_quiver(const CoverModel& m, std::int64_t radius = 1);
QuiverWithRelations global_quiver(const TorusDatum& d, const ParameterLift& p, std::int64_t radius = 1);

// Orbit quiver of a cover quiver carrying its deck action.
QuiverWithRelations quotient_by_deck(const QuiverWithRelations& q);
// The same, computed directly from the model's classes.
QuiverWithRelations quotient_quiver(const CoverModel& m);

// Loop lattice of a chamber from all of its facets.
LoopLattice chamber_loop_lattice(const CoverModel& m, const Label& x);

// Differences between two quotient quivers after matching vertices by deck orbit; empty when isomorphic.
std::vector<std::string> quotient_differences(const QuiverWithRelations& a, const QuiverWithRelations& b);
bool quotient_isomorphic(const QuiverWithRelations& a, const QuiverWithRelations& b);

std::string to_dot(const QuiverWithRelations& q);
nlohmann::json to_json(const QuiverWithRelations& q);
QuiverWithRelations quiver_from_json(const nlohmann::json& j);

}  // namespace hmt
