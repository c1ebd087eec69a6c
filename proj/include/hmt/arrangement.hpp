#pragma once

#include <json.hpp>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hmt/lattice.hpp"
#include "hmt/lp.hpp"

namespace hmt {

struct ParameterLift {
    std::vector<Rational> gamma_tilde;  // length k
    std::vector<int> signs;             // length n, entries +1/-1; empty means all +1

    int sign(std::size_t i) const { return signs.empty() ? 1 : signs.at(i); }
};

ParameterLift parameter_from_json(const nlohmann::json& j, std::size_t n);
nlohmann::json to_json(const ParameterLift& p);

struct WallWitness {
    std::vector<Integer> circuit;
    Integer level;
};

struct GenericityResult {
    bool generic = true;
    std::optional<WallWitness> witness;
    explicit operator bool() const { return generic; }
};

GenericityResult is_generic(const TorusDatum& d, const ParameterLift& p);

// A wall of the unit cube around label x: a_i = x_i (lower) or a_i = x_i + 1 (upper).
struct CubeWall {
    std::size_t coordinate;
    bool upper;
    bool operator==(const CubeWall& o) const { return coordinate == o.coordinate && upper == o.upper; }
    bool operator<(const CubeWall& o) const {
        return coordinate != o.coordinate ? coordinate < o.coordinate : upper < o.upper;
    }
};

// The periodic arrangement on the affine slice {restriction(a) = gammaTilde},
// parametrized as a = base + charLattice * t.
class SliceArrangement {
public:
    SliceArrangement(TorusDatum d, ParameterLift p);

    const TorusDatum& datum() const { return d_; }
    const ParameterLift& parameter() const { return p_; }
    const std::vector<Rational>& base_point() const { return base_; }
    std::size_t dim() const { return d_.rank_g(); }

    // Point of the open face of the closed cube polytope of x where exactly the
    // given walls are equalities; extra constraints are in t-coordinates.
    std::optional<std::vector<Rational>> face_point(const Label& x, const std::vector<CubeWall>& active,
                                                    const std::vector<lp::Constraint>& extra = {}) const;
    bool face_nonempty(const Label& x, const std::vector<CubeWall>& active) const;

    bool chamber_nonempty(const Label& x) const;  // memoized
    bool chamber_nonempty_uncached(const Label& x) const;
    bool facet_exists(const Label& x, std::size_t i) const;  // between x and x + e_i
    bool codim2_exists(const Label& x, std::size_t i, std::size_t j) const;  // x, x+e_i, x+e_j, x+e_i+e_j

    // All active wall sets of the (simple) polytope of x, each sorted.
    std::vector<std::vector<CubeWall>> face_active_sets(const Label& x) const;

    // Coordinates a_i in terms of t: a_i = base_i + q_i . t
    lp::Constraint coordinate_constraint(std::size_t i, lp::Relation rel, const Rational& level, bool negate) const;
    std::vector<Rational> point_at(const std::vector<Rational>& t) const;

private:
    TorusDatum d_;
    ParameterLift p_;
    std::vector<Rational> base_;
    mutable std::mutex mu_;
    mutable std::unordered_map<Label, bool, LabelHash> cache_;
    mutable std::unordered_map<Label, bool, LabelHash> facet_cache_;
};

bool chamber_nonempty(const TorusDatum& d, const ParameterLift& p, const Label& x);

struct ChamberClass {
    std::size_t id = 0;
    Label representative;
    std::vector<Integer> invariant;  // restriction(representative); complete orbit invariant
};

struct Window {
    std::vector<Rational> offset;  // t-box is offset + [0,1]^r; empty means zero
};

// Labels whose chamber meets the closed fundamental window.
std::vector<Label> window_labels(const SliceArrangement& s, const Window& w = {});
std::vector<ChamberClass> enumerate_chambers(const SliceArrangement& s, const Window& w = {});
std::vector<ChamberClass> enumerate_chambers(const TorusDatum& d, const ParameterLift& p);

struct FacetOrbit {
    std::size_t lower_class = 0, upper_class = 0;
    std::size_t coordinate = 0;
    Label lower_label;      // representative of lower_class
    std::int64_t level = 0;  // a_i = level on the shared facet
};

std::vector<FacetOrbit> chamber_adjacency(const SliceArrangement& s, const std::vector<ChamberClass>& classes);
std::vector<FacetOrbit> chamber_adjacency(const TorusDatum& d, const ParameterLift& p);

// Codim-2 face orbits: lowest corner class plus the two coordinates.
struct SquareOrbit {
    std::size_t lowest_class = 0;
    Label lowest_label;
    std::size_t i = 0, j = 0;
};
std::vector<SquareOrbit> square_orbits(const SliceArrangement& s, const std::vector<ChamberClass>& classes);

std::size_t class_index(const std::vector<ChamberClass>& classes, const std::vector<Integer>& invariant);

struct StarWall {
    std::size_t coordinate;
    bool upper;
    std::int64_t level;
};

struct StarFace {
    std::vector<int> sign;  // per wall: -1, 0, +1 (+ is the side of the base chamber)
    std::size_t dim = 0;
};

struct StarFacet {
    std::size_t face;           // index into faces
    std::size_t lower, upper;   // chamber indices: '-' side and '+' side of the wall
    std::size_t wall;
};

struct LocalStar {
    Label base;
    std::vector<int> center;  // sign vector of the center face
    std::size_t ambient_dim = 0;
    std::vector<StarWall> walls;
    std::vector<StarFace> faces;
    std::vector<Label> chambers;
    std::vector<std::size_t> chamber_faces;
    std::vector<StarFacet> facets;
    std::vector<std::size_t> codim2_faces;
    std::vector<std::pair<std::size_t, std::size_t>> covers;  // (face, face) with first in closure of second, dims differ by 1

    std::size_t face_count(std::size_t codim) const;
};

enum class StarKind {
    Closed,  // every face meeting a neighbourhood of the closed center face
    Open     // only faces whose closure contains the center face
};

// Star of the face of x's polytope cut out by center_walls (empty: the chamber itself).
LocalStar local_star(const SliceArrangement& s, const Label& x, const std::vector<CubeWall>& center_walls = {},
                     StarKind kind = StarKind::Closed);
LocalStar local_star(const TorusDatum& d, const ParameterLift& p, const Label& x);

nlohmann::json to_json(const LocalStar& star);

}  // namespace hmt
