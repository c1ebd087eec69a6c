#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>

#include "hmt/algebra.hpp"
#include "hmt/lp.hpp"
#include "hmt/oracle.hpp"
#include "hmt/quiver.hpp"

namespace hmt {

// Position of a face relative to one wall family f(beta) in Z:
// on: f = m; otherwise m < f < m + 1.
struct FaceLevel {
    bool on = false;
    std::int64_t m = 0;
    auto operator<=>(const FaceLevel&) const = default;
};

struct DiscriminantFace {
    std::size_t id = 0;
    std::vector<FaceLevel> levels;  // one per wall family
    std::size_t dim = 0;
    std::vector<Rational> point;  // relative interior point

    bool operator==(const DiscriminantFace& o) const { return levels == o.levels; }
    std::string str() const;
};

struct ParameterWindow {
    std::vector<Rational> lower, upper;  // closed box in the parameter space Q^k
};

// The periodic arrangement of non-generic parameters: walls c . beta = m for
// every circuit coefficient vector c and every integer m.
class DiscriminantArrangement {
public:
    explicit DiscriminantArrangement(const TorusDatum& d);

    const TorusDatum& datum() const { return datum_; }
    std::size_t k() const { return datum_.k(); }
    const std::vector<std::vector<Rational>>& functionals() const { return functionals_; }

    std::vector<DiscriminantFace> faces(const ParameterWindow& w) const;
    DiscriminantFace face_of(const std::vector<Rational>& beta) const;
    // lower lies in the closure of upper
    bool incident(const DiscriminantFace& lower, const DiscriminantFace& upper) const;
    // the face whose closure is the intersection of the closures
    std::optional<DiscriminantFace> closure_meet(const DiscriminantFace& a, const DiscriminantFace& b) const;
    bool collinear(const DiscriminantFace& a, const DiscriminantFace& b, const DiscriminantFace& c) const;
    // Faces met by a generic segment from a to b, in order.
    std::vector<DiscriminantFace> segment_faces(const DiscriminantFace& a, const DiscriminantFace& b,
                                                std::uint64_t seed = 1) const;

    // Constraints on v in Q^nv for the affine parameter beta = map v + shift, lying in the face (or its star).
    std::vector<lp::Constraint> constraints(const DiscriminantFace& f, const RatMatrix& map,
                                            const std::vector<Rational>& shift, bool star) const;
    std::size_t dimension(const std::vector<FaceLevel>& levels) const;

private:
    DiscriminantFace finish(std::vector<FaceLevel> levels, const std::vector<lp::Constraint>& extra) const;

    TorusDatum datum_;
    std::vector<std::vector<Rational>> functionals_;
};

std::vector<lp::Constraint> window_constraints(const ParameterWindow& w);

// Vertices are the labels whose open unit cube maps into the star of one of the faces.
class FaceModel : public CoverModel {
public:
    FaceModel(std::shared_ptr<const DiscriminantArrangement> arr, std::vector<DiscriminantFace> faces,
              std::vector<int> signs = {});

    const TorusDatum& datum() const override { return arr_->datum(); }
    bool has_vertex(const Label& x) const override;
    bool has_arrow(const Label& x, std::size_t i) const override;
    bool has_square(const Label& x, std::size_t i, std::size_t j) const override;
    const std::vector<ChamberClass>& classes() const override { return classes_; }
    std::vector<int> signs() const override { return signs_; }
    std::string kind() const override { return "face"; }

    const std::vector<DiscriminantFace>& faces() const { return faces_; }
    bool has_invariant(const std::vector<Integer>& s) const { return invariants_.count(s) > 0; }
    const DiscriminantArrangement& arrangement() const { return *arr_; }

private:
    std::shared_ptr<const DiscriminantArrangement> arr_;
    std::vector<DiscriminantFace> faces_;
    std::vector<int> signs_;
    std::set<std::vector<Integer>> invariants_;
    std::vector<ChamberClass> classes_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<std::vector<Integer>, std::vector<std::size_t>>, bool> cell_cache_;

    bool cell(const Label& x, std::vector<std::size_t> pinned) const;
};

struct FaceAlgebra {
    std::shared_ptr<FaceModel> model;
    QuiverWithRelations quiver;                 // quotient schober quiver
    std::shared_ptr<NormalFormAlgebra> algebra;  // null for non-unimodular data
};

FaceAlgebra face_algebra(std::shared_ptr<const DiscriminantArrangement> arr, const DiscriminantFace& face,
                         const std::vector<int>& signs = {});
QuiverWithRelations schober_subquiver(std::shared_ptr<const DiscriminantArrangement> arr, const DiscriminantFace& face,
                                      std::int64_t radius = 1);

struct WallCrossBimodule {
    DiscriminantFace plus, minus;
    std::vector<DiscriminantFace> path;   // faces passed from minus to plus
    std::vector<std::size_t> ranks;       // generators c_{y,x}, x in minus, y in plus, by degree
    std::vector<std::size_t> direct_ranks;  // same count in the algebra of the whole path
};

WallCrossBimodule wall_crossing_bimodule(std::shared_ptr<const DiscriminantArrangement> arr,
                                         const DiscriminantFace& plus, const DiscriminantFace& minus,
                                         std::size_t cutoff, std::uint64_t seed = 1);

OracleReport check_corner_identity(std::shared_ptr<const DiscriminantArrangement> arr, const DiscriminantFace& lower,
                                   const DiscriminantFace& upper, std::size_t cutoff);
OracleReport check_collinear_composition(std::shared_ptr<const DiscriminantArrangement> arr,
                                         const DiscriminantFace& a, const DiscriminantFace& b,
                                         const DiscriminantFace& c, std::size_t cutoff, bool negative_control = false);
OracleReport check_adjacent_equivalence(std::shared_ptr<const DiscriminantArrangement> arr,
                                        const DiscriminantFace& a, const DiscriminantFace& b, std::size_t cutoff);
// Face algebra of the chamber containing the parameter against the mirror quotient quiver.
OracleReport check_mirror_consistency(const TorusDatum& d, const ParameterLift& p);

std::string face_poset_dot(std::shared_ptr<const DiscriminantArrangement> arr, const std::vector<DiscriminantFace>& faces);
nlohmann::json to_json(const DiscriminantFace& f);

}  // namespace hmt
