#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "hmt/arrangement.hpp"
#include "hmt/laurent.hpp"

namespace hmt {

// A deck-periodic quiver living on labels in Z^n: which labels are vertices,
// which neighbours x, x + e_i are joined by an arrow pair, and which unit
// squares carry a commutation relation. Everything else (quivers, algebras,
// rewriting, oracles) is computed from this interface.
class CoverModel {
public:
    virtual ~CoverModel() = default;

    virtual const TorusDatum& datum() const = 0;
    virtual bool has_vertex(const Label& x) const = 0;
    virtual bool has_arrow(const Label& x, std::size_t i) const = 0;                   // x <-> x + e_i
    virtual bool has_square(const Label& x, std::size_t i, std::size_t j) const = 0;  // lowest corner x, i < j
    virtual const std::vector<ChamberClass>& classes() const = 0;
    virtual std::vector<int> signs() const = 0;
    virtual std::string kind() const = 0;

    std::size_t n() const { return datum().n(); }
    std::size_t rank() const { return datum().rank_g(); }

    // h_i = sign_i * m^{q_i} in the group ring of the deck lattice.
    Laurent facet_unit(std::size_t i) const;
    std::size_t class_of(const Label& x) const;
    const ChamberClass& class_of_label(const Label& x) const { return classes().at(class_of(x)); }
    // u with x = representative(class_of(x)) + L u
    Label deck_coordinates(const Label& x) const;
    Label deck_translate(const Label& x, const Label& u) const;  // x + L u
};

class MirrorModel : public CoverModel {
public:
    MirrorModel(const TorusDatum& d, const ParameterLift& p);

    const TorusDatum& datum() const override { return arrangement_->datum(); }
    bool has_vertex(const Label& x) const override { return arrangement_->chamber_nonempty(x); }
    bool has_arrow(const Label& x, std::size_t i) const override { return arrangement_->facet_exists(x, i); }
    bool has_square(const Label& x, std::size_t i, std::size_t j) const override {
        return arrangement_->codim2_exists(x, i, j);
    }
    const std::vector<ChamberClass>& classes() const override { return classes_; }
    std::vector<int> signs() const override;
    std::string kind() const override { return "mirror"; }

    const SliceArrangement& arrangement() const { return *arrangement_; }
    const ParameterLift& parameter() const { return arrangement_->parameter(); }

private:
    std::shared_ptr<SliceArrangement> arrangement_;
    std::vector<ChamberClass> classes_;
};

}  // namespace hmt
