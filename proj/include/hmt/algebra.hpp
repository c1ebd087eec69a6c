#pragma once

#include <functional>
#include <json.hpp>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "hmt/cover.hpp"
#include "hmt/laurent.hpp"

namespace hmt {

// Sum of c_{dst,src} * coefficient; the coefficient lives in the group ring of
// the deck lattice (fixed global trivialization).
struct NormalFormElement {
    std::map<std::pair<Label, Label>, Laurent> entries;  // (src, dst) -> coefficient

    bool is_zero() const { return entries.empty(); }
    void add(const Label& src, const Label& dst, const Laurent& c);
    NormalFormElement& operator+=(const NormalFormElement& o);
    NormalFormElement operator-(const NormalFormElement& o) const;
    NormalFormElement operator*(const Laurent& c) const;
    bool operator==(const NormalFormElement& o) const { return entries == o.entries; }
    bool operator!=(const NormalFormElement& o) const { return !(*this == o); }
};

// b_i = (|y_i - x_i| + |z_i - y_i| - |z_i - x_i|) / 2
std::vector<std::int64_t> excess_crossings(const Label& x, const Label& y, const Label& z);

class NormalFormAlgebra {
public:
    explicit NormalFormAlgebra(std::shared_ptr<const CoverModel> model);

    const CoverModel& model() const { return *model_; }
    std::shared_ptr<const CoverModel> model_ptr() const { return model_; }
    std::size_t nvars() const { return model_->rank(); }
    bool in_corner(const Label& x) const { return !corner_ || corner_->count(x); }
    const std::optional<std::set<Label>>& corner() const { return corner_; }

    NormalFormElement idempotent(const Label& x) const;
    // c_{y,x}; throws NoMinimalPath if no monotone facet path joins them.
    NormalFormElement minimal_path_element(const Label& x, const Label& y) const;
    // a after b: c_{z,y} * c_{y,x} = c_{z,x} prod (h_i - 1)^{b_i}
    NormalFormElement compose(const NormalFormElement& a, const NormalFormElement& b) const;
    NormalFormElement scalar(const Label& x, const Laurent& c) const;
    // Product of single facet crossings along a label sequence.
    NormalFormElement path_element(const std::vector<Label>& path) const;
    // Only the entries with both ends in the corner.
    NormalFormElement project(const NormalFormElement& a) const;
    NormalFormElement deck_translate(const NormalFormElement& a, const Label& u) const;

    // Dimensions of c_{y,x} R cut to exponents of sup-norm <= t, for t = 0..cutoff.
    std::vector<std::size_t> hom_rank_table(const Label& x, const Label& y, std::size_t cutoff) const;

    NormalFormAlgebra truncate_by_idempotents(const std::set<Label>& vertices) const;

private:
    std::shared_ptr<const CoverModel> model_;
    std::optional<std::set<Label>> corner_;
    std::vector<Laurent> facet_minus_one_;
};

std::optional<std::vector<Label>> monotone_facet_path(const CoverModel& m, const Label& x, const Label& y);

nlohmann::json to_json(const NormalFormElement& a);
NormalFormElement normal_form_from_json(const nlohmann::json& j, std::size_t nvars);

}  // namespace hmt
