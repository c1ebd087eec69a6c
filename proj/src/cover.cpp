#include "hmt/cover.hpp"

namespace hmt {

Laurent CoverModel::facet_unit(std::size_t i) const {
    const auto& q = datum().quotient().coord_chars.at(i);
    auto s = signs();
    return Laurent::monomial(to_label(q), Rational(s.empty() ? 1 : s.at(i)));
}

std::size_t CoverModel::class_of(const Label& x) const {
    auto inv = datum().restrict(x);
    for (const auto& c : classes())
        if (c.invariant == inv) return c.id;
    throw Error("label " + to_string(x) + " lies in no vertex class");
}

Label CoverModel::deck_coordinates(const Label& x) const {
    const auto& rep = class_of_label(x).representative;
    const auto& q = datum().quotient();
    auto diff = to_integer(sub(x, rep));
    auto u = q.char_left_inverse.apply(diff);
    if (q.char_lattice.apply(u) != diff) throw Error("deck coordinates: label not in the orbit");
    return to_label(u);
}

Label CoverModel::deck_translate(const Label& x, const Label& u) const {
    const auto& l = datum().quotient().char_lattice;
    return add(x, to_label(l.apply(to_integer(u))));
}

MirrorModel::MirrorModel(const TorusDatum& d, const ParameterLift& p)
    : arrangement_(std::make_shared<SliceArrangement>(d, p)) {
    classes_ = enumerate_chambers(*arrangement_);
}

std::vector<int> MirrorModel::signs() const {
    const auto& s = parameter().signs;
    return s.empty() ? std::vector<int>(datum().n(), 1) : s;
}

}  // namespace hmt
