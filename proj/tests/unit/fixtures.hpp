#pragma once

#include "hmt/arrangement.hpp"

namespace fx {

using hmt::ParameterLift;
using hmt::Rational;
using hmt::TorusDatum;

inline TorusDatum tate() { return TorusDatum::create(1, std::vector<std::vector<long>>{}); }
inline TorusDatum a1hat() { return TorusDatum::create(2, std::vector<std::vector<long>>{{1, 1}}); }
inline TorusDatum triangle() { return TorusDatum::create(3, std::vector<std::vector<long>>{{1, 1, 1}}); }
inline TorusDatum rank2() { return TorusDatum::create(3, std::vector<std::vector<long>>{{1, 0, 1}, {0, 1, 1}}); }
inline TorusDatum orbifold() { return TorusDatum::create(2, std::vector<std::vector<long>>{{1, 2}}); }

inline ParameterLift lift(std::vector<Rational> g, std::vector<int> signs = {}) { return {std::move(g), std::move(signs)}; }
inline ParameterLift half() { return lift({Rational(1, 2)}); }
inline ParameterLift rank2_lift() { return lift({Rational(1, 3), Rational(2, 3)}); }

}  // namespace fx
