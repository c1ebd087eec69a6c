#pragma once

#include <stdexcept>
#include <string>

namespace hmt {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define HMT_DECLARE_ERROR(Name)                                         \
    class Name : public Error {                                         \
    public:                                                             \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    };

HMT_DECLARE_ERROR(InvalidDatum)
HMT_DECLARE_ERROR(NonGenericParameter)
HMT_DECLARE_ERROR(EmptyChamber)
HMT_DECLARE_ERROR(NoMinimalPath)
HMT_DECLARE_ERROR(OrbifoldUnsupported)
HMT_DECLARE_ERROR(IncidenceViolation)
HMT_DECLARE_ERROR(NotAdjacent)
HMT_DECLARE_ERROR(NotCollinear)
HMT_DECLARE_ERROR(SchemaError)
HMT_DECLARE_ERROR(OverflowError)

#undef HMT_DECLARE_ERROR

}  // namespace hmt
