#pragma once

#include <stdexcept>
#include <string>

namespace terracini {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Modulus failed the Miller-Rabin primality check.
struct CompositeModulus : Error {
    using Error::Error;
};

// Equal-degree splitting exhausted its retry budget.
struct SplitFailure : Error {
    using Error::Error;
};

struct CorankNotOne : Error {
    using Error::Error;
};

// A dual-number kernel lift hit an inconsistent linear system; this cannot
// happen when the residue matrix has full row rank or corank one.
struct InternalInconsistency : Error {
    using Error::Error;
};

struct DegenerateLeadingCoefficient : Error {
    using Error::Error;
};

struct PositiveDimensionalSingularLocus : Error {
    using Error::Error;
};

struct NotSingular : Error {
    using Error::Error;
};

struct NoRationalRoot : Error {
    using Error::Error;
};

struct WrongNetDimension : Error {
    using Error::Error;
};

struct ExtraSingularity : Error {
    using Error::Error;
};

struct DependentNodes : Error {
    using Error::Error;
};

struct ChartDegeneracy : Error {
    using Error::Error;
};

// A genericity-dependent construction drew unusable randomness; samplers
// retry with split seeds before escalating to GenericityFailure.
struct DegenerateParams : Error {
    using Error::Error;
};

struct GenericityFailure : Error {
    using Error::Error;
};

struct PreconditionViolation : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, int line, int column)
        : Error(msg), line(line), column(column) {}
    int line = 0;
    int column = 0;
};

}  // namespace terracini
