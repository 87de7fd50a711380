#pragma once

#include <stdexcept>
#include <string>

namespace symdisc {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define SYMDISC_ERROR_TYPE(Name)                                        \
    struct Name : Error {                                               \
        explicit Name(const std::string& what) : Error(what) {}         \
    }

// Cayley table / group construction
SYMDISC_ERROR_TYPE(MalformedTable);
SYMDISC_ERROR_TYPE(NoIdentity);
SYMDISC_ERROR_TYPE(NotInvertible);
SYMDISC_ERROR_TYPE(NotAssociative);
SYMDISC_ERROR_TYPE(InvalidParameter);
SYMDISC_ERROR_TYPE(CapExceeded);

// representations
SYMDISC_ERROR_TYPE(NotAnAction);
SYMDISC_ERROR_TYPE(DecompositionFailed);
SYMDISC_ERROR_TYPE(InvalidIndex);
SYMDISC_ERROR_TYPE(NotClassConstant);
SYMDISC_ERROR_TYPE(DualNotPresent);

// discrimination
SYMDISC_ERROR_TYPE(NotNormalized);
SYMDISC_ERROR_TYPE(NotOptimalInput);
SYMDISC_ERROR_TYPE(HypothesisViolated);

// worked problems
SYMDISC_ERROR_TYPE(NotInteger);
SYMDISC_ERROR_TYPE(TrivialIsotype);

// command line
SYMDISC_ERROR_TYPE(UsageError);

#undef SYMDISC_ERROR_TYPE

}  // namespace symdisc
