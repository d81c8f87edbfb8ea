// SPDX-License-Identifier: MIT
// Error taxonomy shared by every module. Each condition callers are expected
// to branch on gets its own type; everything derives from opdiam::Error.

#pragma once

#include <stdexcept>
#include <string>

namespace opdiam {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// linalg-core
struct NonSquare : Error {
    using Error::Error;
};
struct NonHermitian : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct EmptyInput : Error {
    using Error::Error;
};

// numrange
struct NotNormal : Error {
    using Error::Error;
};

// superop
struct NonSelfAdjoint : Error {
    using Error::Error;
};
struct NotParaunital : Error {
    using Error::Error;
};
struct NotScaledTP : Error {
    using Error::Error;
};
struct NullSpaceTooLarge : Error {
    using Error::Error;
};
struct UnknownExample : Error {
    using Error::Error;
};

// diamnorm: a ledger relation needed an upper bound no estimate carries.
// Ledger rows catch this internally and report the relation as skipped.
struct InsufficientCertificates : Error {
    using Error::Error;
};

// resource caps (CLI exit code 3)
struct ResourceLimit : Error {
    using Error::Error;
};

// file / schema validation (CLI exit code 2)
struct ParseError : Error {
    using Error::Error;
};

// replicate
struct NotAnObservable : Error {
    using Error::Error;
};
struct NotUCP : Error {
    using Error::Error;
};

} // namespace opdiam
