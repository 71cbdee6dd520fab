#pragma once

#include <stdexcept>
#include <string>

namespace bforge {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation outside the physical working range (roller locked, or X
/// outside a branch's definition domain).
struct DomainError : Error {
    using Error::Error;
};

/// Tabulated force queried outside its sample range.
struct RangeError : Error {
    using Error::Error;
};

/// Branch id inconsistent with the design spec (wrong K sign or
/// pre-deformation case).
struct SpecMismatch : Error {
    using Error::Error;
};

/// A boundary search could not bracket its target.
struct SearchError : Error {
    using Error::Error;
};

/// Operation requested on a branch whose domain is a single point.
struct DegenerateBranch : Error {
    using Error::Error;
};

/// Invalid simulation configuration.
struct ConfigError : Error {
    using Error::Error;
};

/// A design spec violates its invariants (K = 0, |delta| >= L, ...).
struct InvalidSpec : Error {
    using Error::Error;
};

/// A JSON document does not match the expected schema.
struct SchemaError : Error {
    using Error::Error;
};

/// File could not be read or written.
struct IoError : Error {
    using Error::Error;
};

}  // namespace bforge
