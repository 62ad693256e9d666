#pragma once

#include <stdexcept>
#include <string>

namespace typoid {

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated by its caller (for instance
/// comparing cells of edges from different hom-sets).
class ContractError : public Error {
public:
    using Error::Error;
};

/// Malformed or unresolvable user input.
class InputError : public Error {
public:
    using Error::Error;
};

/// A configured work or size bound was exceeded. `bound()` names it.
class ResourceLimit : public Error {
public:
    ResourceLimit(std::string bound, const std::string& what) : Error(what), bound_(std::move(bound)) {}
    const std::string& bound() const { return bound_; }

private:
    std::string bound_;
};

} // namespace typoid
