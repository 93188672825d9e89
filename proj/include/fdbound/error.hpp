#pragma once

#include <stdexcept>
#include <string>

namespace fdbound {

// Error taxonomy shared by the whole library. Every category maps 1:1 onto a
// status code of the C API (see include/fdbound.h).
enum class ErrorCode {
    Parse,       // malformed input document
    Invalid,     // network invariant violations
    NotCyclic,   // operation requires a cyclic FDG
    NotAcyclic,  // operation requires an acyclic FDG
    SizeCap,     // instance exceeds a documented size cap
    Contract,    // API precondition violated by the caller
    Numeric,     // solver could not certify the result; use LP export
    Domain,      // other domain errors (empty bound collection, ...)
    Io,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

struct ParseError : Error {
    explicit ParseError(std::string m) : Error(ErrorCode::Parse, std::move(m)) {}
};
struct InvalidNetworkError : Error {
    explicit InvalidNetworkError(std::string m) : Error(ErrorCode::Invalid, std::move(m)) {}
};
struct NotCyclicError : Error {
    explicit NotCyclicError(std::string m) : Error(ErrorCode::NotCyclic, std::move(m)) {}
};
struct NotAcyclicError : Error {
    explicit NotAcyclicError(std::string m) : Error(ErrorCode::NotAcyclic, std::move(m)) {}
};
struct SizeCapError : Error {
    explicit SizeCapError(std::string m) : Error(ErrorCode::SizeCap, std::move(m)) {}
};
struct ContractError : Error {
    explicit ContractError(std::string m) : Error(ErrorCode::Contract, std::move(m)) {}
};
struct NumericError : Error {
    explicit NumericError(std::string m) : Error(ErrorCode::Numeric, std::move(m)) {}
};
struct DomainError : Error {
    explicit DomainError(std::string m) : Error(ErrorCode::Domain, std::move(m)) {}
};
struct IoError : Error {
    explicit IoError(std::string m) : Error(ErrorCode::Io, std::move(m)) {}
};

} // namespace fdbound
