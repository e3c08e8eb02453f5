#pragma once

#include <stdexcept>
#include <string>

namespace gorcalc {

// Error categories; mirrored one-to-one by the C API status codes.
enum class Errc {
    parse_error,    // malformed descriptor, command, or element literal
    domain_error,   // mixed rings, illegal atom, invariant violation
    precondition,   // operation called outside its contract
    oracle_budget,  // resolution / tower truncation too short
    io_error,       // unwritable report path and friends
    usage_error,    // bad flags or command arity
    internal,       // broken invariant inside the engine itself
};

class CalcError : public std::runtime_error {
public:
    CalcError(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw CalcError(code, msg); }

}  // namespace gorcalc
