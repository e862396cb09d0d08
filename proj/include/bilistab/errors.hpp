#pragma once

#include <stdexcept>
#include <string>

namespace bilistab {

/// Violated precondition or malformed input (CLI exit code 2).
class ContractViolation : public std::runtime_error {
public:
    explicit ContractViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Unknown catalog or enum name.
class LookupError : public ContractViolation {
public:
    explicit LookupError(const std::string& what) : ContractViolation(what) {}
};

/// Problem size too large for the exact-arithmetic oracle (CLI exit code 3).
class OracleInfeasible : public std::runtime_error {
public:
    explicit OracleInfeasible(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bilistab
