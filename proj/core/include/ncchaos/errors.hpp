#pragma once

#include <stdexcept>
#include <string>

namespace ncchaos {

// Invalid mathematical input: preconditions violated, malformed objects,
// incompatible shapes. CLI maps this to exit code 4.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed data (overlapping partition blocks, bad JSON, ...).
class ValidationError : public DomainError {
public:
    explicit ValidationError(const std::string& what) : DomainError(what) {}
};

// A configured cap or budget would be exceeded. CLI maps this to exit code 3.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ncchaos
