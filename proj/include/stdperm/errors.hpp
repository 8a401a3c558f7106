#pragma once

#include <stdexcept>
#include <string>

namespace stdperm {

struct NonPrimitiveError : std::invalid_argument {
    explicit NonPrimitiveError(const std::string& what) : std::invalid_argument(what) {}
};

struct CapExceededError : std::runtime_error {
    explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

struct NoSuchCycleError : std::invalid_argument {
    explicit NoSuchCycleError(const std::string& what) : std::invalid_argument(what) {}
};

struct GroundSetMismatchError : std::invalid_argument {
    explicit GroundSetMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

struct DegenerateTestError : std::runtime_error {
    explicit DegenerateTestError(const std::string& what) : std::runtime_error(what) {}
};

struct InternalInvariantError : std::logic_error {
    explicit InternalInvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace stdperm
