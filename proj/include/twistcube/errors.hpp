#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace twistcube {

// Raised when a request would exceed a configured resource limit (memory
// budget, exact-diameter cap, enumeration budget). The CLI maps these to a
// dedicated exit code.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MemoryBudgetError : ResourceError {
    std::uint64_t required_bytes;
    std::uint64_t allowed_bytes;

    MemoryBudgetError(std::uint64_t required, std::uint64_t allowed)
        : ResourceError("memory budget exceeded: tables need " + std::to_string(required) +
                        " bytes, budget allows " + std::to_string(allowed) +
                        " (set TWISTCUBE_MEM_BUDGET to override)"),
          required_bytes(required),
          allowed_bytes(allowed) {}
};

}  // namespace twistcube
