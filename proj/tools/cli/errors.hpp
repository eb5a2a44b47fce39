#pragma once

#include <stdexcept>

namespace qspacing::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

/// Bad flags or flag values; exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unreadable or invalid input data; exit code 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qspacing::cli
