// The full verification suite: every acceptance-grade property of the
// library, run end to end with pinned tolerances and a single seed.
#pragma once

#include <cstdint>

#include "s3lab/report.hpp"

namespace s3lab {

struct VerifyOptions {
    std::uint64_t seed = 42;
    /// Re-runs the whole suite a second time and compares the serialized
    /// reports byte for byte (the determinism criterion). Doubles the cost.
    bool include_determinism = true;
};

/// Runs all verification criteria and aggregates one pass/fail row per
/// criterion plus the individual measurements. The report's duration field is
/// filled last and excluded from the determinism comparison.
Report verify_all(const VerifyOptions& options = {});

}  // namespace s3lab
