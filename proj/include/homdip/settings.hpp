#pragma once

namespace homdip {

/// Numerical slack used across the library.
///
/// `validity` bounds Hermiticity/trace/PSD checks and probability sums,
/// `normalization` bounds state norms, `verdict_margin` is the ε in the
/// strict criterion test `lhs < rhs - ε`.
struct Tolerances {
    double validity       = 1e-10;
    double normalization  = 1e-12;
    double verdict_margin = 1e-12;
};

/// Process-wide tolerance record. Read once; `HOMDIP_TOLERANCE` (a positive
/// double) overrides `validity` when set.
[[nodiscard]] const Tolerances &tolerances();

} // namespace homdip
