#pragma once

#include <stdexcept>
#include <string>

namespace homdip {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Occupation number or mode label outside the truncated basis.
struct RangeError : Error {
    using Error::Error;
};

struct NormalizationError : Error {
    using Error::Error;
};

struct DimensionError : Error {
    using Error::Error;
};

/// The state has support where a photon-number-conserving operation would be
/// cut off by the truncation.
struct TruncationError : Error {
    using Error::Error;
};

/// A matrix that should be a density operator is not (non-Hermitian, not PSD, ...).
struct ValidityError : Error {
    using Error::Error;
};

/// r or t vanishes, so the asymmetric criterion has no finite right-hand side.
struct DegenerateBeamSplitterError : Error {
    using Error::Error;
};

/// Malformed state file. `where()` carries the line and/or JSON field path.
class ParseError : public Error {
  public:
    ParseError(std::string where, const std::string &what)
        : Error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
    [[nodiscard]] const std::string &where() const noexcept { return where_; }

  private:
    std::string where_;
};

} // namespace homdip
