#pragma once

#include "homdip/io.hpp"
#include "homdip/optics.hpp"
#include "homdip/states.hpp"
#include "homdip/verify.hpp"

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace homdip::cli {

enum ExitCode : int {
    kSuccess           = 0,
    kUsageError        = 1,
    kInputError        = 2,
    kInvariantViolated = 3,
};

/// Bad flag combination or value; maps to exit code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The state itself is unusable (invalid density matrix, unknown id, ...); exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CriterionChoice { Ideal, Measured, Asymmetric, Conservative };

struct RunConfig {
    std::string     state = "hom"; ///< named id or path to a JSON state file
    CriterionChoice criterion = CriterionChoice::Measured;
    double          r = std::numbers::sqrt2 / 2.0;
    PhaseConvention convention = PhaseConvention::PerFockComponent;
    int             points  = 1024;
    int             samples = 1000;
    std::uint64_t   seed    = 1;
    std::optional<std::filesystem::path> out;
    bool            reproducible = false;
    int             modes        = 2;
    bool            json         = false;
};

/// Named id first, then file path.
[[nodiscard]] AnyState resolve_state(const std::string &source);

[[nodiscard]] CriterionReport run_check(const RunConfig &config);
[[nodiscard]] PhaseScan       run_scan_phase(const RunConfig &config);

struct ScatterRow {
    double      lhs = 0.0;
    double      rhs = 0.0;
    std::string family; ///< "boundary" or "mixture"
};

/// `samples` states from each separable family, boundary rows first.
[[nodiscard]] std::vector<ScatterRow> run_scatter(const RunConfig &config);
/// Header `lhs,rhs,family`.
[[nodiscard]] std::string    scatter_to_csv(const std::vector<ScatterRow> &rows);
[[nodiscard]] nlohmann::json scatter_metadata(const RunConfig &config);

[[nodiscard]] double run_identity_check(const RunConfig &config);

} // namespace homdip::cli
