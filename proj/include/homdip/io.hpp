#pragma once

#include "homdip/optics.hpp"
#include "homdip/states.hpp"
#include "homdip/verify.hpp"

#include <filesystem>
#include <json.hpp>
#include <string>
#include <string_view>

namespace homdip {

/// Shortest-round-trip-safe decimal form: 17 significant digits, '.' separator.
[[nodiscard]] std::string format_double(double value);

// State files:
//   { "n_max": int, "kind": "pure"|"density",
//     "entries": [ {"row": [nA,nB], "col": [nA,nB] | null, "re": x, "im": y} ] }
// Multimode files add "modes": m, use n_max as the total photon cap, and
// write occupations as [[nA_1..nA_m],[nB_1..nB_m]]. Only nonzero entries are
// stored. Pure states set "col" to null and put the ket occupation in "row".

/// Throws ParseError with a line number (syntax) or JSON field path (schema).
[[nodiscard]] AnyState parse_state_json(std::string_view text);
[[nodiscard]] AnyState load_state_file(const std::filesystem::path &path);

[[nodiscard]] nlohmann::json state_to_json(const PureState &psi);
[[nodiscard]] nlohmann::json state_to_json(const DensityOperator &rho);
[[nodiscard]] nlohmann::json state_to_json(const MultiModeDensity &rho);

[[nodiscard]] nlohmann::json report_to_json(const CriterionReport &report);

/// Header `i,j,p`, one row per nonzero entry.
[[nodiscard]] std::string counts_to_csv(const CountDistribution &counts);

/// Header `phi,lhs,rhs,detected`.
[[nodiscard]] std::string scan_to_csv(const PhaseScan &scan);
[[nodiscard]] nlohmann::json scan_summary_json(const PhaseScan &scan);

} // namespace homdip
