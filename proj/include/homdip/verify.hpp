#pragma once

#include "homdip/fock.hpp"
#include "homdip/optics.hpp"

#include <Eigen/Dense>
#include <optional>
#include <string_view>
#include <vector>

namespace homdip {

using Matrix4 = Eigen::Matrix4cd;

/// Result of the local filters "exactly one photon?" / "more than two
/// photons?" on both ports. `matrix4` is in the ordered basis
/// {|00⟩, |02⟩, |20⟩, |22⟩} and normalized by p_tilde; `d` is ⟨0,2|ρ|2,0⟩ of
/// the unfiltered state (so d = p_tilde · matrix4(1,2)).
struct FilteredState {
    double  p_tilde = 0.0;
    Matrix4 matrix4 = Matrix4::Zero();
    Complex d{};

    [[nodiscard]] bool empty() const noexcept { return p_tilde <= 0.0; }
};

enum class CriterionKind {
    IdealD,
    Measured,
    Asymmetric,
    Conservative,
    /// Conservative form using a measured off-color P^o_{1,1} in place of P_{1,1}.
    ConservativeOffColor,
};

[[nodiscard]] std::string_view to_string(CriterionKind kind);

/// Quantities entering one entanglement test and its verdict
/// `entangled ⇔ lhs < rhs − verdict_margin`. `p0` is P_{0,0}.
struct CriterionReport {
    double        p0  = 0.0;
    double        p02 = 0.0;
    double        p20 = 0.0;
    double        p22 = 0.0;
    double        p11 = 0.0;
    double        q11 = 0.0;
    double        lhs = 0.0;
    double        rhs = 0.0;
    bool          entangled = false;
    /// max[0, 2√rhs − 2√lhs]: a lower bound on C(ρ) for the single-mode
    /// criteria. Zero for the multimode (conservative) kinds, which certify
    /// entanglement without bounding it.
    double        concurrence_lower_bound = 0.0;
    CriterionKind criterion_kind = CriterionKind::IdealD;
    std::optional<double> reflection;
};

/// Throws RangeError if the basis has n_max < 2.
[[nodiscard]] FilteredState filter_02(const DensityOperator &rho);

/// Random common phase on both ports: keeps the diagonal and the
/// |02⟩ ↔ |20⟩ coherence, zeroes everything else.
[[nodiscard]] FilteredState number_twirl(const FilteredState &fs);

/// P̃·C(ρ̃) = max[0, 2|d| − 2√(P_{0,0} P_{2,2})] in unnormalized probabilities.
[[nodiscard]] double concurrence_bound(const FilteredState &fs);

/// C(ρ̃) itself, i.e. concurrence_bound / p_tilde (zero for an empty filter).
[[nodiscard]] double filtered_concurrence(const FilteredState &fs);

/// Two-qubit concurrence from the spin-flipped spectrum. Throws ValidityError
/// if the input is not a density matrix within tolerance.
[[nodiscard]] double wootters_concurrence(const Matrix4 &rho);

/// Sum of |negative eigenvalues| of the partial transpose on the second qubit.
[[nodiscard]] double negativity(const Matrix4 &rho);

[[nodiscard]] CriterionReport criterion_ideal_d(const DensityOperator &rho);

/// P_{0,0}·P_{2,2} < (Q_{1,1} − (P_{2,0}+P_{0,2})/2)², with q measured behind a
/// balanced splitter.
[[nodiscard]] CriterionReport criterion_measured(const CountDistribution &p, const CountDistribution &q);

/// Unbalanced-splitter version:
///   P_{0,0}·P_{2,2} < ((Q_{1,1} − (t²−r²)² P_{1,1}) / (4r²t²) − (P_{2,0}+P_{0,2})/2)².
/// The inner quantity equals −Re d exactly when q carries no |1,1⟩ coherence
/// terms; use q_distribution_phase_averaged for that. Throws
/// DegenerateBeamSplitterError when r·t = 0.
[[nodiscard]] CriterionReport criterion_asymmetric(const CountDistribution &p, const CountDistribution &q,
                                                   const BeamSplitterParams &params);

struct PhaseInterval {
    double begin = 0.0; ///< radians; may exceed 2π when the interval wraps
    double end   = 0.0;
};

struct PhaseScan {
    double              lhs = 0.0;
    std::vector<double> phi;
    std::vector<double> rhs;
    std::vector<bool>   detected;
    std::vector<PhaseInterval> intervals;
    double phi_star    = 0.0; ///< rhs maximum with d·e^{−iφ} real and positive
    double phi_q11_max = 0.0; ///< maximum of Q_{1,1} itself (φ* + π for the default convention)
};

/// Sweeps a phase on port A over a uniform grid on [0, 2π) and evaluates the
/// balanced measured criterion at every point. Interval endpoints are refined
/// by bisection to 1e-6 rad. Throws std::invalid_argument for n_points < 8.
[[nodiscard]] PhaseScan scan_phase(const DensityOperator &rho, int n_points,
                                   PhaseConvention convention = PhaseConvention::PerFockComponent);

/// Shared verdict rule: lhs < rhs − ε.
[[nodiscard]] bool criterion_verdict(double lhs, double rhs);

} // namespace homdip
