#pragma once

#include "homdip/fock.hpp"

#include <Eigen/Dense>

namespace homdip {

/// Real beamsplitter a† → r c† + t d†, b† → t c† − r d†, with r² + t² = 1.
/// The reflection phase is absorbed into port D, so r = t = 1/√2 is the
/// balanced splitter a† → (c†+d†)/√2, b† → (c†−d†)/√2.
class BeamSplitterParams {
  public:
    /// Throws std::invalid_argument unless r, t ∈ [0,1] and r² + t² = 1 within 1e-12.
    BeamSplitterParams(double r, double t);

    [[nodiscard]] static BeamSplitterParams balanced();
    [[nodiscard]] static BeamSplitterParams from_reflection(double r);

    [[nodiscard]] double r() const noexcept { return r_; }
    [[nodiscard]] double t() const noexcept { return t_; }

  private:
    double r_;
    double t_;
};

enum class PhaseConvention {
    /// exp(i·n·φ) on occupation n of the shifted port.
    PerPhoton,
    /// exp(i·φ) on the |2⟩ component, exp(i·φ/2) on |1⟩; PerPhoton at φ/2.
    PerFockComponent,
};

/// Joint photon-count table P[i][j], i photons in the first port and j in the
/// second. Entries in [−1e-12, 0) are clipped to zero; the table is
/// renormalized when its sum is within the validity tolerance of one.
class CountDistribution {
  public:
    /// Throws ValidityError for entries below −1e-12.
    explicit CountDistribution(Eigen::MatrixXd table);

    [[nodiscard]] int    n_max() const noexcept { return static_cast<int>(table_.rows()) - 1; }
    [[nodiscard]] double operator()(int i, int j) const;
    [[nodiscard]] const Eigen::MatrixXd &table() const noexcept { return table_; }
    [[nodiscard]] double sum() const { return table_.sum(); }
    /// Σ_{i+j=2} P[i][j]
    [[nodiscard]] double two_photon_probability() const;

  private:
    Eigen::MatrixXd table_;
};

/// ⟨k, n−k| U_BS |n_a, n_b⟩ with n = n_a + n_b. Zero unless 0 ≤ k ≤ n.
[[nodiscard]] double beamsplitter_amplitude(const BeamSplitterParams &params, int n_a, int n_b, int k);

/// Beamsplitter unitary on the truncated basis, built sector by sector in
/// total photon number. Sectors with total ≤ n_max are complete and exact.
/// Higher sectors are cut by the truncation; they are left as identity so the
/// matrix stays unitary, and q_distribution refuses states living there.
[[nodiscard]] Matrix beamsplitter_unitary(const TwoModeBasis &basis, const BeamSplitterParams &params);

/// UρU†. Throws DimensionError on shape mismatch.
[[nodiscard]] DensityOperator apply_unitary(const DensityOperator &rho, const Matrix &u);

[[nodiscard]] DensityOperator phase_shift(const DensityOperator &rho, Port port, double phi,
                                          PhaseConvention convention = PhaseConvention::PerFockComponent);

/// P[i][j] = ⟨i,j|ρ|i,j⟩
[[nodiscard]] CountDistribution count_distribution(const DensityOperator &rho);

/// Counts behind the beamsplitter. Throws TruncationError when ρ has weight
/// on a total photon number above n_max.
[[nodiscard]] CountDistribution q_distribution(const DensityOperator &rho, const BeamSplitterParams &params);

/// Mean of q_distribution for ρ and for ρ after a per-photon π shift on port
/// A. The shift flips the sign of odd-n_A amplitudes, which cancels the
/// |1,1⟩ ↔ {|2,0⟩,|0,2⟩} interference terms an unbalanced splitter would
/// otherwise add to Q[1][1], while leaving d = ⟨0,2|ρ|2,0⟩ untouched.
[[nodiscard]] CountDistribution q_distribution_phase_averaged(const DensityOperator &rho,
                                                              const BeamSplitterParams &params);

[[nodiscard]] bool truncation_safe(const DensityOperator &rho);

} // namespace homdip
