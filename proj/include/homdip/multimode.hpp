#pragma once

#include "homdip/fock.hpp"
#include "homdip/optics.hpp"
#include "homdip/verify.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace homdip {

/// Occupation table n[port][k] over ports {A, B} and internal modes
/// k = 0..m−1 (color, polarization, ...).
struct ModeOccupation {
    std::vector<int> a;
    std::vector<int> b;

    [[nodiscard]] int total_a() const;
    [[nodiscard]] int total_b() const;
    [[nodiscard]] int total() const { return total_a() + total_b(); }
    /// n[A][k] + n[B][k]
    [[nodiscard]] int mode_total(std::size_t k) const { return a[k] + b[k]; }

    friend bool operator==(const ModeOccupation &, const ModeOccupation &) = default;
    friend auto operator<=>(const ModeOccupation &, const ModeOccupation &) = default;
};

/// All occupation tables with at most `n_max_total` photons in total,
/// ordered by total photon number and then lexicographically in
/// (n[A][0..m), n[B][0..m)). Large for many modes; build once and share.
class MultiModeBasis {
  public:
    MultiModeBasis(int modes, int n_max_total);

    [[nodiscard]] int          modes() const noexcept { return modes_; }
    [[nodiscard]] int          n_max_total() const noexcept { return n_max_total_; }
    [[nodiscard]] std::size_t  dim() const noexcept { return elements_.size(); }
    [[nodiscard]] Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(elements_.size()); }

    [[nodiscard]] const ModeOccupation &occupation(std::size_t index) const { return elements_.at(index); }
    /// Throws RangeError for tables of the wrong shape or above the photon cap.
    [[nodiscard]] std::size_t index(const ModeOccupation &occ) const;
    [[nodiscard]] std::optional<std::size_t> find(const ModeOccupation &occ) const;
    [[nodiscard]] ModeOccupation vacuum() const;

  private:
    int                                   modes_;
    int                                   n_max_total_;
    std::vector<ModeOccupation>           elements_;
    std::map<ModeOccupation, std::size_t> lookup_;
};

using MultiModeBasisPtr = std::shared_ptr<const MultiModeBasis>;

[[nodiscard]] MultiModeBasisPtr make_multimode_basis(int modes, int n_max_total);

class MultiModeDensity {
  public:
    /// Throws DimensionError on shape mismatch, std::invalid_argument for a null basis.
    MultiModeDensity(MultiModeBasisPtr basis, Matrix matrix);

    [[nodiscard]] const MultiModeBasis   &basis() const noexcept { return *basis_; }
    [[nodiscard]] const MultiModeBasisPtr &basis_ptr() const noexcept { return basis_; }
    [[nodiscard]] const Matrix           &matrix() const noexcept { return matrix_; }

  private:
    MultiModeBasisPtr basis_;
    Matrix            matrix_;
};

[[nodiscard]] ValidityReport validate(const MultiModeDensity &rho);

/// Creation operator for internal mode `mode` on `port`; zero when the photon
/// cap would be exceeded.
[[nodiscard]] Matrix mm_creation_matrix(const MultiModeBasis &basis, Port port, int mode);

/// Places a single-mode state into internal mode `mode`. Throws RangeError
/// if ρ has weight on occupations above the multimode photon cap.
[[nodiscard]] MultiModeDensity embed_single_mode(const DensityOperator &rho, MultiModeBasisPtr basis, int mode = 0);

/// The splitter acting identically on every internal-mode pair (A_k, B_k).
/// Photon number is conserved per internal mode, so the capped basis is
/// closed under it and the matrix is exactly unitary.
[[nodiscard]] Matrix mm_beamsplitter_unitary(const MultiModeBasis &basis, const BeamSplitterParams &params);
[[nodiscard]] MultiModeDensity mm_beamsplitter(const MultiModeDensity &rho, const BeamSplitterParams &params);

/// Color-blind counts: P[i][j] summed over how the i (j) photons in port A (B)
/// split across internal modes. Table size is n_max_total + 1.
[[nodiscard]] CountDistribution mm_count_distribution(const MultiModeDensity &rho);

/// Color-blind counts behind the splitter. With `phase_averaged`, averages
/// over a π per-photon shift on port A as in q_distribution_phase_averaged.
[[nodiscard]] CountDistribution mm_q_distribution(const MultiModeDensity &rho, const BeamSplitterParams &params,
                                                  bool phase_averaged = false);

/// P^o_{1,1}: one photon per port, in different internal modes.
[[nodiscard]] double off_color_p11(const MultiModeDensity &rho);

/// P_{0,0}·P_{2,2} < (max[Q_{1,1} − P_{1,1} − p2/2, 0])², where p2 is the total
/// two-photon detection probability. With p2 = Σ_{i+j=2} P_{i,j} the inner
/// quantity equals Q_{1,1} − (P_{2,0}+P_{0,2})/2 − (3/2)·P_{1,1}.
[[nodiscard]] CriterionReport criterion_conservative(const CountDistribution &p, const CountDistribution &q, double p2);

/// Same criterion with the off-color correction taken from a measured
/// P^o_{1,1}: (max[Q_{1,1} − (P_{2,0}+P_{0,2})/2 − (3/2)·P^o_{1,1}, 0])².
[[nodiscard]] CriterionReport criterion_conservative_off_color(const CountDistribution &p, const CountDistribution &q,
                                                               double p_off11);

/// ‖a_i† a_j† |0⟩ − ½[(a_+†)² − (a_−†)²] |0⟩‖ on port A, with
/// a_± = (a_i ± phase·a_j)/√2. Vanishes for phase = 1: a pair of photons in
/// orthogonal modes is also a superposition of two same-mode pairs.
/// Throws RangeError unless the basis has two distinct modes i, j and room for two photons.
[[nodiscard]] double mode_identity_check(const MultiModeBasis &basis, int mode_i = 0, int mode_j = 1,
                                         Complex relative_phase = Complex{1.0, 0.0});

/// ρ = p_s ρ^s + (1 − p_s) ρ^⊥ after dephasing every internal-mode pair
/// (A_k, B_k) with an independent random phase.
struct DephaseSplit {
    double                          p_s = 0.0;
    std::optional<MultiModeDensity> rho_s;    ///< empty when p_s = 0
    std::optional<MultiModeDensity> rho_perp; ///< empty when p_s = 1

    /// p_s ρ^s + (1 − p_s) ρ^⊥
    [[nodiscard]] MultiModeDensity reconstruct() const;
};

/// Coherence survives only between tables with equal n[A][k] + n[B][k] for
/// every k. ρ^s collects the tables whose photons all share one internal
/// mode (vacuum included); ρ^⊥ holds the rest.
[[nodiscard]] DephaseSplit pairwise_dephase(const MultiModeDensity &rho);

} // namespace homdip
