#pragma once

#include "homdip/fock.hpp"
#include "homdip/multimode.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <string_view>
#include <variant>

namespace homdip {

/// Truncation used by the named states. Four photons per port keeps every
/// sector up to |2,2⟩ complete, so beamsplitter workflows are exact.
inline constexpr int kDefaultNMax = 4;

/// Noisy bi-photon: (1 − p_vacuum − p_four)·[½|02⟩⟨02| + ½|20⟩⟨20| + (d|02⟩⟨20| + h.c.)]
/// + p_vacuum|00⟩⟨00| + p_four|22⟩⟨22|, with d = −½·dephase·e^{i·phase}.
/// phase = 0, dephase = 1 is the ideal state.
struct NoiseSpec {
    double p_vacuum = 0.0;
    double p_four   = 0.0;
    double dephase  = 1.0;
    double phase    = 0.0;
};

/// (|0,2⟩ − |2,0⟩)/√2
[[nodiscard]] PureState hom_state(int n_max = kDefaultNMax);

/// 1/6|00⟩⟨00| + 1/3(|20⟩ + i|02⟩)(⟨20| − i⟨02|) + 1/6|22⟩⟨22|
[[nodiscard]] DensityOperator rho1(int n_max = kDefaultNMax);
/// 1/3|00⟩⟨00| + 1/4(|20⟩ + i|02⟩)(⟨20| − i⟨02|) + 1/6|22⟩⟨22|
[[nodiscard]] DensityOperator rho2(int n_max = kDefaultNMax);

[[nodiscard]] DensityOperator vacuum_state(int n_max = kDefaultNMax);

/// Throws std::invalid_argument for weights outside [0,1], p_vacuum + p_four > 1,
/// or dephase outside [0,1].
[[nodiscard]] DensityOperator noisy_hom(const NoiseSpec &spec, int n_max = kDefaultNMax);

// ---------------------------------------------------------------------------
// Seeded generators.
//
// Every generator draws from an explicit std::mt19937_64. Uniform reals use
// the top 53 bits of one draw, so sequences are identical across standard
// libraries. Batch jobs derive one engine per item from (seed, stream, index).

inline constexpr std::string_view kPrngId = "mt19937_64+seed_seq(seed,stream,index);u01=top53bits";

/// Sampling ranges for the separable families (recorded with every dataset).
inline constexpr double kBoundaryCoefficientMax = 3.0; ///< a, b ~ U[0, 3]
inline constexpr double kMixtureModulusMax      = 1.5; ///< |coefficient| ~ U[0, 1.5], arg ~ U[0, 2π)

using Rng = std::mt19937_64;

[[nodiscard]] Rng    derive_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);
[[nodiscard]] double uniform01(Rng &rng);
[[nodiscard]] double standard_normal(Rng &rng);

/// Normalized (|0⟩ + a|2⟩) ⊗ (|0⟩ + b|2⟩).
[[nodiscard]] PureState separable_boundary_state(double a, double b, int n_max = kDefaultNMax);
[[nodiscard]] PureState random_separable_boundary(Rng &rng, int n_max = kDefaultNMax);

/// Normalized (|0⟩ + α₁|1⟩ + α₂|2⟩) ⊗ (|0⟩ + β₁|1⟩ + β₂|2⟩).
[[nodiscard]] PureState separable_product_state(const std::array<Complex, 2> &alpha,
                                                const std::array<Complex, 2> &beta, int n_max = kDefaultNMax);

/// w·ρ_first + (1 − w)·ρ_second for two random products, w ~ U[0, 1].
[[nodiscard]] DensityOperator random_separable_mixture(Rng &rng, int n_max = kDefaultNMax);

/// Ginibre-distributed density operator of the given rank supported on
/// occupations with at most `max_per_port` photons in each port.
[[nodiscard]] DensityOperator random_density(Rng &rng, int rank, int max_per_port = 2, int n_max = kDefaultNMax);

/// Ginibre-distributed multimode density operator of the given rank
/// supported on tables with at most `max_total` photons.
[[nodiscard]] MultiModeDensity random_multimode_density(Rng &rng, const MultiModeBasisPtr &basis, int rank,
                                                        int max_total);

/// (|10⟩_red + |01⟩_red) ⊗ (|10⟩_blue − |01⟩_blue)/2 with red = mode 0,
/// blue = mode 1, as a pure multimode density operator.
[[nodiscard]] MultiModeDensity worst_case_two_color(int n_max_total = kDefaultNMax);

using AnyState = std::variant<DensityOperator, MultiModeDensity>;

/// "hom", "rho1", "rho2", "vacuum", "worst2color". Throws std::invalid_argument otherwise.
[[nodiscard]] AnyState named_state(std::string_view id);
[[nodiscard]] bool     is_named_state(std::string_view id);

} // namespace homdip
