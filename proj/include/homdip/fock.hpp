#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>

namespace homdip {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;

/// Spatial port. A and B are the two input modes; after a beamsplitter the
/// same labels name the output ports C and D.
enum class Port { A, B };

struct Occupation {
    int a = 0;
    int b = 0;
    [[nodiscard]] int total() const noexcept { return a + b; }
    friend bool operator==(const Occupation &, const Occupation &) = default;
};

/// Two-mode Fock basis truncated at `n_max` photons per port, ordered
/// row-major in (n_A, n_B): index = n_A * (n_max + 1) + n_B.
class TwoModeBasis {
  public:
    explicit TwoModeBasis(int n_max);

    [[nodiscard]] int         n_max() const noexcept { return n_max_; }
    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>((n_max_ + 1) * (n_max_ + 1)); }
    [[nodiscard]] Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(dim()); }

    /// Throws RangeError if either occupation is outside [0, n_max].
    [[nodiscard]] std::size_t index(int n_a, int n_b) const;
    [[nodiscard]] std::size_t index(Occupation occ) const { return index(occ.a, occ.b); }
    [[nodiscard]] Occupation  occupation(std::size_t index) const;
    [[nodiscard]] bool        contains(int n_a, int n_b) const noexcept;

    friend bool operator==(const TwoModeBasis &, const TwoModeBasis &) = default;

  private:
    int n_max_;
};

[[nodiscard]] std::size_t basis_index(const TwoModeBasis &basis, int n_a, int n_b);

/// Truncated a† (port A) or b† (port B): |n⟩ → √(n+1)|n+1⟩, zero past n_max.
[[nodiscard]] Matrix creation_matrix(const TwoModeBasis &basis, Port port);

class PureState {
  public:
    PureState(TwoModeBasis basis, Vector amplitudes);

    [[nodiscard]] const TwoModeBasis &basis() const noexcept { return basis_; }
    [[nodiscard]] const Vector       &amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] Complex             amplitude(int n_a, int n_b) const { return amplitudes_(static_cast<Eigen::Index>(basis_.index(n_a, n_b))); }
    [[nodiscard]] double              norm() const { return amplitudes_.norm(); }
    /// Throws NormalizationError for the zero vector.
    [[nodiscard]] PureState normalized() const;

  private:
    TwoModeBasis basis_;
    Vector       amplitudes_;
};

/// Matrix over a TwoModeBasis. Construction only checks the shape; use
/// `validate` for the density-operator properties.
class DensityOperator {
  public:
    DensityOperator(TwoModeBasis basis, Matrix matrix);

    [[nodiscard]] const TwoModeBasis &basis() const noexcept { return basis_; }
    [[nodiscard]] const Matrix       &matrix() const noexcept { return matrix_; }

    /// ⟨row|ρ|col⟩
    [[nodiscard]] Complex element(Occupation row, Occupation col) const;
    /// ⟨n_a,n_b|ρ|n_a,n_b⟩; zero for occupations outside the basis.
    [[nodiscard]] double probability(int n_a, int n_b) const;
    /// The coherence d = ⟨0,2|ρ|2,0⟩.
    [[nodiscard]] Complex coherence_d() const;

  private:
    TwoModeBasis basis_;
    Matrix       matrix_;
};

/// |ψ⟩⟨ψ|. Throws NormalizationError if ‖ψ‖ deviates from 1 by more than the
/// normalization tolerance.
[[nodiscard]] DensityOperator pure_to_density(const PureState &psi);

struct ValidityReport {
    double hermiticity_deviation = 0.0; ///< max |ρ - ρ†| entry
    double trace_deviation       = 0.0; ///< |tr ρ - 1|
    double min_eigenvalue        = 0.0;
    bool   hermitian             = true;
    bool   unit_trace            = true;
    bool   positive              = true;
    [[nodiscard]] bool ok() const noexcept { return hermitian && unit_trace && positive; }
};

[[nodiscard]] ValidityReport validate_matrix(const Matrix &m);
[[nodiscard]] ValidityReport validate(const DensityOperator &rho);

/// Largest n_A + n_B carrying diagonal weight above the validity tolerance;
/// -1 for the zero operator.
[[nodiscard]] int max_total_photons(const DensityOperator &rho);

} // namespace homdip
