#include "homdip/fock.hpp"

#include "homdip/errors.hpp"
#include "homdip/settings.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace homdip {

TwoModeBasis::TwoModeBasis(int n_max) : n_max_(n_max) {
    if(n_max < 1) throw RangeError("TwoModeBasis: n_max must be at least 1, got " + std::to_string(n_max));
}

bool TwoModeBasis::contains(int n_a, int n_b) const noexcept {
    return n_a >= 0 && n_b >= 0 && n_a <= n_max_ && n_b <= n_max_;
}

std::size_t TwoModeBasis::index(int n_a, int n_b) const {
    if(!contains(n_a, n_b))
        throw RangeError("occupation (" + std::to_string(n_a) + "," + std::to_string(n_b) + ") outside basis with n_max " +
                         std::to_string(n_max_));
    return static_cast<std::size_t>(n_a * (n_max_ + 1) + n_b);
}

Occupation TwoModeBasis::occupation(std::size_t index) const {
    if(index >= dim()) throw RangeError("basis index " + std::to_string(index) + " out of range");
    const auto stride = static_cast<std::size_t>(n_max_ + 1);
    return {static_cast<int>(index / stride), static_cast<int>(index % stride)};
}

std::size_t basis_index(const TwoModeBasis &basis, int n_a, int n_b) { return basis.index(n_a, n_b); }

Matrix creation_matrix(const TwoModeBasis &basis, Port port) {
    Matrix m = Matrix::Zero(basis.size(), basis.size());
    for(std::size_t col = 0; col < basis.dim(); ++col) {
        const Occupation occ = basis.occupation(col);
        const int        n   = port == Port::A ? occ.a : occ.b;
        if(n + 1 > basis.n_max()) continue;
        const std::size_t row = port == Port::A ? basis.index(occ.a + 1, occ.b) : basis.index(occ.a, occ.b + 1);
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = std::sqrt(static_cast<double>(n + 1));
    }
    return m;
}

PureState::PureState(TwoModeBasis basis, Vector amplitudes) : basis_(basis), amplitudes_(std::move(amplitudes)) {
    if(amplitudes_.size() != basis_.size())
        throw DimensionError("PureState: " + std::to_string(amplitudes_.size()) + " amplitudes for basis of dimension " +
                             std::to_string(basis_.dim()));
}

PureState PureState::normalized() const {
    const double n = norm();
    if(n == 0.0) throw NormalizationError("cannot normalize the zero vector");
    return PureState(basis_, amplitudes_ / n);
}

DensityOperator::DensityOperator(TwoModeBasis basis, Matrix matrix) : basis_(basis), matrix_(std::move(matrix)) {
    if(matrix_.rows() != basis_.size() || matrix_.cols() != basis_.size())
        throw DimensionError("DensityOperator: matrix is " + std::to_string(matrix_.rows()) + "x" +
                             std::to_string(matrix_.cols()) + ", basis dimension " + std::to_string(basis_.dim()));
}

Complex DensityOperator::element(Occupation row, Occupation col) const {
    return matrix_(static_cast<Eigen::Index>(basis_.index(row)), static_cast<Eigen::Index>(basis_.index(col)));
}

double DensityOperator::probability(int n_a, int n_b) const {
    if(!basis_.contains(n_a, n_b)) return 0.0;
    const auto i = static_cast<Eigen::Index>(basis_.index(n_a, n_b));
    return matrix_(i, i).real();
}

Complex DensityOperator::coherence_d() const { return element({0, 2}, {2, 0}); }

DensityOperator pure_to_density(const PureState &psi) {
    const double n = psi.norm();
    if(std::abs(n * n - 1.0) > tolerances().normalization)
        throw NormalizationError("pure_to_density: squared norm " + std::to_string(n * n) + " differs from 1");
    return DensityOperator(psi.basis(), psi.amplitudes() * psi.amplitudes().adjoint());
}

ValidityReport validate_matrix(const Matrix &m) {
    const double   tol = tolerances().validity;
    ValidityReport rep;
    if(m.rows() != m.cols() || m.rows() == 0) {
        rep.hermitian = rep.unit_trace = rep.positive = false;
        rep.hermiticity_deviation = rep.trace_deviation = std::numeric_limits<double>::infinity();
        return rep;
    }
    rep.hermiticity_deviation = (m - m.adjoint()).cwiseAbs().maxCoeff();
    rep.trace_deviation       = std::abs(m.trace() - Complex{1.0, 0.0});
    // Spectrum of the Hermitian part; the anti-Hermitian part is already reported.
    const Matrix hermitian_part = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part, Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = solver.eigenvalues().minCoeff();
    rep.hermitian      = rep.hermiticity_deviation <= tol;
    rep.unit_trace     = rep.trace_deviation <= tol;
    rep.positive       = rep.min_eigenvalue >= -tol;
    return rep;
}

ValidityReport validate(const DensityOperator &rho) { return validate_matrix(rho.matrix()); }

int max_total_photons(const DensityOperator &rho) {
    const double tol  = tolerances().validity;
    int          best = -1;
    for(std::size_t i = 0; i < rho.basis().dim(); ++i) {
        const auto idx = static_cast<Eigen::Index>(i);
        if(std::abs(rho.matrix()(idx, idx)) > tol) best = std::max(best, rho.basis().occupation(i).total());
    }
    return best;
}

} // namespace homdip
