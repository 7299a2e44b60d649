#include "homdip/optics.hpp"

#include "homdip/errors.hpp"
#include "homdip/settings.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace homdip {

namespace {
constexpr double kParamTolerance = 1e-12;
constexpr double kClipTolerance  = 1e-12;

double binomial(int n, int k) {
    if(k < 0 || k > n) return 0.0;
    double c = 1.0;
    for(int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    return c;
}

double factorial(int n) {
    double f = 1.0;
    for(int i = 2; i <= n; ++i) f *= static_cast<double>(i);
    return f;
}

double int_pow(double x, int n) {
    double p = 1.0;
    for(int i = 0; i < n; ++i) p *= x;
    return p;
}

Eigen::VectorXcd port_phases(const TwoModeBasis &basis, Port port, double per_photon) {
    Eigen::VectorXcd phases(basis.size());
    for(std::size_t i = 0; i < basis.dim(); ++i) {
        const Occupation occ = basis.occupation(i);
        const int        n   = port == Port::A ? occ.a : occ.b;
        phases(static_cast<Eigen::Index>(i)) = std::polar(1.0, per_photon * n);
    }
    return phases;
}
} // namespace

BeamSplitterParams::BeamSplitterParams(double r, double t) : r_(r), t_(t) {
    if(!(r >= 0.0 && r <= 1.0 && t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("beamsplitter coefficients must lie in [0,1]");
    if(std::abs(r * r + t * t - 1.0) > kParamTolerance)
        throw std::invalid_argument("beamsplitter coefficients violate r^2 + t^2 = 1");
}

BeamSplitterParams BeamSplitterParams::balanced() {
    return {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
}

BeamSplitterParams BeamSplitterParams::from_reflection(double r) {
    if(!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("reflection coefficient must lie in [0,1]");
    return {r, std::sqrt(1.0 - r * r)};
}

CountDistribution::CountDistribution(Eigen::MatrixXd table) : table_(std::move(table)) {
    if(table_.rows() != table_.cols() || table_.rows() == 0) throw DimensionError("count table must be square and non-empty");
    for(Eigen::Index i = 0; i < table_.rows(); ++i)
        for(Eigen::Index j = 0; j < table_.cols(); ++j) {
            double &p = table_(i, j);
            if(p < -kClipTolerance)
                throw ValidityError("negative count probability " + std::to_string(p) + " at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
            if(p < 0.0) p = 0.0;
        }
    const double total = table_.sum();
    if(total != 1.0 && std::abs(total - 1.0) <= tolerances().validity) table_ /= total;
}

double CountDistribution::operator()(int i, int j) const {
    if(i < 0 || j < 0 || i > n_max() || j > n_max()) return 0.0;
    return table_(i, j);
}

double CountDistribution::two_photon_probability() const { return (*this)(2, 0) + (*this)(1, 1) + (*this)(0, 2); }

double beamsplitter_amplitude(const BeamSplitterParams &params, int n_a, int n_b, int k) {
    const int n = n_a + n_b;
    if(k < 0 || k > n) return 0.0;
    const double r = params.r();
    const double t = params.t();
    // Coefficient of c†^k d†^(n−k) in (r c† + t d†)^n_a (t c† − r d†)^n_b.
    double coeff = 0.0;
    for(int i = std::max(0, k - n_b); i <= std::min(n_a, k); ++i) {
        const int j    = k - i;
        double    term = binomial(n_a, i) * int_pow(r, i) * int_pow(t, n_a - i);
        term *= binomial(n_b, j) * int_pow(t, j) * int_pow(r, n_b - j);
        if((n_b - j) % 2 != 0) term = -term;
        coeff += term;
    }
    return coeff * std::sqrt(factorial(k) * factorial(n - k) / (factorial(n_a) * factorial(n_b)));
}

Matrix beamsplitter_unitary(const TwoModeBasis &basis, const BeamSplitterParams &params) {
    const int n_max = basis.n_max();
    Matrix    u     = Matrix::Zero(basis.size(), basis.size());
    for(std::size_t col = 0; col < basis.dim(); ++col) {
        const Occupation in  = basis.occupation(col);
        const auto       c   = static_cast<Eigen::Index>(col);
        const int        tot = in.total();
        if(tot > n_max) {
            u(c, c) = 1.0;
            continue;
        }
        for(int k = 0; k <= tot; ++k) u(static_cast<Eigen::Index>(basis.index(k, tot - k)), c) = beamsplitter_amplitude(params, in.a, in.b, k);
    }
    return u;
}

DensityOperator apply_unitary(const DensityOperator &rho, const Matrix &u) {
    if(u.rows() != rho.matrix().rows() || u.cols() != rho.matrix().cols())
        throw DimensionError("apply_unitary: operator is " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                             ", state dimension " + std::to_string(rho.basis().dim()));
    return DensityOperator(rho.basis(), u * rho.matrix() * u.adjoint());
}

DensityOperator phase_shift(const DensityOperator &rho, Port port, double phi, PhaseConvention convention) {
    const double           per_photon = convention == PhaseConvention::PerPhoton ? phi : phi / 2.0;
    const Eigen::VectorXcd phases     = port_phases(rho.basis(), port, per_photon);
    Matrix                 out        = phases.asDiagonal() * rho.matrix() * phases.conjugate().asDiagonal();
    return DensityOperator(rho.basis(), std::move(out));
}

CountDistribution count_distribution(const DensityOperator &rho) {
    const TwoModeBasis &basis = rho.basis();
    Eigen::MatrixXd     table = Eigen::MatrixXd::Zero(basis.n_max() + 1, basis.n_max() + 1);
    for(std::size_t i = 0; i < basis.dim(); ++i) {
        const Occupation occ = basis.occupation(i);
        const auto       idx = static_cast<Eigen::Index>(i);
        table(occ.a, occ.b) = rho.matrix()(idx, idx).real();
    }
    return CountDistribution(std::move(table));
}

bool truncation_safe(const DensityOperator &rho) { return max_total_photons(rho) <= rho.basis().n_max(); }

CountDistribution q_distribution(const DensityOperator &rho, const BeamSplitterParams &params) {
    if(!truncation_safe(rho))
        throw TruncationError("state carries " + std::to_string(max_total_photons(rho)) +
                              " photons in total but the basis keeps only " + std::to_string(rho.basis().n_max()) +
                              " per port; beamsplitter output would be truncated (raise n_max)");
    return count_distribution(apply_unitary(rho, beamsplitter_unitary(rho.basis(), params)));
}

CountDistribution q_distribution_phase_averaged(const DensityOperator &rho, const BeamSplitterParams &params) {
    const CountDistribution plain   = q_distribution(rho, params);
    const CountDistribution flipped = q_distribution(phase_shift(rho, Port::A, std::numbers::pi, PhaseConvention::PerPhoton), params);
    return CountDistribution((plain.table() + flipped.table()) / 2.0);
}

} // namespace homdip
