#include "homdip/states.hpp"

#include "homdip/errors.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace homdip {

namespace {
constexpr Complex kI{0.0, 1.0};

void set(Matrix &m, const TwoModeBasis &basis, Occupation row, Occupation col, Complex value) {
    m(static_cast<Eigen::Index>(basis.index(row)), static_cast<Eigen::Index>(basis.index(col))) += value;
}

void require_n_max(int n_max, int needed, const char *what) {
    if(n_max < needed) throw RangeError(std::string(what) + " needs n_max >= " + std::to_string(needed));
}

// c₀|00⟩⟨00| + w·(|20⟩ + i|02⟩)(⟨20| − i⟨02|)/2 + c₄|22⟩⟨22|
DensityOperator phase_rotated_mixture(double p_vacuum, double p_coherent, double p_four, int n_max) {
    require_n_max(n_max, 2, "named state");
    const TwoModeBasis basis(n_max);
    Matrix             m = Matrix::Zero(basis.size(), basis.size());
    set(m, basis, {0, 0}, {0, 0}, p_vacuum);
    set(m, basis, {2, 2}, {2, 2}, p_four);
    const double w = p_coherent / 2.0; // |20⟩ + i|02⟩ has squared norm 2
    set(m, basis, {2, 0}, {2, 0}, w);
    set(m, basis, {0, 2}, {0, 2}, w);
    set(m, basis, {0, 2}, {2, 0}, kI * w);
    set(m, basis, {2, 0}, {0, 2}, -kI * w);
    return DensityOperator(basis, std::move(m));
}

Complex random_coefficient(Rng &rng) {
    const double modulus = kMixtureModulusMax * uniform01(rng);
    const double phase   = 2.0 * std::numbers::pi * uniform01(rng);
    return std::polar(modulus, phase);
}

Complex complex_normal(Rng &rng) { return {standard_normal(rng), standard_normal(rng)}; }
} // namespace

PureState hom_state(int n_max) {
    require_n_max(n_max, 2, "hom_state");
    const TwoModeBasis basis(n_max);
    Vector             amps = Vector::Zero(basis.size());
    amps(static_cast<Eigen::Index>(basis.index(0, 2))) = 1.0 / std::numbers::sqrt2;
    amps(static_cast<Eigen::Index>(basis.index(2, 0))) = -1.0 / std::numbers::sqrt2;
    return PureState(basis, std::move(amps));
}

DensityOperator rho1(int n_max) { return phase_rotated_mixture(1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0, n_max); }
DensityOperator rho2(int n_max) { return phase_rotated_mixture(1.0 / 3.0, 1.0 / 2.0, 1.0 / 6.0, n_max); }

DensityOperator vacuum_state(int n_max) {
    const TwoModeBasis basis(n_max);
    Matrix             m = Matrix::Zero(basis.size(), basis.size());
    m(0, 0)              = 1.0;
    return DensityOperator(basis, std::move(m));
}

DensityOperator noisy_hom(const NoiseSpec &spec, int n_max) {
    require_n_max(n_max, 2, "noisy_hom");
    if(spec.p_vacuum < 0.0 || spec.p_four < 0.0 || spec.p_vacuum + spec.p_four > 1.0)
        throw std::invalid_argument("noisy_hom: contamination weights must be non-negative and sum to at most 1");
    if(spec.dephase < 0.0 || spec.dephase > 1.0) throw std::invalid_argument("noisy_hom: dephase must lie in [0,1]");

    const TwoModeBasis basis(n_max);
    const double       w = 1.0 - spec.p_vacuum - spec.p_four;
    const Complex      d = -0.5 * spec.dephase * std::polar(1.0, spec.phase);
    Matrix             m = Matrix::Zero(basis.size(), basis.size());
    set(m, basis, {0, 0}, {0, 0}, spec.p_vacuum);
    set(m, basis, {2, 2}, {2, 2}, spec.p_four);
    set(m, basis, {0, 2}, {0, 2}, w / 2.0);
    set(m, basis, {2, 0}, {2, 0}, w / 2.0);
    set(m, basis, {0, 2}, {2, 0}, w * d);
    set(m, basis, {2, 0}, {0, 2}, w * std::conj(d));
    return DensityOperator(basis, std::move(m));
}

Rng derive_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(index), hi(index)};
    return Rng(seq);
}

double uniform01(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double standard_normal(Rng &rng) {
    // Box-Muller; 1 − u keeps the logarithm finite.
    const double u = 1.0 - uniform01(rng);
    const double v = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

PureState separable_boundary_state(double a, double b, int n_max) {
    return separable_product_state({0.0, a}, {0.0, b}, n_max);
}

PureState random_separable_boundary(Rng &rng, int n_max) {
    const double a = kBoundaryCoefficientMax * uniform01(rng);
    const double b = kBoundaryCoefficientMax * uniform01(rng);
    return separable_boundary_state(a, b, n_max);
}

PureState separable_product_state(const std::array<Complex, 2> &alpha, const std::array<Complex, 2> &beta, int n_max) {
    require_n_max(n_max, 2, "separable_product_state");
    const TwoModeBasis           basis(n_max);
    const std::array<Complex, 3> fa{1.0, alpha[0], alpha[1]};
    const std::array<Complex, 3> fb{1.0, beta[0], beta[1]};
    Vector                       amps = Vector::Zero(basis.size());
    for(int i = 0; i < 3; ++i)
        for(int j = 0; j < 3; ++j)
            amps(static_cast<Eigen::Index>(basis.index(i, j))) = fa[static_cast<std::size_t>(i)] * fb[static_cast<std::size_t>(j)];
    return PureState(basis, std::move(amps)).normalized();
}

DensityOperator random_separable_mixture(Rng &rng, int n_max) {
    auto draw = [&] {
        const std::array<Complex, 2> alpha{random_coefficient(rng), random_coefficient(rng)};
        const std::array<Complex, 2> beta{random_coefficient(rng), random_coefficient(rng)};
        return pure_to_density(separable_product_state(alpha, beta, n_max));
    };
    const DensityOperator first  = draw();
    const DensityOperator second = draw();
    const double          w      = uniform01(rng);
    return DensityOperator(first.basis(), w * first.matrix() + (1.0 - w) * second.matrix());
}

DensityOperator random_density(Rng &rng, int rank, int max_per_port, int n_max) {
    if(rank < 1) throw std::invalid_argument("random_density: rank must be positive");
    if(max_per_port < 0 || max_per_port > n_max) throw RangeError("random_density: support exceeds the basis");
    const TwoModeBasis basis(n_max);
    Matrix             g = Matrix::Zero(basis.size(), rank);
    for(int na = 0; na <= max_per_port; ++na)
        for(int nb = 0; nb <= max_per_port; ++nb)
            for(Eigen::Index c = 0; c < rank; ++c) g(static_cast<Eigen::Index>(basis.index(na, nb)), c) = complex_normal(rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityOperator(basis, std::move(rho));
}

MultiModeDensity random_multimode_density(Rng &rng, const MultiModeBasisPtr &basis, int rank, int max_total) {
    if(rank < 1) throw std::invalid_argument("random_multimode_density: rank must be positive");
    Matrix g = Matrix::Zero(basis->size(), rank);
    for(std::size_t i = 0; i < basis->dim(); ++i) {
        if(basis->occupation(i).total() > max_total) continue;
        for(Eigen::Index c = 0; c < rank; ++c) g(static_cast<Eigen::Index>(i), c) = complex_normal(rng);
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return MultiModeDensity(basis, std::move(rho));
}

MultiModeDensity worst_case_two_color(int n_max_total) {
    if(n_max_total < 2) throw RangeError("worst_case_two_color needs room for two photons");
    auto basis = make_multimode_basis(2, n_max_total);
    // (a_r† + b_r†)(a_b† − b_b†)/2 |vac⟩
    auto ket = [&](int red_a, int red_b, int blue_a, int blue_b) {
        return static_cast<Eigen::Index>(basis->index({{red_a, blue_a}, {red_b, blue_b}}));
    };
    Vector psi = Vector::Zero(basis->size());
    psi(ket(1, 0, 1, 0)) = 0.5;
    psi(ket(1, 0, 0, 1)) = -0.5;
    psi(ket(0, 1, 1, 0)) = 0.5;
    psi(ket(0, 1, 0, 1)) = -0.5;
    return MultiModeDensity(basis, psi * psi.adjoint());
}

bool is_named_state(std::string_view id) {
    return id == "hom" || id == "rho1" || id == "rho2" || id == "vacuum" || id == "worst2color";
}

AnyState named_state(std::string_view id) {
    if(id == "hom") return pure_to_density(hom_state());
    if(id == "rho1") return rho1();
    if(id == "rho2") return rho2();
    if(id == "vacuum") return vacuum_state();
    if(id == "worst2color") return worst_case_two_color();
    throw std::invalid_argument("unknown state id '" + std::string(id) + "'");
}

} // namespace homdip
