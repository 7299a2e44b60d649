#include "homdip/verify.hpp"

#include "homdip/errors.hpp"
#include "homdip/settings.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace homdip {

namespace {
// Ordered filtered basis {|00⟩, |02⟩, |20⟩, |22⟩}.
constexpr std::array<Occupation, 4> kFilteredBasis{{{0, 0}, {0, 2}, {2, 0}, {2, 2}}};

constexpr double kBisectionTolerance = 1e-6;

void finish(CriterionReport &rep) {
    rep.entangled = criterion_verdict(rep.lhs, rep.rhs);
    rep.concurrence_lower_bound = std::max(0.0, 2.0 * std::sqrt(rep.rhs) - 2.0 * std::sqrt(rep.lhs));
}

CriterionReport from_counts(const CountDistribution &p, double q11, CriterionKind kind) {
    CriterionReport rep;
    rep.p0             = p(0, 0);
    rep.p02            = p(0, 2);
    rep.p20            = p(2, 0);
    rep.p22            = p(2, 2);
    rep.p11            = p(1, 1);
    rep.q11            = q11;
    rep.lhs            = rep.p0 * rep.p22;
    rep.criterion_kind = kind;
    return rep;
}
} // namespace

std::string_view to_string(CriterionKind kind) {
    switch(kind) {
        case CriterionKind::IdealD: return "IDEAL_D";
        case CriterionKind::Measured: return "MEASURED";
        case CriterionKind::Asymmetric: return "ASYMMETRIC";
        case CriterionKind::Conservative: return "CONSERVATIVE";
        case CriterionKind::ConservativeOffColor: return "CONSERVATIVE_OFF_COLOR";
    }
    return "UNKNOWN";
}

bool criterion_verdict(double lhs, double rhs) { return lhs < rhs - tolerances().verdict_margin; }

FilteredState filter_02(const DensityOperator &rho) {
    if(rho.basis().n_max() < 2) throw RangeError("filter_02 needs n_max >= 2");
    FilteredState fs;
    for(const Occupation &occ : kFilteredBasis) fs.p_tilde += rho.probability(occ.a, occ.b);
    fs.d = rho.coherence_d();
    if(fs.p_tilde <= 0.0) {
        fs.p_tilde = 0.0;
        return fs;
    }
    for(std::size_t i = 0; i < kFilteredBasis.size(); ++i)
        for(std::size_t j = 0; j < kFilteredBasis.size(); ++j)
            fs.matrix4(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rho.element(kFilteredBasis[i], kFilteredBasis[j]) / fs.p_tilde;
    return fs;
}

FilteredState number_twirl(const FilteredState &fs) {
    FilteredState out = fs;
    out.matrix4       = Matrix4::Zero();
    for(Eigen::Index i = 0; i < 4; ++i) out.matrix4(i, i) = fs.matrix4(i, i);
    // |02⟩ and |20⟩ are the only pair with equal total photon number.
    out.matrix4(1, 2) = fs.matrix4(1, 2);
    out.matrix4(2, 1) = fs.matrix4(2, 1);
    return out;
}

double concurrence_bound(const FilteredState &fs) {
    if(fs.empty()) return 0.0;
    const double p00 = fs.p_tilde * fs.matrix4(0, 0).real();
    const double p22 = fs.p_tilde * fs.matrix4(3, 3).real();
    const double d   = fs.p_tilde * std::abs(fs.matrix4(1, 2));
    return std::max(0.0, 2.0 * d - 2.0 * std::sqrt(std::max(0.0, p00 * p22)));
}

double filtered_concurrence(const FilteredState &fs) {
    if(fs.empty()) return 0.0;
    return concurrence_bound(fs) / fs.p_tilde;
}

double wootters_concurrence(const Matrix4 &rho) {
    const ValidityReport rep = validate_matrix(rho);
    if(!rep.ok()) throw ValidityError("wootters_concurrence: input is not a density matrix");

    Matrix4 yy = Matrix4::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    // λ_i are the singular values of √ρ·Y·√ρ*, i.e. the square roots of the
    // eigenvalues of √ρ ρ̃ √ρ without taking a second square root.
    Eigen::SelfAdjointEigenSolver<Matrix4> eig_rho((rho + rho.adjoint()) / 2.0);
    const Eigen::Vector4d vals  = eig_rho.eigenvalues();
    const double          floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, vals.maxCoeff());
    Eigen::Vector4d       root_vals;
    for(Eigen::Index i = 0; i < 4; ++i) root_vals(i) = vals(i) > floor ? std::sqrt(vals(i)) : 0.0;
    const Matrix4 root = eig_rho.eigenvectors() * root_vals.cast<Complex>().asDiagonal() * eig_rho.eigenvectors().adjoint();
    const Matrix4 m    = root * yy * root.conjugate();

    const Eigen::Vector4d sv = Eigen::JacobiSVD<Matrix4>(m).singularValues();
    std::array<double, 4> lambda{sv(0), sv(1), sv(2), sv(3)};
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double negativity(const Matrix4 &rho) {
    Matrix4 pt;
    for(int a = 0; a < 2; ++a)
        for(int b = 0; b < 2; ++b)
            for(int ap = 0; ap < 2; ++ap)
                for(int bp = 0; bp < 2; ++bp) pt(2 * a + b, 2 * ap + bp) = rho(2 * a + bp, 2 * ap + b);
    Eigen::SelfAdjointEigenSolver<Matrix4> eig((pt + pt.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    double neg = 0.0;
    for(Eigen::Index i = 0; i < 4; ++i) neg += std::max(0.0, -eig.eigenvalues()(i));
    return neg;
}

CriterionReport criterion_ideal_d(const DensityOperator &rho) {
    CriterionReport rep = from_counts(count_distribution(rho), 0.0, CriterionKind::IdealD);
    rep.rhs = std::norm(rho.coherence_d());
    finish(rep);
    return rep;
}

CriterionReport criterion_measured(const CountDistribution &p, const CountDistribution &q) {
    CriterionReport rep = from_counts(p, q(1, 1), CriterionKind::Measured);
    const double    x   = rep.q11 - (rep.p20 + rep.p02) / 2.0;
    rep.rhs             = x * x;
    finish(rep);
    return rep;
}

CriterionReport criterion_asymmetric(const CountDistribution &p, const CountDistribution &q, const BeamSplitterParams &params) {
    const double r = params.r();
    const double t = params.t();
    const double rt2 = 4.0 * r * r * t * t;
    if(rt2 <= 0.0) throw DegenerateBeamSplitterError("asymmetric criterion needs 0 < r < 1");
    CriterionReport rep = from_counts(p, q(1, 1), CriterionKind::Asymmetric);
    const double    imbalance = t * t - r * r;
    const double    x = (rep.q11 - imbalance * imbalance * rep.p11) / rt2 - (rep.p20 + rep.p02) / 2.0;
    rep.rhs        = x * x;
    rep.reflection = r;
    finish(rep);
    return rep;
}

PhaseScan scan_phase(const DensityOperator &rho, int n_points, PhaseConvention convention) {
    if(n_points < 8) throw std::invalid_argument("scan_phase needs at least 8 grid points");

    const CountDistribution  p        = count_distribution(rho);
    const BeamSplitterParams balanced = BeamSplitterParams::balanced();
    const double             p_same   = (p(2, 0) + p(0, 2)) / 2.0;

    // Signed quantity inside the square: Q_{1,1} − (P_{2,0}+P_{0,2})/2 = −Re(d·e^{−iφ}).
    auto signed_term = [&](double phi) {
        const CountDistribution q = q_distribution(phase_shift(rho, Port::A, phi, convention), balanced);
        return q(1, 1) - p_same;
    };

    PhaseScan scan;
    scan.lhs = p(0, 0) * p(2, 2);
    const double margin = tolerances().verdict_margin;
    auto excess = [&](double phi) {
        const double x = signed_term(phi);
        return x * x - scan.lhs - margin;
    };

    const double step = 2.0 * std::numbers::pi / n_points;
    std::vector<double> term(static_cast<std::size_t>(n_points));
    scan.phi.resize(term.size());
    scan.rhs.resize(term.size());
    scan.detected.resize(term.size());
    for(std::size_t i = 0; i < term.size(); ++i) {
        scan.phi[i]      = step * static_cast<double>(i);
        term[i]          = signed_term(scan.phi[i]);
        scan.rhs[i]      = term[i] * term[i];
        scan.detected[i] = criterion_verdict(scan.lhs, scan.rhs[i]);
    }

    std::size_t best_real = term.size();
    std::size_t best_q11  = 0;
    for(std::size_t i = 0; i < term.size(); ++i) {
        if(term[i] <= 0.0 && (best_real == term.size() || scan.rhs[i] > scan.rhs[best_real])) best_real = i;
        if(term[i] > term[best_q11]) best_q11 = i;
    }
    if(best_real == term.size()) best_real = static_cast<std::size_t>(std::distance(scan.rhs.begin(), std::max_element(scan.rhs.begin(), scan.rhs.end())));
    scan.phi_star    = scan.phi[best_real];
    scan.phi_q11_max = scan.phi[best_q11];

    // Crossing between φ_i and φ_i + step, located by bisection on the sign of `excess`.
    auto refine = [&](double lo, double hi, bool lo_detected) {
        while(hi - lo > kBisectionTolerance) {
            const double mid = 0.5 * (lo + hi);
            if((excess(mid) > 0.0) == lo_detected)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    const std::size_t n = term.size();
    const bool all_detected = std::all_of(scan.detected.begin(), scan.detected.end(), [](bool b) { return b; });
    if(all_detected) {
        scan.intervals.push_back({0.0, 2.0 * std::numbers::pi});
        return scan;
    }
    std::vector<double> rising;
    std::vector<double> falling;
    for(std::size_t i = 0; i < n; ++i) {
        const bool here = scan.detected[i];
        const bool next = scan.detected[(i + 1) % n];
        if(here == next) continue;
        const double crossing = refine(scan.phi[i], scan.phi[i] + step, here);
        (here ? falling : rising).push_back(crossing);
    }
    for(const double begin : rising) {
        auto   it  = std::upper_bound(falling.begin(), falling.end(), begin);
        double end = it != falling.end() ? *it : falling.front() + 2.0 * std::numbers::pi;
        scan.intervals.push_back({begin, end});
    }
    return scan;
}

} // namespace homdip
