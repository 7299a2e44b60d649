#include "homdip/multimode.hpp"

#include "homdip/errors.hpp"
#include "homdip/settings.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace homdip {

namespace {
// All length-`slots` tuples of non-negative integers summing to `total`, in
// lexicographic order.
void compositions(int slots, int total, std::vector<int> &prefix, std::vector<std::vector<int>> &out) {
    if(slots == 1) {
        prefix.push_back(total);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for(int first = 0; first <= total; ++first) {
        prefix.push_back(first);
        compositions(slots - 1, total - first, prefix, out);
        prefix.pop_back();
    }
}

std::vector<int> mode_totals(const ModeOccupation &occ) {
    std::vector<int> totals(occ.a.size());
    for(std::size_t k = 0; k < occ.a.size(); ++k) totals[k] = occ.mode_total(k);
    return totals;
}

// True if every photon in the table sits in one internal mode.
bool single_internal_mode(const ModeOccupation &occ) {
    const auto totals = mode_totals(occ);
    return std::count_if(totals.begin(), totals.end(), [](int n) { return n > 0; }) <= 1;
}

CriterionReport conservative_report(const CountDistribution &p, const CountDistribution &q, double subtracted,
                                    CriterionKind kind) {
    CriterionReport rep;
    rep.p0             = p(0, 0);
    rep.p02            = p(0, 2);
    rep.p20            = p(2, 0);
    rep.p22            = p(2, 2);
    rep.p11            = p(1, 1);
    rep.q11            = q(1, 1);
    rep.lhs            = rep.p0 * rep.p22;
    const double x     = std::max(rep.q11 - subtracted, 0.0);
    rep.rhs            = x * x;
    rep.entangled      = criterion_verdict(rep.lhs, rep.rhs);
    rep.criterion_kind = kind;
    return rep;
}

Matrix parity_flip_a(const MultiModeBasis &basis) {
    Matrix flip = Matrix::Zero(basis.size(), basis.size());
    for(std::size_t i = 0; i < basis.dim(); ++i)
        flip(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = basis.occupation(i).total_a() % 2 == 0 ? 1.0 : -1.0;
    return flip;
}
} // namespace

int ModeOccupation::total_a() const { return std::accumulate(a.begin(), a.end(), 0); }
int ModeOccupation::total_b() const { return std::accumulate(b.begin(), b.end(), 0); }

MultiModeBasis::MultiModeBasis(int modes, int n_max_total) : modes_(modes), n_max_total_(n_max_total) {
    if(modes < 1) throw RangeError("MultiModeBasis: need at least one internal mode");
    if(n_max_total < 0) throw RangeError("MultiModeBasis: photon cap must be non-negative");
    const auto m = static_cast<std::size_t>(modes);
    for(int total = 0; total <= n_max_total; ++total) {
        std::vector<std::vector<int>> tuples;
        std::vector<int>              prefix;
        compositions(2 * modes, total, prefix, tuples);
        for(const auto &tuple : tuples) {
            ModeOccupation occ{{tuple.begin(), tuple.begin() + static_cast<std::ptrdiff_t>(m)},
                               {tuple.begin() + static_cast<std::ptrdiff_t>(m), tuple.end()}};
            lookup_.emplace(occ, elements_.size());
            elements_.push_back(std::move(occ));
        }
    }
}

std::optional<std::size_t> MultiModeBasis::find(const ModeOccupation &occ) const {
    const auto it = lookup_.find(occ);
    if(it == lookup_.end()) return std::nullopt;
    return it->second;
}

std::size_t MultiModeBasis::index(const ModeOccupation &occ) const {
    if(occ.a.size() != static_cast<std::size_t>(modes_) || occ.b.size() != static_cast<std::size_t>(modes_))
        throw RangeError("occupation table has the wrong number of internal modes");
    const auto found = find(occ);
    if(!found) throw RangeError("occupation table outside the multimode basis (total " + std::to_string(occ.total()) + ")");
    return *found;
}

ModeOccupation MultiModeBasis::vacuum() const {
    const auto m = static_cast<std::size_t>(modes_);
    return {std::vector<int>(m, 0), std::vector<int>(m, 0)};
}

MultiModeBasisPtr make_multimode_basis(int modes, int n_max_total) {
    return std::make_shared<const MultiModeBasis>(modes, n_max_total);
}

MultiModeDensity::MultiModeDensity(MultiModeBasisPtr basis, Matrix matrix) : basis_(std::move(basis)), matrix_(std::move(matrix)) {
    if(!basis_) throw std::invalid_argument("MultiModeDensity: null basis");
    if(matrix_.rows() != basis_->size() || matrix_.cols() != basis_->size())
        throw DimensionError("MultiModeDensity: matrix is " + std::to_string(matrix_.rows()) + "x" +
                             std::to_string(matrix_.cols()) + ", basis dimension " + std::to_string(basis_->dim()));
}

ValidityReport validate(const MultiModeDensity &rho) { return validate_matrix(rho.matrix()); }

Matrix mm_creation_matrix(const MultiModeBasis &basis, Port port, int mode) {
    if(mode < 0 || mode >= basis.modes()) throw RangeError("internal mode " + std::to_string(mode) + " out of range");
    const auto k = static_cast<std::size_t>(mode);
    Matrix     m = Matrix::Zero(basis.size(), basis.size());
    for(std::size_t col = 0; col < basis.dim(); ++col) {
        ModeOccupation occ = basis.occupation(col);
        if(occ.total() + 1 > basis.n_max_total()) continue;
        int &n = port == Port::A ? occ.a[k] : occ.b[k];
        const double factor = std::sqrt(static_cast<double>(n + 1));
        ++n;
        m(static_cast<Eigen::Index>(basis.index(occ)), static_cast<Eigen::Index>(col)) = factor;
    }
    return m;
}

MultiModeDensity embed_single_mode(const DensityOperator &rho, MultiModeBasisPtr basis, int mode) {
    if(!basis) throw std::invalid_argument("embed_single_mode: null basis");
    if(mode < 0 || mode >= basis->modes()) throw RangeError("internal mode " + std::to_string(mode) + " out of range");
    const TwoModeBasis &src = rho.basis();
    std::vector<std::optional<std::size_t>> target(src.dim());
    for(std::size_t i = 0; i < src.dim(); ++i) {
        const Occupation occ = src.occupation(i);
        ModeOccupation   mm  = basis->vacuum();
        mm.a[static_cast<std::size_t>(mode)] = occ.a;
        mm.b[static_cast<std::size_t>(mode)] = occ.b;
        target[i] = basis->find(mm);
    }
    const double tol = tolerances().validity;
    Matrix       out = Matrix::Zero(basis->size(), basis->size());
    for(std::size_t i = 0; i < src.dim(); ++i)
        for(std::size_t j = 0; j < src.dim(); ++j) {
            const Complex v = rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if(target[i] && target[j]) {
                out(static_cast<Eigen::Index>(*target[i]), static_cast<Eigen::Index>(*target[j])) = v;
            } else if(std::abs(v) > tol) {
                throw RangeError("embed_single_mode: state has weight above the multimode photon cap");
            }
        }
    return MultiModeDensity(std::move(basis), std::move(out));
}

Matrix mm_beamsplitter_unitary(const MultiModeBasis &basis, const BeamSplitterParams &params) {
    const auto m = static_cast<std::size_t>(basis.modes());
    Matrix     u = Matrix::Zero(basis.size(), basis.size());
    for(std::size_t col = 0; col < basis.dim(); ++col) {
        const ModeOccupation &in = basis.occupation(col);
        ModeOccupation        out{std::vector<int>(m, 0), std::vector<int>(m, 0)};
        // Internal modes transform independently; expand the tensor product mode by mode.
        std::function<void(std::size_t, double)> expand = [&](std::size_t k, double amp) {
            if(k == m) {
                u(static_cast<Eigen::Index>(basis.index(out)), static_cast<Eigen::Index>(col)) += amp;
                return;
            }
            const int n = in.mode_total(k);
            for(int c = 0; c <= n; ++c) {
                const double a = beamsplitter_amplitude(params, in.a[k], in.b[k], c);
                if(a == 0.0) continue;
                out.a[k] = c;
                out.b[k] = n - c;
                expand(k + 1, amp * a);
            }
        };
        expand(0, 1.0);
    }
    return u;
}

MultiModeDensity mm_beamsplitter(const MultiModeDensity &rho, const BeamSplitterParams &params) {
    const Matrix u = mm_beamsplitter_unitary(rho.basis(), params);
    return MultiModeDensity(rho.basis_ptr(), u * rho.matrix() * u.adjoint());
}

CountDistribution mm_count_distribution(const MultiModeDensity &rho) {
    const MultiModeBasis &basis = rho.basis();
    const int             n     = basis.n_max_total();
    Eigen::MatrixXd       table = Eigen::MatrixXd::Zero(n + 1, n + 1);
    for(std::size_t i = 0; i < basis.dim(); ++i) {
        const ModeOccupation &occ = basis.occupation(i);
        const auto            idx = static_cast<Eigen::Index>(i);
        table(occ.total_a(), occ.total_b()) += rho.matrix()(idx, idx).real();
    }
    return CountDistribution(std::move(table));
}

CountDistribution mm_q_distribution(const MultiModeDensity &rho, const BeamSplitterParams &params, bool phase_averaged) {
    const CountDistribution plain = mm_count_distribution(mm_beamsplitter(rho, params));
    if(!phase_averaged) return plain;
    const Matrix            flip = parity_flip_a(rho.basis());
    const MultiModeDensity  flipped(rho.basis_ptr(), flip * rho.matrix() * flip);
    const CountDistribution other = mm_count_distribution(mm_beamsplitter(flipped, params));
    return CountDistribution((plain.table() + other.table()) / 2.0);
}

double off_color_p11(const MultiModeDensity &rho) {
    const MultiModeBasis &basis = rho.basis();
    double                p     = 0.0;
    for(std::size_t i = 0; i < basis.dim(); ++i) {
        const ModeOccupation &occ = basis.occupation(i);
        if(occ.total_a() != 1 || occ.total_b() != 1) continue;
        const auto mode_a = std::find(occ.a.begin(), occ.a.end(), 1) - occ.a.begin();
        const auto mode_b = std::find(occ.b.begin(), occ.b.end(), 1) - occ.b.begin();
        if(mode_a != mode_b) p += rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    }
    return p;
}

CriterionReport criterion_conservative(const CountDistribution &p, const CountDistribution &q, double p2) {
    return conservative_report(p, q, p(1, 1) + p2 / 2.0, CriterionKind::Conservative);
}

CriterionReport criterion_conservative_off_color(const CountDistribution &p, const CountDistribution &q, double p_off11) {
    return conservative_report(p, q, (p(2, 0) + p(0, 2)) / 2.0 + 1.5 * p_off11, CriterionKind::ConservativeOffColor);
}

double mode_identity_check(const MultiModeBasis &basis, int mode_i, int mode_j, Complex relative_phase) {
    if(basis.modes() < 2) throw RangeError("mode_identity_check needs at least two internal modes");
    if(basis.n_max_total() < 2) throw RangeError("mode_identity_check needs room for two photons");
    if(mode_i == mode_j) throw RangeError("mode_identity_check needs two distinct modes");
    const Matrix ai = mm_creation_matrix(basis, Port::A, mode_i);
    const Matrix aj = mm_creation_matrix(basis, Port::A, mode_j);

    Vector vac = Vector::Zero(basis.size());
    vac(static_cast<Eigen::Index>(basis.index(basis.vacuum()))) = 1.0;

    const Matrix plus  = (ai + relative_phase * aj) / std::numbers::sqrt2;
    const Matrix minus = (ai - relative_phase * aj) / std::numbers::sqrt2;
    const Vector distinct = ai * (aj * vac);
    const Vector same     = 0.5 * (plus * (plus * vac) - minus * (minus * vac));
    return (distinct - same).norm();
}

MultiModeDensity DephaseSplit::reconstruct() const {
    const MultiModeBasisPtr &basis = rho_s ? rho_s->basis_ptr() : rho_perp->basis_ptr();
    Matrix                   out   = Matrix::Zero(basis->size(), basis->size());
    if(rho_s) out += p_s * rho_s->matrix();
    if(rho_perp) out += (1.0 - p_s) * rho_perp->matrix();
    return MultiModeDensity(basis, std::move(out));
}

DephaseSplit pairwise_dephase(const MultiModeDensity &rho) {
    const MultiModeBasis &basis = rho.basis();
    const Eigen::Index    dim   = basis.size();

    std::vector<std::vector<int>> totals(basis.dim());
    std::vector<bool>             same_mode(basis.dim());
    for(std::size_t i = 0; i < basis.dim(); ++i) {
        totals[i]    = mode_totals(basis.occupation(i));
        same_mode[i] = single_internal_mode(basis.occupation(i));
    }

    // Same-mode classification depends only on the per-mode totals, so the
    // dephased state is block diagonal between the two parts.
    Matrix s_part    = Matrix::Zero(dim, dim);
    Matrix perp_part = Matrix::Zero(dim, dim);
    for(Eigen::Index i = 0; i < dim; ++i)
        for(Eigen::Index j = 0; j < dim; ++j) {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            if(totals[ui] != totals[uj]) continue;
            (same_mode[ui] ? s_part : perp_part)(i, j) = rho.matrix()(i, j);
        }

    DephaseSplit split;
    const double w_s    = s_part.trace().real();
    const double w_perp = perp_part.trace().real();
    split.p_s           = w_s;
    if(w_s > 0.0) split.rho_s.emplace(rho.basis_ptr(), s_part / w_s);
    if(w_perp > 0.0) split.rho_perp.emplace(rho.basis_ptr(), perp_part / w_perp);
    if(!split.rho_s && !split.rho_perp) throw ValidityError("pairwise_dephase: state has zero trace");
    return split;
}

} // namespace homdip
