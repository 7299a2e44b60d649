#include "homdip/errors.hpp"
#include "homdip/multimode.hpp"
#include "homdip/states.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace homdip;

namespace {
const BeamSplitterParams kBalanced = BeamSplitterParams::balanced();

long binomial(int n, int k) {
    long r = 1;
    for(int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Eigen::Index at(const MultiModeBasis &basis, std::vector<int> a, std::vector<int> b) {
    return static_cast<Eigen::Index>(basis.index(ModeOccupation{std::move(a), std::move(b)}));
}

double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

// (|2,0> − |0,2>)/√2 in the red mode
Vector hom_red(const MultiModeBasis &basis) {
    Vector v = Vector::Zero(basis.size());
    v(at(basis, {0, 0}, {2, 0})) = 1.0 / std::sqrt(2.0);
    v(at(basis, {2, 0}, {0, 0})) = -1.0 / std::sqrt(2.0);
    return v;
}

// (a_r† + b_r†)(a_b† − b_b†)/2 |vac>
Vector two_color(const MultiModeBasis &basis) {
    Vector v = Vector::Zero(basis.size());
    v(at(basis, {1, 1}, {0, 0})) = 0.5;
    v(at(basis, {1, 0}, {0, 1})) = -0.5;
    v(at(basis, {0, 1}, {1, 0})) = 0.5;
    v(at(basis, {0, 0}, {1, 1})) = -0.5;
    return v;
}
} // namespace

TEST_CASE("MultiModeBasis") {
    for(int m = 1; m <= 3; ++m)
        for(int n = 0; n <= 4; ++n) {
            const MultiModeBasis basis(m, n);
            CHECK(static_cast<long>(basis.dim()) == binomial(n + 2 * m, 2 * m));
            std::set<ModeOccupation> seen;
            for(std::size_t i = 0; i < basis.dim(); ++i) {
                const ModeOccupation &occ = basis.occupation(i);
                CHECK(occ.total() <= n);
                CHECK(basis.index(occ) == i);
                seen.insert(occ);
                if(i > 0) CHECK(basis.occupation(i - 1).total() <= occ.total());
            }
            CHECK(seen.size() == basis.dim());
        }
    const MultiModeBasis basis(2, 2);
    CHECK(basis.index(basis.vacuum()) == 0);
    CHECK_THROWS_AS((void)basis.index(ModeOccupation{{2, 1}, {0, 0}}), RangeError);
    CHECK_THROWS_AS((void)basis.index(ModeOccupation{{1}, {0}}), RangeError);
    CHECK_FALSE(basis.find(ModeOccupation{{3, 0}, {0, 0}}).has_value());
}

TEST_CASE("mm_beamsplitter") {
    const auto basis = make_multimode_basis(2, 4);
    SUBCASE("unitary and mode preserving") {
        const Matrix u = mm_beamsplitter_unitary(*basis, BeamSplitterParams::from_reflection(0.3));
        CHECK(max_abs(u * u.adjoint() - Matrix::Identity(basis->size(), basis->size())) < 1e-12);
        for(Eigen::Index i = 0; i < u.rows(); ++i)
            for(Eigen::Index j = 0; j < u.cols(); ++j)
                if(std::abs(u(i, j)) > 1e-14)
                    for(std::size_t k = 0; k < 2; ++k)
                        CHECK(basis->occupation(static_cast<std::size_t>(i)).mode_total(k) ==
                              basis->occupation(static_cast<std::size_t>(j)).mode_total(k));
    }
    SUBCASE("single red photon") {
        const auto bs = BeamSplitterParams::from_reflection(0.6);
        Vector     v  = Vector::Zero(basis->size());
        v(at(*basis, {1, 0}, {0, 0})) = 1.0;
        const Vector out = mm_beamsplitter_unitary(*basis, bs) * v;
        CHECK(std::abs(out(at(*basis, {1, 0}, {0, 0})) - 0.6) < 1e-12);
        CHECK(std::abs(out(at(*basis, {0, 0}, {1, 0})) - 0.8) < 1e-12);
        CHECK(out.norm() == doctest::Approx(1.0));
    }
    SUBCASE("two-color state exits as red in C and blue in D") {
        const Vector out = mm_beamsplitter_unitary(*basis, kBalanced) * two_color(*basis);
        CHECK(std::norm(out(at(*basis, {1, 0}, {0, 1}))) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("same-color pair shows inverse HOM") {
        const Vector out = mm_beamsplitter_unitary(*basis, kBalanced) * hom_red(*basis);
        CHECK(std::norm(out(at(*basis, {1, 0}, {1, 0}))) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("color-blind counts of the two-color state") {
    const MultiModeDensity  rho = worst_case_two_color();
    const CountDistribution p   = mm_count_distribution(rho);
    const CountDistribution q   = mm_q_distribution(rho, kBalanced);
    CHECK(std::abs(p(1, 1) - 0.5) < 1e-12);
    CHECK(std::abs(p(2, 0) - 0.25) < 1e-12);
    CHECK(std::abs(p(0, 2) - 0.25) < 1e-12);
    CHECK(std::abs(q(1, 1) - 1.0) < 1e-12);
    CHECK(std::abs(off_color_p11(rho) - 0.5) < 1e-12);
    CHECK(std::abs(q(1, 1) - (p(2, 0) + p(0, 2)) / 2 - 1.5 * off_color_p11(rho)) < 1e-12);
    CHECK(p.n_max() == 4);

    Matrix       m   = Matrix::Zero(rho.basis().size(), rho.basis().size());
    m(0, 0)          = 0.5;
    m += 0.5 * rho.matrix();
    const MultiModeDensity mix(rho.basis_ptr(), m);
    CHECK(std::abs(off_color_p11(mix) - 0.25) < 1e-12);
    CHECK(mm_count_distribution(mix)(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("off_color_p11 vanishes on single-color states") {
    const auto basis = make_multimode_basis(2, 4);
    for(int mode : {0, 1}) {
        CHECK(off_color_p11(embed_single_mode(rho1(), basis, mode)) == 0.0);
        CHECK(off_color_p11(embed_single_mode(pure_to_density(hom_state()), basis, mode)) == 0.0);
    }
}

TEST_CASE("single internal mode reproduces the two-mode results") {
    const auto basis = make_multimode_basis(1, 4);
    Rng        rng(7);
    for(int i = 0; i < 100; ++i) {
        const DensityOperator  rho = random_density(rng, 1 + i % 4);
        const MultiModeDensity mm  = embed_single_mode(rho, basis);
        const auto             bs  = BeamSplitterParams::from_reflection(0.1 + 0.8 * uniform01(rng));
        CHECK(max_abs(mm_count_distribution(mm).table() - count_distribution(rho).table()) < 1e-12);
        CHECK(max_abs(mm_q_distribution(mm, bs).table() - q_distribution(rho, bs).table()) < 1e-12);
        CHECK(max_abs(mm_q_distribution(mm, bs, true).table() - q_distribution_phase_averaged(rho, bs).table()) <
              1e-12);
        const CriterionReport a =
            criterion_measured(mm_count_distribution(mm), mm_q_distribution(mm, kBalanced));
        const CriterionReport b = criterion_measured(count_distribution(rho), q_distribution(rho, kBalanced));
        CHECK(std::abs(a.rhs - b.rhs) < 1e-12);
        CHECK(a.entangled == b.entangled);
        CHECK(off_color_p11(mm) == 0.0);
    }
    CHECK_THROWS_AS((void)embed_single_mode(pure_to_density(hom_state()), make_multimode_basis(1, 1)), RangeError);
}

TEST_CASE("criterion_conservative") {
    SUBCASE("two-color state is not flagged") {
        const MultiModeDensity  rho = worst_case_two_color();
        const CountDistribution p   = mm_count_distribution(rho);
        const CriterionReport   rep =
            criterion_conservative(p, mm_q_distribution(rho, kBalanced), p.two_photon_probability());
        CHECK(std::abs(p.two_photon_probability() - 1.0) < 1e-12);
        CHECK(rep.rhs == 0.0);
        CHECK_FALSE(rep.entangled);
        CHECK(rep.criterion_kind == CriterionKind::Conservative);
    }
    SUBCASE("ideal state is still detected") {
        const DensityOperator rho = pure_to_density(hom_state());
        const CriterionReport rep = criterion_conservative(count_distribution(rho), q_distribution(rho, kBalanced), 1.0);
        CHECK(rep.rhs == doctest::Approx(0.25));
        CHECK(rep.entangled);
    }
    SUBCASE("vacuum") {
        const CountDistribution p   = count_distribution(vacuum_state());
        const CriterionReport   rep = criterion_conservative(p, q_distribution(vacuum_state(), kBalanced), 0.0);
        CHECK(rep.rhs == 0.0);
        CHECK_FALSE(rep.entangled);
    }
}

TEST_CASE("conservative forms coincide and never exceed the measured rhs") {
    const auto basis = make_multimode_basis(2, 4);
    Rng        rng(17);
    for(int i = 0; i < 500; ++i) {
        const MultiModeDensity  rho   = random_multimode_density(rng, basis, 1 + i % 3, 2 + i % 3);
        const CountDistribution p     = mm_count_distribution(rho);
        const CountDistribution q     = mm_q_distribution(rho, kBalanced);
        const CriterionReport   cons  = criterion_conservative(p, q, p.two_photon_probability());
        const CriterionReport   offc  = criterion_conservative_off_color(p, q, p(1, 1));
        const CriterionReport   meas  = criterion_measured(p, q);
        CHECK(std::abs(cons.rhs - offc.rhs) < 1e-12);
        CHECK(cons.rhs <= meas.rhs + 1e-12);
        if(cons.entangled) CHECK(meas.entangled);
        // the off-color weight is never larger than the full P11
        CHECK(off_color_p11(rho) <= p(1, 1) + 1e-12);
        const CriterionReport strict = criterion_conservative_off_color(p, q, off_color_p11(rho));
        CHECK(cons.rhs <= strict.rhs + 1e-12);
    }
}

TEST_CASE("mode_identity_check") {
    CHECK(mode_identity_check(MultiModeBasis(2, 2)) < 1e-12);
    CHECK(mode_identity_check(MultiModeBasis(2, 4)) < 1e-12);
    CHECK(mode_identity_check(MultiModeBasis(3, 2), 0, 2) < 1e-12);
    CHECK(mode_identity_check(MultiModeBasis(3, 2), 1, 2) < 1e-12);
    CHECK(mode_identity_check(MultiModeBasis(2, 2), 0, 1, Complex{0.0, 1.0}) > 0.5);
    CHECK_THROWS_AS((void)mode_identity_check(MultiModeBasis(1, 2)), RangeError);
    CHECK_THROWS_AS((void)mode_identity_check(MultiModeBasis(2, 1)), RangeError);
    CHECK_THROWS_AS((void)mode_identity_check(MultiModeBasis(2, 2), 1, 1), RangeError);
}

TEST_CASE("pairwise_dephase examples") {
    const auto basis = make_multimode_basis(2, 4);
    SUBCASE("single-color state is kept whole") {
        const MultiModeDensity emb   = embed_single_mode(rho1(), basis);
        const DephaseSplit     split = pairwise_dephase(emb);
        CHECK(split.p_s == doctest::Approx(1.0));
        REQUIRE(split.rho_s);
        CHECK_FALSE(split.rho_perp);
        CHECK(max_abs(split.rho_s->matrix() - emb.matrix()) < 1e-12);
    }
    SUBCASE("superposition of a red pair and the two-color state") {
        const Vector           v = (hom_red(*basis) + two_color(*basis)) / std::sqrt(2.0);
        const MultiModeDensity rho(basis, v * v.adjoint());
        const DephaseSplit     split = pairwise_dephase(rho);
        CHECK(split.p_s == doctest::Approx(0.5));
        REQUIRE(split.rho_s);
        REQUIRE(split.rho_perp);
        const Vector red = hom_red(*basis);
        CHECK(max_abs(split.rho_s->matrix() - red * red.adjoint()) < 1e-12);
        const Vector tc = two_color(*basis);
        CHECK(max_abs(split.rho_perp->matrix() - tc * tc.adjoint()) < 1e-12);
        // cross coherence is gone
        CHECK(std::abs(split.reconstruct().matrix()(at(*basis, {2, 0}, {0, 0}), at(*basis, {1, 1}, {0, 0}))) == 0.0);
    }
    SUBCASE("two-color state has no same-mode part") {
        const DephaseSplit split = pairwise_dephase(worst_case_two_color());
        CHECK(split.p_s == 0.0);
        CHECK_FALSE(split.rho_s);
        REQUIRE(split.rho_perp);
    }
}

TEST_CASE("pairwise_dephase properties") {
    const auto basis = make_multimode_basis(2, 4);
    Rng        rng(23);
    for(int i = 0; i < 100; ++i) {
        const MultiModeDensity rho   = random_multimode_density(rng, basis, 1 + i % 4, 4);
        const DephaseSplit     split = pairwise_dephase(rho);
        const MultiModeDensity rec   = split.reconstruct();
        double                 trace = 0.0;
        if(split.rho_s) trace += split.p_s * split.rho_s->matrix().trace().real();
        if(split.rho_perp) trace += (1 - split.p_s) * split.rho_perp->matrix().trace().real();
        CHECK(std::abs(trace - 1.0) < 1e-10);
        CHECK(validate(rec).ok());

        const DephaseSplit again = pairwise_dephase(rec);
        CHECK(std::abs(again.p_s - split.p_s) < 1e-12);
        CHECK(max_abs(again.reconstruct().matrix() - rec.matrix()) < 1e-12);
        if(split.rho_s) CHECK(max_abs(again.rho_s->matrix() - split.rho_s->matrix()) < 1e-12);
        if(split.rho_perp) CHECK(max_abs(again.rho_perp->matrix() - split.rho_perp->matrix()) < 1e-12);

        // dephasing never touches populations
        CHECK(max_abs(rec.matrix().diagonal() - rho.matrix().diagonal()) < 1e-15);
    }
}
