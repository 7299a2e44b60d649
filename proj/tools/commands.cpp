#include "commands.hpp"

#include "homdip/errors.hpp"
#include "homdip/multimode.hpp"

#include <chrono>
#include <fmt/format.h>

namespace homdip::cli {

namespace {

void require_valid(const ValidityReport &rep, const std::string &source) {
    if(rep.ok()) return;
    throw InputError(fmt::format("state '{}' is not a density operator (hermiticity deviation {:.3g}, trace deviation {:.3g}, "
                                 "min eigenvalue {:.3g})",
                                 source, rep.hermiticity_deviation, rep.trace_deviation, rep.min_eigenvalue));
}

BeamSplitterParams reflection_params(double r) {
    if(!(r > 0.0 && r < 1.0)) throw UsageError("--r must lie strictly between 0 and 1");
    return BeamSplitterParams::from_reflection(r);
}

CriterionReport check_single_mode(const DensityOperator &rho, const RunConfig &config) {
    const CountDistribution p = count_distribution(rho);
    switch(config.criterion) {
        case CriterionChoice::Ideal: return criterion_ideal_d(rho);
        case CriterionChoice::Measured: return criterion_measured(p, q_distribution(rho, BeamSplitterParams::balanced()));
        case CriterionChoice::Asymmetric: {
            const BeamSplitterParams params = reflection_params(config.r);
            return criterion_asymmetric(p, q_distribution_phase_averaged(rho, params), params);
        }
        case CriterionChoice::Conservative:
            return criterion_conservative(p, q_distribution(rho, BeamSplitterParams::balanced()), p.two_photon_probability());
    }
    throw UsageError("unknown criterion");
}

CriterionReport check_multimode(const MultiModeDensity &rho, const RunConfig &config) {
    const CountDistribution p = mm_count_distribution(rho);
    switch(config.criterion) {
        case CriterionChoice::Ideal:
            throw InputError("the ideal-d criterion needs a single-mode state; use --criterion conservative");
        case CriterionChoice::Measured: return criterion_measured(p, mm_q_distribution(rho, BeamSplitterParams::balanced()));
        case CriterionChoice::Asymmetric: {
            const BeamSplitterParams params = reflection_params(config.r);
            return criterion_asymmetric(p, mm_q_distribution(rho, params, true), params);
        }
        case CriterionChoice::Conservative:
            return criterion_conservative(p, mm_q_distribution(rho, BeamSplitterParams::balanced()), p.two_photon_probability());
    }
    throw UsageError("unknown criterion");
}

} // namespace

AnyState resolve_state(const std::string &source) {
    if(is_named_state(source)) return named_state(source);
    if(!std::filesystem::exists(source))
        throw InputError("'" + source + "' is neither a named state (hom, rho1, rho2, vacuum, worst2color) nor a file");
    return load_state_file(source);
}

CriterionReport run_check(const RunConfig &config) {
    const AnyState state = resolve_state(config.state);
    if(const auto *rho = std::get_if<DensityOperator>(&state)) {
        require_valid(validate(*rho), config.state);
        return check_single_mode(*rho, config);
    }
    const auto &mm = std::get<MultiModeDensity>(state);
    require_valid(validate(mm), config.state);
    return check_multimode(mm, config);
}

PhaseScan run_scan_phase(const RunConfig &config) {
    if(config.points < 8) throw UsageError("--points must be at least 8");
    const AnyState state = resolve_state(config.state);
    const auto    *rho   = std::get_if<DensityOperator>(&state);
    if(rho == nullptr) throw InputError("scan-phase needs a single-mode state");
    require_valid(validate(*rho), config.state);
    return scan_phase(*rho, config.points, config.convention);
}

std::vector<ScatterRow> run_scatter(const RunConfig &config) {
    if(config.samples < 0) throw UsageError("--samples must be non-negative");
    const auto               n        = static_cast<std::uint64_t>(config.samples);
    const BeamSplitterParams balanced = BeamSplitterParams::balanced();
    std::vector<ScatterRow>  rows;
    rows.reserve(2 * n);
    auto evaluate = [&](const DensityOperator &rho, const char *family) {
        const CriterionReport rep = criterion_measured(count_distribution(rho), q_distribution(rho, balanced));
        rows.push_back({rep.lhs, rep.rhs, family});
    };
    for(std::uint64_t i = 0; i < n; ++i) {
        Rng rng = derive_rng(config.seed, 0, i);
        evaluate(pure_to_density(random_separable_boundary(rng)), "boundary");
    }
    for(std::uint64_t i = 0; i < n; ++i) {
        Rng rng = derive_rng(config.seed, 1, i);
        evaluate(random_separable_mixture(rng), "mixture");
    }
    return rows;
}

std::string scatter_to_csv(const std::vector<ScatterRow> &rows) {
    std::string out = "lhs,rhs,family\n";
    for(const ScatterRow &row : rows) out += fmt::format("{},{},{}\n", format_double(row.lhs), format_double(row.rhs), row.family);
    return out;
}

nlohmann::json scatter_metadata(const RunConfig &config) {
    nlohmann::json meta{
        {"seed", config.seed},
        {"samples_per_family", config.samples},
        {"prng", std::string(kPrngId)},
        {"boundary_family", {{"form", "(|0>+a|2>)(|0>+b|2>)"}, {"a_b_range", {0.0, kBoundaryCoefficientMax}}}},
        {"mixture_family",
         {{"form", "w*P1 + (1-w)*P2, Pk=(|0>+a1|1>+a2|2>)(|0>+b1|1>+b2|2>)"},
          {"modulus_range", {0.0, kMixtureModulusMax}},
          {"phase_range", {0.0, 2.0 * std::numbers::pi}},
          {"weight_range", {0.0, 1.0}}}},
        {"criterion", "P00*P22 < (Q11 - (P20+P02)/2)^2, balanced splitter"},
    };
    if(!config.reproducible) {
        const auto now = std::chrono::system_clock::now().time_since_epoch();
        meta["timestamp_unix"] = std::chrono::duration_cast<std::chrono::seconds>(now).count();
    }
    return meta;
}

double run_identity_check(const RunConfig &config) {
    if(config.modes < 2) throw UsageError("--modes must be at least 2");
    const MultiModeBasis basis(config.modes, 2);
    return mode_identity_check(basis, 0, config.modes - 1);
}

} // namespace homdip::cli
