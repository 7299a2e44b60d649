#include "commands.hpp"

#include "homdip/errors.hpp"
#include "homdip/io.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>

using namespace homdip;
using namespace homdip::cli;

namespace {

void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if(!out) throw InputError("cannot write " + path.string());
    out << content;
}

void add_state_option(CLI::App *cmd, RunConfig &config) {
    cmd->add_option("--state", config.state, "named state (hom, rho1, rho2, vacuum, worst2color) or JSON state file")
        ->capture_default_str();
}

void add_convention_option(CLI::App *cmd, RunConfig &config) {
    const std::map<std::string, PhaseConvention> conventions{{"per-photon", PhaseConvention::PerPhoton},
                                                             {"per-component", PhaseConvention::PerFockComponent}};
    cmd->add_option("--phase-convention", config.convention, "per-photon | per-component")
        ->transform(CLI::CheckedTransformer(conventions, CLI::ignore_case));
}

void add_common_output(CLI::App *cmd, RunConfig &config) {
    cmd->add_option("--out", config.out, "output path");
    cmd->add_flag("--reproducible", config.reproducible, "suppress timestamps in metadata");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Inverse Hong-Ou-Mandel entanglement verification"};
    app.require_subcommand(1);
    RunConfig config;

    auto *check = app.add_subcommand("check", "evaluate an entanglement criterion on a state");
    add_state_option(check, config);
    const std::map<std::string, CriterionChoice> criteria{{"ideal", CriterionChoice::Ideal},
                                                          {"measured", CriterionChoice::Measured},
                                                          {"asymmetric", CriterionChoice::Asymmetric},
                                                          {"conservative", CriterionChoice::Conservative}};
    check->add_option("--criterion", config.criterion, "ideal | measured | asymmetric | conservative")
        ->transform(CLI::CheckedTransformer(criteria, CLI::ignore_case));
    check->add_option("--r", config.r, "reflection coefficient for --criterion asymmetric")->capture_default_str();
    add_convention_option(check, config);
    add_common_output(check, config);

    auto *scan = app.add_subcommand("scan-phase", "sweep a phase on port A and report detection windows");
    add_state_option(scan, config);
    scan->add_option("--points", config.points, "grid size on [0, 2pi)")->capture_default_str();
    add_convention_option(scan, config);
    add_common_output(scan, config);

    auto *scatter = app.add_subcommand("scatter", "criterion values for random separable states");
    scatter->add_option("--samples", config.samples, "samples per family")->capture_default_str();
    scatter->add_option("--seed", config.seed, "PRNG seed")->capture_default_str();
    add_common_output(scatter, config);

    auto *identity = app.add_subcommand("identity-check", "numerical check of a1+ a2+ = [(a_+ +)^2 - (a_- +)^2]/2");
    identity->add_option("--modes", config.modes, "number of internal modes")->capture_default_str();
    identity->add_flag("--json", config.json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch(const CLI::ParseError &err) {
        const int code = app.exit(err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if(check->parsed()) {
            const std::string text = report_to_json(run_check(config)).dump(2) + "\n";
            if(config.out) write_file(*config.out, text);
            std::cout << text;
        } else if(scan->parsed()) {
            const PhaseScan   result  = run_scan_phase(config);
            const std::string csv     = scan_to_csv(result);
            const std::string summary = scan_summary_json(result).dump(2) + "\n";
            if(config.out) {
                write_file(*config.out, csv);
                std::cout << summary;
            } else {
                std::cout << csv;
                std::cerr << summary;
            }
        } else if(scatter->parsed()) {
            const std::string csv  = scatter_to_csv(run_scatter(config));
            const std::string meta = scatter_metadata(config).dump(2) + "\n";
            if(config.out) {
                write_file(*config.out, csv);
                write_file(config.out->string() + ".meta.json", meta);
            } else {
                std::cout << csv;
                std::cerr << meta;
            }
        } else if(identity->parsed()) {
            const double deviation = run_identity_check(config);
            if(config.json) {
                std::cout << nlohmann::json{{"deviation", deviation}}.dump() << "\n";
            } else {
                std::cout << "deviation = " << format_double(deviation) << "\n"
                          << "Two photons in orthogonal modes, a1+ a2+ |0>, equal the superposition\n"
                          << "[(a_+ +)^2 - (a_- +)^2]/2 |0> of two same-mode pairs, a_+- = (a1 +- a2)/sqrt2.\n"
                          << "No local measurement can therefore separate 'same mode' from 'different modes'.\n";
            }
        }
    } catch(const UsageError &err) {
        std::cerr << "usage error: " << err.what() << "\n";
        return kUsageError;
    } catch(const InputError &err) {
        std::cerr << "input error: " << err.what() << "\n";
        return kInputError;
    } catch(const ParseError &err) {
        std::cerr << "parse error: " << err.what() << "\n";
        return kInputError;
    } catch(const TruncationError &err) {
        std::cerr << "refused: " << err.what() << "\n";
        return kInputError;
    } catch(const RangeError &err) {
        std::cerr << "input error: " << err.what() << "\n";
        return kInputError;
    } catch(const std::exception &err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return kInvariantViolated;
    }
    return kSuccess;
}
