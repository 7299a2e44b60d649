#include "homdip/errors.hpp"
#include "homdip/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

using namespace homdip;
using nlohmann::json;

namespace {
std::string where_of(std::string_view text) {
    try {
        (void)parse_state_json(text);
    } catch(const ParseError &err) {
        return err.where();
    }
    return "<no error>";
}

const DensityOperator &as_density(const AnyState &s) { return std::get<DensityOperator>(s); }
} // namespace

TEST_CASE("format_double") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_double(-2.0) == "-2");
    CHECK(std::stod(format_double(std::numbers::pi)) == std::numbers::pi);
}

TEST_CASE("density round trip is exact") {
    Rng rng(77);
    for(int i = 0; i < 50; ++i) {
        const DensityOperator rho  = random_density(rng, 1 + i % 4, 2, 2 + i % 3);
        const AnyState        back = parse_state_json(state_to_json(rho).dump());
        CHECK(as_density(back).basis().n_max() == rho.basis().n_max());
        CHECK(as_density(back).matrix() == rho.matrix());
    }
}

TEST_CASE("multimode round trip is exact") {
    const auto basis = make_multimode_basis(2, 3);
    Rng        rng(78);
    for(int i = 0; i < 20; ++i) {
        const MultiModeDensity rho  = random_multimode_density(rng, basis, 2, 3);
        const AnyState         back = parse_state_json(state_to_json(rho).dump(2));
        const auto            &mm   = std::get<MultiModeDensity>(back);
        CHECK(mm.basis().modes() == 2);
        CHECK(mm.basis().n_max_total() == 3);
        CHECK(mm.matrix() == rho.matrix());
    }
    const MultiModeDensity worst = worst_case_two_color();
    CHECK(std::get<MultiModeDensity>(parse_state_json(state_to_json(worst).dump())).matrix() == worst.matrix());
}

TEST_CASE("pure states") {
    const json js = state_to_json(hom_state());
    CHECK(js["kind"] == "pure");
    CHECK(js["entries"].size() == 2);
    CHECK(js["entries"][0]["col"].is_null());
    const DensityOperator rho = as_density(parse_state_json(js.dump()));
    CHECK((rho.matrix() - pure_to_density(hom_state()).matrix()).norm() < 1e-15);

    const char *mm = R"({"n_max": 2, "modes": 2, "kind": "pure", "entries": [
        {"row": [[1,0],[0,1]], "col": null, "re": 1, "im": 0}]})";
    const MultiModeDensity m = std::get<MultiModeDensity>(parse_state_json(mm));
    CHECK(off_color_p11(m) == doctest::Approx(1.0));
}

TEST_CASE("parse errors name the location") {
    CHECK(where_of("{\n\"n_max\": 2,\n\"kind\": }") == "line 3");
    CHECK(where_of("[1, 2]") == "/");
    CHECK(where_of(R"({"kind": "density", "entries": []})") == "/n_max");
    CHECK(where_of(R"({"n_max": 2.5, "kind": "density", "entries": []})") == "/n_max");
    CHECK(where_of(R"({"n_max": 0, "kind": "density", "entries": []})") == "/n_max");
    CHECK(where_of(R"({"n_max": 2, "kind": "mixed", "entries": []})") == "/kind");
    CHECK(where_of(R"({"n_max": 2, "kind": "density", "entries": {}})") == "/entries");
    CHECK(where_of(R"({"n_max": 2, "kind": "density", "entries": [
        {"row": [0,0], "col": [0,0], "re": 1, "im": 0},
        {"row": [0,3], "col": [0,0], "re": 0, "im": 0}]})") == "/entries/1/row");
    CHECK(where_of(R"({"n_max": 2, "kind": "density", "entries": [
        {"row": [0,0], "col": [0,"x"], "re": 1, "im": 0}]})") == "/entries/0/col/1");
    CHECK(where_of(R"({"n_max": 2, "kind": "density", "entries": [
        {"row": [0,0], "col": [0,0], "re": 1}]})") == "/entries/0/im");
    CHECK(where_of(R"({"n_max": 2, "kind": "density", "entries": [
        {"row": [0,0], "col": null, "re": 1, "im": 0}]})") == "/entries/0/col");
    CHECK(where_of(R"({"n_max": 2, "kind": "pure", "entries": [
        {"row": [0,0], "col": [0,0], "re": 1, "im": 0}]})") == "/entries/0/col");
    CHECK(where_of(R"({"n_max": 2, "kind": "pure", "entries": [
        {"row": [0,0], "col": null, "re": 0.5, "im": 0}]})") == "/entries");
    CHECK(where_of(R"({"n_max": 2, "modes": 2, "kind": "density", "entries": [
        {"row": [[1,0],[0,0]], "col": [[1],[0]], "re": 1, "im": 0}]})") == "/entries/0/col/0");
    CHECK(where_of(R"({"n_max": 2, "modes": 2, "kind": "density", "entries": [
        {"row": [[2,1],[0,0]], "col": [[2,1],[0,0]], "re": 1, "im": 0}]})") == "/entries/0/row");
}

TEST_CASE("parsing keeps invalid matrices for the caller to validate") {
    const AnyState s = parse_state_json(R"({"n_max": 1, "kind": "density", "entries": [
        {"row": [0,0], "col": [0,0], "re": 2, "im": 0}]})");
    CHECK_FALSE(validate(as_density(s)).ok());
}

TEST_CASE("load_state_file") {
    const auto path = std::filesystem::temp_directory_path() / "homdip_test_io_state.json";
    {
        std::ofstream out(path);
        out << state_to_json(rho1()).dump();
    }
    CHECK(as_density(load_state_file(path)).matrix() == rho1().matrix());
    {
        std::ofstream out(path);
        out << "{";
    }
    try {
        (void)load_state_file(path);
        FAIL("expected a parse error");
    } catch(const ParseError &err) {
        CHECK(err.where() == path.string() + ":line 1");
    }
    std::filesystem::remove(path);
    CHECK_THROWS_AS((void)load_state_file(path), ParseError);
}

TEST_CASE("report_to_json") {
    const json js = report_to_json(criterion_ideal_d(rho1()));
    for(const char *key : {"criterion_kind", "p0", "p02", "p20", "p22", "p11", "q11", "lhs", "rhs", "entangled",
                           "concurrence_lower_bound"})
        CHECK(js.contains(key));
    CHECK(js["criterion_kind"] == "IDEAL_D");
    CHECK(js["entangled"] == true);
    CHECK_FALSE(js.contains("r"));

    const auto bs = BeamSplitterParams::from_reflection(0.6);
    const json asym =
        report_to_json(criterion_asymmetric(count_distribution(rho1()), q_distribution(rho1(), bs), bs));
    CHECK(asym["r"].get<double>() == doctest::Approx(0.6));
}

TEST_CASE("scan output") {
    const PhaseScan   scan = scan_phase(rho1(), 8);
    const std::string csv  = scan_to_csv(scan);
    CHECK(csv.rfind("phi,lhs,rhs,detected\n0,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
    CHECK(csv.find('\r') == std::string::npos);

    const json summary = scan_summary_json(scan_phase(rho1(), 4096));
    CHECK(summary["points"] == 4096);
    CHECK(summary["intervals"].size() == 2);
    CHECK(summary["intervals"][0]["begin_over_pi"].get<double>() == doctest::Approx(1.0 / 6).epsilon(1e-5));
    CHECK(summary["phi_star_over_pi"].get<double>() == doctest::Approx(0.5));
}
