#include "homdip/io.hpp"

#include "homdip/errors.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <fstream>
#include <numbers>
#include <sstream>

namespace homdip {

using nlohmann::json;

namespace {

std::string field(const std::string &path, const std::string &key) { return path + "/" + key; }

const json &require(const json &obj, const std::string &path, const std::string &key) {
    if(!obj.contains(key)) throw ParseError(field(path, key), "missing required field");
    return obj.at(key);
}

int require_int(const json &value, const std::string &path) {
    if(!value.is_number_integer()) throw ParseError(path, "expected an integer, got " + value.dump());
    return value.get<int>();
}

double require_number(const json &value, const std::string &path) {
    if(!value.is_number()) throw ParseError(path, "expected a number, got " + value.dump());
    return value.get<double>();
}

Occupation parse_pair(const json &value, const std::string &path, const TwoModeBasis &basis) {
    if(!value.is_array() || value.size() != 2) throw ParseError(path, "expected [nA, nB]");
    const int a = require_int(value[0], path + "/0");
    const int b = require_int(value[1], path + "/1");
    if(!basis.contains(a, b))
        throw ParseError(path, "occupation (" + std::to_string(a) + "," + std::to_string(b) + ") exceeds n_max " +
                                   std::to_string(basis.n_max()));
    return {a, b};
}

ModeOccupation parse_table(const json &value, const std::string &path, const MultiModeBasis &basis) {
    if(!value.is_array() || value.size() != 2) throw ParseError(path, "expected [[nA_1..nA_m],[nB_1..nB_m]]");
    ModeOccupation occ;
    for(std::size_t port = 0; port < 2; ++port) {
        const std::string port_path = path + "/" + std::to_string(port);
        const json       &row       = value[port];
        if(!row.is_array() || row.size() != static_cast<std::size_t>(basis.modes()))
            throw ParseError(port_path, "expected " + std::to_string(basis.modes()) + " occupation numbers");
        auto &target = port == 0 ? occ.a : occ.b;
        for(std::size_t k = 0; k < row.size(); ++k) {
            const int n = require_int(row[k], port_path + "/" + std::to_string(k));
            if(n < 0) throw ParseError(port_path + "/" + std::to_string(k), "occupation must be non-negative");
            target.push_back(n);
        }
    }
    if(!basis.find(occ)) throw ParseError(path, "occupation table exceeds the photon cap " + std::to_string(basis.n_max_total()));
    return occ;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

template<typename Basis, typename Key, typename ParseKey>
void fill_entries(const json &entries, bool pure, const Basis &basis, ParseKey parse_key, Vector &ket, Matrix &rho) {
    for(std::size_t e = 0; e < entries.size(); ++e) {
        const std::string path  = "/entries/" + std::to_string(e);
        const json       &entry = entries[e];
        if(!entry.is_object()) throw ParseError(path, "expected an object");
        const Key     row   = parse_key(require(entry, path, "row"), field(path, "row"));
        const Complex value = {require_number(require(entry, path, "re"), field(path, "re")),
                               require_number(require(entry, path, "im"), field(path, "im"))};
        const json   &col   = require(entry, path, "col");
        const auto    r     = static_cast<Eigen::Index>(basis.index(row));
        if(pure) {
            if(!col.is_null()) throw ParseError(field(path, "col"), "pure states must use \"col\": null");
            ket(r) += value;
        } else {
            if(col.is_null()) throw ParseError(field(path, "col"), "density entries need a column occupation");
            const Key c = parse_key(col, field(path, "col"));
            rho(r, static_cast<Eigen::Index>(basis.index(c))) += value;
        }
    }
}

json pair_json(Occupation occ) { return json::array({occ.a, occ.b}); }
json table_json(const ModeOccupation &occ) { return json::array({occ.a, occ.b}); }

json entry(json row, json col, Complex value) {
    return json{{"row", std::move(row)}, {"col", std::move(col)}, {"re", value.real()}, {"im", value.imag()}};
}

} // namespace

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

AnyState parse_state_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch(const json::parse_error &err) {
        throw ParseError("line " + std::to_string(line_of(text, err.byte)), err.what());
    }
    if(!doc.is_object()) throw ParseError("/", "state file must be a JSON object");

    const int         n_max   = require_int(require(doc, "", "n_max"), "/n_max");
    const json       &kind_js = require(doc, "", "kind");
    const json       &entries = require(doc, "", "entries");
    if(!kind_js.is_string()) throw ParseError("/kind", "expected \"pure\" or \"density\"");
    const std::string kind = kind_js.get<std::string>();
    if(kind != "pure" && kind != "density") throw ParseError("/kind", "expected \"pure\" or \"density\", got \"" + kind + "\"");
    if(!entries.is_array()) throw ParseError("/entries", "expected an array");
    const bool pure = kind == "pure";

    if(doc.contains("modes")) {
        const int modes = require_int(doc.at("modes"), "/modes");
        if(modes < 1) throw ParseError("/modes", "need at least one internal mode");
        if(n_max < 0) throw ParseError("/n_max", "photon cap must be non-negative");
        auto   basis = make_multimode_basis(modes, n_max);
        Vector ket   = Vector::Zero(basis->size());
        Matrix rho   = Matrix::Zero(basis->size(), basis->size());
        fill_entries<MultiModeBasis, ModeOccupation>(
            entries, pure, *basis, [&](const json &v, const std::string &p) { return parse_table(v, p, *basis); }, ket, rho);
        if(pure) {
            if(std::abs(ket.squaredNorm() - 1.0) > 1e-12) throw ParseError("/entries", "pure state is not normalized");
            rho = ket * ket.adjoint();
        }
        return MultiModeDensity(std::move(basis), std::move(rho));
    }

    if(n_max < 1) throw ParseError("/n_max", "n_max must be at least 1");
    const TwoModeBasis basis(n_max);
    Vector             ket = Vector::Zero(basis.size());
    Matrix             rho = Matrix::Zero(basis.size(), basis.size());
    fill_entries<TwoModeBasis, Occupation>(
        entries, pure, basis, [&](const json &v, const std::string &p) { return parse_pair(v, p, basis); }, ket, rho);
    if(pure) {
        try {
            return pure_to_density(PureState(basis, ket));
        } catch(const NormalizationError &err) {
            throw ParseError("/entries", err.what());
        }
    }
    return DensityOperator(basis, std::move(rho));
}

AnyState load_state_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if(!in) throw ParseError(path.string(), "cannot open state file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_state_json(buf.str());
    } catch(const ParseError &err) {
        throw ParseError(path.string() + (err.where().empty() ? "" : ":" + err.where()), err.what());
    }
}

json state_to_json(const PureState &psi) {
    json entries = json::array();
    for(std::size_t i = 0; i < psi.basis().dim(); ++i) {
        const Complex v = psi.amplitudes()(static_cast<Eigen::Index>(i));
        if(v != Complex{}) entries.push_back(entry(pair_json(psi.basis().occupation(i)), nullptr, v));
    }
    return json{{"n_max", psi.basis().n_max()}, {"kind", "pure"}, {"entries", std::move(entries)}};
}

json state_to_json(const DensityOperator &rho) {
    json entries = json::array();
    for(std::size_t i = 0; i < rho.basis().dim(); ++i)
        for(std::size_t j = 0; j < rho.basis().dim(); ++j) {
            const Complex v = rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if(v != Complex{})
                entries.push_back(entry(pair_json(rho.basis().occupation(i)), pair_json(rho.basis().occupation(j)), v));
        }
    return json{{"n_max", rho.basis().n_max()}, {"kind", "density"}, {"entries", std::move(entries)}};
}

json state_to_json(const MultiModeDensity &rho) {
    const MultiModeBasis &basis   = rho.basis();
    json                  entries = json::array();
    for(std::size_t i = 0; i < basis.dim(); ++i)
        for(std::size_t j = 0; j < basis.dim(); ++j) {
            const Complex v = rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if(v != Complex{}) entries.push_back(entry(table_json(basis.occupation(i)), table_json(basis.occupation(j)), v));
        }
    return json{{"n_max", basis.n_max_total()}, {"modes", basis.modes()}, {"kind", "density"}, {"entries", std::move(entries)}};
}

json report_to_json(const CriterionReport &report) {
    json out{
        {"criterion_kind", std::string(to_string(report.criterion_kind))},
        {"p0", report.p0},
        {"p02", report.p02},
        {"p20", report.p20},
        {"p22", report.p22},
        {"p11", report.p11},
        {"q11", report.q11},
        {"lhs", report.lhs},
        {"rhs", report.rhs},
        {"entangled", report.entangled},
        {"concurrence_lower_bound", report.concurrence_lower_bound},
    };
    if(report.reflection) out["r"] = *report.reflection;
    return out;
}

std::string counts_to_csv(const CountDistribution &counts) {
    std::string out = "i,j,p\n";
    for(int i = 0; i <= counts.n_max(); ++i)
        for(int j = 0; j <= counts.n_max(); ++j)
            if(counts(i, j) != 0.0) out += fmt::format("{},{},{}\n", i, j, format_double(counts(i, j)));
    return out;
}

std::string scan_to_csv(const PhaseScan &scan) {
    std::string out = "phi,lhs,rhs,detected\n";
    for(std::size_t i = 0; i < scan.phi.size(); ++i)
        out += fmt::format("{},{},{},{}\n", format_double(scan.phi[i]), format_double(scan.lhs), format_double(scan.rhs[i]),
                           scan.detected[i] ? 1 : 0);
    return out;
}

json scan_summary_json(const PhaseScan &scan) {
    json intervals = json::array();
    for(const PhaseInterval &iv : scan.intervals)
        intervals.push_back({{"begin", iv.begin},
                             {"end", iv.end},
                             {"begin_over_pi", iv.begin / std::numbers::pi},
                             {"end_over_pi", iv.end / std::numbers::pi}});
    return json{{"points", scan.phi.size()},
                {"lhs", scan.lhs},
                {"phi_star", scan.phi_star},
                {"phi_star_over_pi", scan.phi_star / std::numbers::pi},
                {"phi_q11_max", scan.phi_q11_max},
                {"intervals", std::move(intervals)}};
}

} // namespace homdip
