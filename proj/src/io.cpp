#include "h3b/io.hpp"

#include <cstdio>
#include <map>
#include <ostream>

#include <nlohmann/json.hpp>

namespace h3b {

std::string format_energy(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

namespace {

std::string format_residual(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", value);
    return buf;
}

double rest_of(const AssembledOperator::Params& params) {
    if (std::holds_alternative<SystemParams>(params))
        return std::get<SystemParams>(params).rest_length;
    return std::get<GeneralizedParams>(params).r12;
}

void write_params_comment(std::ostream& out, const LevelTable& t) {
    if (std::holds_alternative<SystemParams>(t.params)) {
        const auto& p = std::get<SystemParams>(t.params);
        out << "# params: m=" << format_energy(p.mass) << " omega=" << format_energy(p.omega)
            << " R=" << format_energy(p.rest_length) << "\n";
    } else {
        const auto& g = std::get<GeneralizedParams>(t.params);
        out << "# params: generalized omega=" << format_energy(g.omega) << " nu=("
            << format_energy(g.nu12) << "," << format_energy(g.nu13) << ","
            << format_energy(g.nu23) << ") rest=(" << format_energy(g.r12) << ","
            << format_energy(g.r13) << "," << format_energy(g.r23) << ")\n";
    }
    out << "# mesh: M=" << t.mesh.points_per_axis << " h=" << format_energy(t.mesh.scale)
        << " solve_tol=" << format_residual(t.solve_tol)
        << " cluster_tol=" << format_residual(t.cluster_tol)
        << (t.ambiguous ? " clustering=ambiguous" : "") << "\n";
}

nlohmann::json params_json(const AssembledOperator::Params& params) {
    nlohmann::json j;
    if (std::holds_alternative<SystemParams>(params)) {
        const auto& p = std::get<SystemParams>(params);
        j = {{"m", p.mass}, {"omega", p.omega}, {"R", p.rest_length}};
    } else {
        const auto& g = std::get<GeneralizedParams>(params);
        j = {{"omega", g.omega},
             {"nu", {g.nu12, g.nu13, g.nu23}},
             {"rest", {g.r12, g.r13, g.r23}}};
    }
    return j;
}

}  // namespace

void write_levels_csv(std::ostream& out, const std::vector<LevelTable>& tables) {
    for (const auto& t : tables) write_params_comment(out, t);
    out << "R,N,n,E,multiplicity,residual\n";
    for (const auto& t : tables) {
        const double rest = rest_of(t.params);
        for (const auto& row : t.rows)
            out << format_energy(rest) << ',' << row.level << ',' << row.sublevel << ','
                << format_energy(row.energy) << ',' << row.multiplicity << ','
                << format_residual(row.residual) << "\n";
    }
}

void write_levels_json(std::ostream& out, const std::vector<LevelTable>& tables) {
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& t : tables) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : t.rows)
            rows.push_back({{"N", row.level},
                            {"n", row.sublevel},
                            {"E", row.energy},
                            {"multiplicity", row.multiplicity},
                            {"residual", row.residual}});
        runs.push_back({{"params", params_json(t.params)},
                        {"mesh", {{"M", t.mesh.points_per_axis}, {"h", t.mesh.scale}}},
                        {"tolerances", {{"solve", t.solve_tol}, {"cluster", t.cluster_tol}}},
                        {"ambiguous_clustering", t.ambiguous},
                        {"rows", rows}});
    }
    out << nlohmann::json{{"runs", runs}}.dump(2) << "\n";
}

void write_levels_pivot(std::ostream& out, const std::vector<LevelTable>& tables) {
    for (const auto& t : tables) write_params_comment(out, t);
    // collect (N, n, copy) keys present anywhere, including degenerate copies
    std::map<std::tuple<int, int, int>, std::map<double, double>> grid;
    std::vector<double> rests;
    for (const auto& t : tables) {
        double rest = rest_of(t.params);
        rests.push_back(rest);
        for (const auto& row : t.rows)
            for (int copy = 0; copy < row.multiplicity; ++copy)
                grid[{row.level, row.sublevel, copy}][rest] = row.energy;
    }
    out << "N,n";
    for (double r : rests) out << ",R=" << format_energy(r);
    out << "\n";
    for (const auto& [key, values] : grid) {
        out << std::get<0>(key) << ',' << std::get<1>(key);
        for (double r : rests) {
            auto it = values.find(r);
            out << ',' << (it == values.end() ? "" : format_energy(it->second));
        }
        out << "\n";
    }
}

void write_quadrature_csv(std::ostream& out, const QuadratureRule& rule) {
    out << "i,node,weight,regularized_weight\n";
    char buf[128];
    for (int i = 0; i < rule.order; ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.16e,%.16e,%.16e\n", i + 1, rule.nodes[i],
                      rule.weights[i], rule.reg_weights[i]);
        out << buf;
    }
}

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table,
                           const SystemParams& params) {
    out << "# params: m=" << format_energy(params.mass) << " omega=" << format_energy(params.omega)
        << " R=" << format_energy(params.rest_length) << "\n";
    out << "M,h,state,E,stable_digits_vs_prev\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        for (std::size_t s = 0; s < row.energies.size(); ++s) {
            out << row.points_per_axis << ',' << format_energy(row.scale) << ',' << s << ','
                << format_energy(row.energies[s]) << ',';
            if (r > 0) out << table.stable_digits[r - 1][s];
            out << "\n";
        }
    }
}

}  // namespace h3b
