#include "h3b/levels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "h3b/exact.hpp"

namespace h3b {

LevelTable label_levels(const SpectrumResult& result, double cluster_tol) {
    if (cluster_tol <= 0.0) throw std::invalid_argument("label_levels: cluster_tol must be > 0");
    LevelTable table;
    table.mesh = result.mesh;
    table.params = result.params;
    table.cluster_tol = cluster_tol;
    table.solve_tol = result.tol;

    const auto& e = result.energies;
    if (e.empty()) return table;

    // cluster by relative gap
    struct Cluster {
        double sum = 0.0;
        double max_res = 0.0;
        int size = 0;
        int first_index = 0;
    };
    std::vector<Cluster> clusters;
    for (std::size_t i = 0; i < e.size(); ++i) {
        double res_i = i < result.residuals.size() ? result.residuals[i] : 0.0;
        bool fresh = clusters.empty();
        if (!fresh) {
            double prev = clusters.back().sum / clusters.back().size;
            double gap = (e[i] - prev) / std::max(1.0, std::abs(e[i]));
            bool split = gap >= cluster_tol;
            if (split && gap < 10.0 * cluster_tol) table.ambiguous = true;
            if (!split && gap > 0.1 * cluster_tol) table.ambiguous = true;
            fresh = split;
        }
        if (fresh) {
            clusters.push_back({e[i], res_i, 1, static_cast<int>(i)});
        } else {
            clusters.back().sum += e[i];
            clusters.back().max_res = std::max(clusters.back().max_res, res_i);
            clusters.back().size += 1;
        }
    }

    // cumulative N assignment: state index ranges [0,1), [1,4), [4,10), ...
    auto level_of = [](int state_index) {
        int level = 0;
        long start = 0;
        while (state_index >= start + degeneracy(level)) {
            start += degeneracy(level);
            ++level;
        }
        return level;
    };

    int prev_level = -1, sub = 0;
    for (const auto& c : clusters) {
        int level = level_of(c.first_index);
        if (level_of(c.first_index + c.size - 1) != level) table.ambiguous = true;
        sub = (level == prev_level) ? sub + 1 : 0;
        prev_level = level;
        table.rows.push_back({level, sub, c.sum / c.size, c.size, c.max_res});
    }
    return table;
}

double default_scale(const SystemParams& params, const QuadratureRule& rule) {
    double extent = 2.0 * params.rest_length + 8.0 / std::sqrt(3.0 * params.mass * params.omega);
    return extent / rule.nodes.back();
}

namespace {

SpectrumResult solve_at(const SystemParams& params, int m, double scale, int count, double tol,
                        const SolverOptions& options) {
    QuadratureRule rule = gauss_laguerre_rule(m);
    double h = scale > 0.0 ? scale : default_scale(params, rule);
    AssembledOperator op = assemble(MeshSpec{m, h}, rule, params);
    return lowest_eigenvalues(op, count, tol, options);
}

}  // namespace

std::vector<LevelTable> energy_scan(const SystemParams& base, const std::vector<double>& rests,
                                    int points_per_axis, double scale, int count, double tol,
                                    const SolverOptions& options) {
    std::vector<LevelTable> tables;
    tables.reserve(rests.size());
    for (double rest : rests) {
        SystemParams p = base;
        p.rest_length = rest;
        tables.push_back(label_levels(solve_at(p, points_per_axis, scale, count, tol, options)));
    }
    return tables;
}

std::pair<double, double> find_minimum(const SystemParams& base, int points_per_axis, double scale,
                                       double bracket_lo, double bracket_hi, double tol_rest,
                                       double solve_tol, const SolverOptions& options) {
    if (!(bracket_lo >= 0.0) || !(bracket_hi > bracket_lo))
        throw std::invalid_argument("find_minimum: bad bracket");

    auto energy = [&](double rest) {
        SystemParams p = base;
        p.rest_length = rest;
        return solve_at(p, points_per_axis, scale, 1, solve_tol, options).energies.front();
    };

    // coarse walk at step 0.25 to find a discrete-slope sign change
    const double step = 0.25;
    std::vector<double> rs, es;
    for (double r = bracket_lo;; r += step) {
        r = std::min(r, bracket_hi);
        rs.push_back(r);
        es.push_back(energy(r));
        if (r >= bracket_hi) break;
    }
    int best = -1;
    for (std::size_t i = 1; i + 1 < rs.size(); ++i)
        if (es[i] <= es[i - 1] && es[i] <= es[i + 1]) {
            best = static_cast<int>(i);
            break;
        }
    if (best < 0) throw std::runtime_error("find_minimum: no interior minimum in bracket");

    // golden-section refinement
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = rs[best - 1], c = rs[best + 1];
    double x1 = c - inv_phi * (c - a);
    double x2 = a + inv_phi * (c - a);
    double f1 = energy(x1), f2 = energy(x2);
    while (c - a > tol_rest) {
        if (f1 <= f2) {
            c = x2;
            x2 = x1;
            f2 = f1;
            x1 = c - inv_phi * (c - a);
            f1 = energy(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (c - a);
            f2 = energy(x2);
        }
    }
    double rmin = f1 <= f2 ? x1 : x2;
    double emin = std::min(f1, f2);
    return {rmin, emin};
}

std::pair<double, double> scale_energy(double energy, const SystemParams& from, double to_mass,
                                       double to_omega) {
    if (!(to_mass > 0.0) || !(to_omega > 0.0))
        throw std::invalid_argument("scale_energy: target mass and omega must be > 0");
    double escaled = (to_omega / from.omega) * energy;
    double rscaled = std::sqrt(from.mass * from.omega / (to_mass * to_omega)) * from.rest_length;
    return {escaled, rscaled};
}

ConvergenceTable convergence_study(const SystemParams& params, const std::vector<int>& orders,
                                   const std::vector<double>& scales, int count, double tol,
                                   const SolverOptions& options) {
    if (!scales.empty() && scales.size() != orders.size())
        throw std::invalid_argument("convergence_study: scales must be empty or match orders");
    ConvergenceTable table;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        double h = scales.empty() ? 0.0 : scales[i];
        QuadratureRule rule = gauss_laguerre_rule(orders[i]);
        double used = h > 0.0 ? h : default_scale(params, rule);
        SpectrumResult res = solve_at(params, orders[i], used, count, tol, options);
        table.rows.push_back({orders[i], used, res.energies});
    }
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        std::vector<int> digits;
        for (int s = 0; s < count; ++s) {
            double a = table.rows[i - 1].energies[s];
            double b = table.rows[i].energies[s];
            double rel = std::abs(a - b) / std::max(1.0, std::abs(b));
            int d = rel <= 0.0 ? 15 : std::min(15, std::max(0, static_cast<int>(-std::log10(rel))));
            digits.push_back(d);
        }
        table.stable_digits.push_back(digits);
    }
    return table;
}

}  // namespace h3b
