// h3b: spectra of the quantum three-body molecule with pairwise harmonic
// interactions and finite rest length (zero total angular momentum).
//
// Exit codes: 0 success, 2 usage error, 3 solver non-convergence,
// 4 resource envelope exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "h3b/approx.hpp"
#include "h3b/exact.hpp"
#include "h3b/io.hpp"
#include "h3b/levels.hpp"

namespace {

struct OutputTarget {
    std::string path;  // empty: stdout
    template <typename Fn>
    void emit(Fn&& fn) const {
        if (path.empty()) {
            fn(std::cout);
        } else {
            std::ofstream f(path);
            if (!f) throw CLI::ValidationError("--out", "cannot open " + path);
            fn(f);
        }
    }
};

std::vector<double> parse_list(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw CLI::ValidationError(what, "bad number '" + tok + "'");
        }
    }
    if (out.empty()) throw CLI::ValidationError(what, "empty list");
    return out;
}

double resolve_scale(double scale, double extent, const h3b::SystemParams& params,
                     const h3b::QuadratureRule& rule) {
    if (extent > 0.0) return extent / rule.nodes.back();
    if (scale > 0.0) return scale;
    return h3b::default_scale(params, rule);
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("H3B_THREADS")) {
#ifdef _OPENMP
        int n = std::atoi(threads);
        if (n > 0) omp_set_num_threads(n);
#endif
    }

    CLI::App app{"Spectral solver for the three-body harmonic molecule (S-states)"};
    app.set_config("--config", "", "key=value config file, one [section] per subcommand");
    app.require_subcommand(1);
    // free the -h short flag for the mesh-scale option
    app.set_help_flag("--help", "print help");
    auto add_sub = [&](const std::string& name, const std::string& desc) {
        auto* sub = app.add_subcommand(name, desc);
        sub->set_help_flag("--help", "print help");
        return sub;
    };

    // ---- exact ----------------------------------------------------------
    int exact_level = 0;
    double exact_omega = 1.0;
    auto* cmd_exact = add_sub("exact", "closed-form R=0 level data");
    cmd_exact->add_option("--N", exact_level, "level number")->check(CLI::NonNegativeNumber);
    cmd_exact->add_option("--omega", exact_omega, "angular frequency (a.u.)")
        ->check(CLI::PositiveNumber);

    // ---- spectrum ---------------------------------------------------------
    struct {
        double omega = 1.0, mass = 1.0, rest = 0.0;
        int points = 20, states = 20;
        double scale = 0.0, extent = 0.0, tol = 1e-10, cluster_tol = 1e-7;
        std::string format = "csv";
        OutputTarget out;
        // generalized couplings; active when any nu deviates from gnu default
        bool generalized = false;
        double nu12 = 1.0, nu13 = 1.0, nu23 = 1.0, g12 = 1.0, g13 = 1.0, g23 = 1.0;
    } sp;
    auto* cmd_spec = add_sub("spectrum", "lowest S-state energies at one rest length");
    cmd_spec->add_option("--omega", sp.omega)->check(CLI::PositiveNumber);
    cmd_spec->add_option("--mass", sp.mass)->check(CLI::PositiveNumber);
    cmd_spec->add_option("--R", sp.rest)->check(CLI::NonNegativeNumber);
    cmd_spec->add_option("--M", sp.points, "mesh points per axis")->check(CLI::Range(2, 1000));
    cmd_spec->add_option("--h", sp.scale, "mesh scale; 0 = heuristic");
    cmd_spec->add_option("--extent", sp.extent, "physical mesh extent h*x_M (overrides --h)");
    cmd_spec->add_option("--states", sp.states)->check(CLI::PositiveNumber);
    cmd_spec->add_option("--tol", sp.tol, "residual tolerance")->check(CLI::PositiveNumber);
    cmd_spec->add_option("--cluster-tol", sp.cluster_tol)->check(CLI::PositiveNumber);
    cmd_spec->add_option("--format", sp.format)->check(CLI::IsMember({"csv", "json", "pivot"}));
    cmd_spec->add_option("--out", sp.out.path, "output path (default stdout)");
    auto* gen_flag = cmd_spec->add_flag("--generalized", sp.generalized,
                                        "use the generalized potential (nu_ij, R_ij)");
    cmd_spec->add_option("--nu12", sp.nu12)->needs(gen_flag);
    cmd_spec->add_option("--nu13", sp.nu13)->needs(gen_flag);
    cmd_spec->add_option("--nu23", sp.nu23)->needs(gen_flag);
    cmd_spec->add_option("--R12", sp.g12)->needs(gen_flag);
    cmd_spec->add_option("--R13", sp.g13)->needs(gen_flag);
    cmd_spec->add_option("--R23", sp.g23)->needs(gen_flag);

    // ---- scan -------------------------------------------------------------
    struct {
        double omega = 0.5, mass = 1.0;
        std::string rests = "0,0.5,1,1.5,2,2.5,3,3.5,4";
        int points = 20, states = 20;
        double scale = 0.0, tol = 1e-10, cluster_tol = 1e-7;
        std::string extents;  // optional comma list matching rests
        std::string format = "csv";
        OutputTarget out;
    } sc;
    auto* cmd_scan = add_sub("scan", "energy tables over a grid of rest lengths");
    cmd_scan->add_option("--omega", sc.omega)->check(CLI::PositiveNumber);
    cmd_scan->add_option("--mass", sc.mass)->check(CLI::PositiveNumber);
    cmd_scan->add_option("--R-list", sc.rests, "comma-separated rest lengths");
    cmd_scan->add_option("--M", sc.points)->check(CLI::Range(2, 1000));
    cmd_scan->add_option("--h", sc.scale, "mesh scale; 0 = heuristic per R");
    cmd_scan->add_option("--extent-list", sc.extents,
                         "physical extents h*x_M, one per rest length");
    cmd_scan->add_option("--states", sc.states)->check(CLI::PositiveNumber);
    cmd_scan->add_option("--tol", sc.tol)->check(CLI::PositiveNumber);
    cmd_scan->add_option("--cluster-tol", sc.cluster_tol)->check(CLI::PositiveNumber);
    cmd_scan->add_option("--format", sc.format)->check(CLI::IsMember({"csv", "json", "pivot"}));
    cmd_scan->add_option("--out", sc.out.path);

    // ---- minimize -----------------------------------------------------------
    struct {
        double omega = 1.0, mass = 1.0, lo = 0.0, hi = 4.0;
        int points = 18;
        double scale = 0.0, tol_rest = 1e-6, tol = 1e-10;
    } mn;
    auto* cmd_min = add_sub("minimize", "equilibrium rest length of the ground state");
    cmd_min->add_option("--omega", mn.omega)->check(CLI::PositiveNumber);
    cmd_min->add_option("--mass", mn.mass)->check(CLI::PositiveNumber);
    cmd_min->add_option("--bracket", [&mn](const std::vector<std::string>& v) {
        mn.lo = std::stod(v.at(0));
        mn.hi = std::stod(v.at(1));
        return true;
    }, "R bracket (two values)")->expected(2);
    cmd_min->add_option("--M", mn.points)->check(CLI::Range(2, 1000));
    cmd_min->add_option("--h", mn.scale, "mesh scale; 0 = heuristic per R");
    cmd_min->add_option("--tol-R", mn.tol_rest)->check(CLI::PositiveNumber);
    cmd_min->add_option("--tol", mn.tol)->check(CLI::PositiveNumber);

    // ---- variational / pt ---------------------------------------------------
    struct {
        double omega = 1.0, mass = 1.0;
        std::string rests = "0.5,1.0,2.0,3.5";
        int points = 18;
        double scale = 0.0, extent = 0.0, tol = 1e-9;
        OutputTarget out;
    } vm;
    auto* cmd_var = add_sub("variational", "two-parameter variational ground state");
    cmd_var->add_option("--omega", vm.omega)->check(CLI::PositiveNumber);
    cmd_var->add_option("--mass", vm.mass)->check(CLI::PositiveNumber);
    cmd_var->add_option("--R-list", vm.rests);
    cmd_var->add_option("--M", vm.points)->check(CLI::Range(2, 1000));
    cmd_var->add_option("--h", vm.scale);
    cmd_var->add_option("--extent", vm.extent);
    cmd_var->add_option("--tol", vm.tol)->check(CLI::PositiveNumber);
    cmd_var->add_option("--out", vm.out.path);

    struct {
        double omega = 1.0;
        std::string rests = "0,0.1,0.2,0.3";
        int points = 0;  // 0: skip the mesh comparison column
        double scale = 0.0, extent = 0.0, tol = 1e-9;
        OutputTarget out;
    } pt;
    auto* cmd_pt = add_sub("pt", "small-R perturbative ground-state energy");
    cmd_pt->add_option("--omega", pt.omega)->check(CLI::PositiveNumber);
    cmd_pt->add_option("--R-list", pt.rests);
    cmd_pt->add_option("--M", pt.points, "mesh order for the comparison column (0 = skip)")
        ->check(CLI::Range(0, 1000));
    cmd_pt->add_option("--h", pt.scale);
    cmd_pt->add_option("--tol", pt.tol)->check(CLI::PositiveNumber);
    cmd_pt->add_option("--out", pt.out.path);

    // ---- convergence --------------------------------------------------------
    struct {
        double omega = 0.5, mass = 1.0, rest = 0.0;
        std::string orders = "10,14,18,22";
        std::string scales;
        int states = 4;
        double tol = 1e-10;
        OutputTarget out;
    } cv;
    auto* cmd_conv = add_sub("convergence", "energy stability against (M, h)");
    cmd_conv->add_option("--omega", cv.omega)->check(CLI::PositiveNumber);
    cmd_conv->add_option("--mass", cv.mass)->check(CLI::PositiveNumber);
    cmd_conv->add_option("--R", cv.rest)->check(CLI::NonNegativeNumber);
    cmd_conv->add_option("--M-list", cv.orders);
    cmd_conv->add_option("--h-list", cv.scales, "one h per M (default: heuristic)");
    cmd_conv->add_option("--states", cv.states)->check(CLI::PositiveNumber);
    cmd_conv->add_option("--tol", cv.tol)->check(CLI::PositiveNumber);
    cmd_conv->add_option("--out", cv.out.path);

    // ---- quadrature-dump ------------------------------------------------------
    struct {
        int points = 20;
        OutputTarget out;
    } qd;
    auto* cmd_quad = add_sub("quadrature-dump", "Gauss-Laguerre nodes and weights");
    cmd_quad->add_option("--M", qd.points)->check(CLI::Range(1, 40));
    cmd_quad->add_option("--out", qd.out.path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_exact->parsed()) {
            std::cout << "N = " << exact_level << ", omega = " << exact_omega << "\n"
                      << "E_N             = "
                      << h3b::format_energy(h3b::energy_level(exact_level, exact_omega)) << "\n"
                      << "degeneracy      = " << h3b::degeneracy(exact_level) << "\n"
                      << "split bound     = " << h3b::split_count(exact_level) << "\n"
                      << "labels (n1 n2 l | N1 N2 N3):\n";
            for (const auto& [j, r] : h3b::enumerate_labels(exact_level))
                std::cout << "  " << j.n1 << ' ' << j.n2 << ' ' << j.l << "  |  " << r.n1 << ' '
                          << r.n2 << ' ' << r.n3 << "\n";
        } else if (cmd_spec->parsed()) {
            auto rule = h3b::gauss_laguerre_rule(sp.points);
            h3b::SystemParams params{sp.mass, sp.omega, sp.rest};
            double h = resolve_scale(sp.scale, sp.extent, params, rule);
            h3b::MeshSpec mesh{sp.points, h};
            h3b::AssembledOperator op =
                sp.generalized
                    ? h3b::assemble(mesh, rule,
                                    h3b::GeneralizedParams{sp.nu12, sp.nu13, sp.nu23, sp.g12,
                                                           sp.g13, sp.g23, sp.omega})
                    : h3b::assemble(mesh, rule, params);
            auto res = h3b::lowest_eigenvalues(op, sp.states, sp.tol);
            std::vector<h3b::LevelTable> tables{h3b::label_levels(res, sp.cluster_tol)};
            sp.out.emit([&](std::ostream& os) {
                if (sp.format == "json")
                    h3b::write_levels_json(os, tables);
                else if (sp.format == "pivot")
                    h3b::write_levels_pivot(os, tables);
                else
                    h3b::write_levels_csv(os, tables);
            });
        } else if (cmd_scan->parsed()) {
            auto rests = parse_list(sc.rests, "--R-list");
            h3b::SystemParams base{sc.mass, sc.omega, 0.0};
            std::vector<h3b::LevelTable> tables;
            if (!sc.extents.empty()) {
                auto exts = parse_list(sc.extents, "--extent-list");
                if (exts.size() != rests.size())
                    throw CLI::ValidationError("--extent-list", "length must match --R-list");
                auto rule = h3b::gauss_laguerre_rule(sc.points);
                for (std::size_t i = 0; i < rests.size(); ++i) {
                    double h = exts[i] / rule.nodes.back();
                    auto one = h3b::energy_scan(base, {rests[i]}, sc.points, h, sc.states, sc.tol);
                    tables.push_back(one.front());
                }
            } else {
                tables = h3b::energy_scan(base, rests, sc.points, sc.scale, sc.states, sc.tol);
            }
            sc.out.emit([&](std::ostream& os) {
                if (sc.format == "json")
                    h3b::write_levels_json(os, tables);
                else if (sc.format == "pivot")
                    h3b::write_levels_pivot(os, tables);
                else
                    h3b::write_levels_csv(os, tables);
            });
        } else if (cmd_min->parsed()) {
            h3b::SystemParams base{mn.mass, mn.omega, 0.0};
            auto [rmin, emin] =
                h3b::find_minimum(base, mn.points, mn.scale, mn.lo, mn.hi, mn.tol_rest, mn.tol);
            std::cout << "R_min = " << h3b::format_energy(rmin) << "\n"
                      << "E_min = " << h3b::format_energy(emin) << "\n";
        } else if (cmd_var->parsed()) {
            auto rests = parse_list(vm.rests, "--R-list");
            vm.out.emit([&](std::ostream& os) {
                os << "# variational ground state, omega=" << h3b::format_energy(vm.omega)
                   << " M=" << vm.points << "\n";
                os << "R,E,alpha,beta,relative_error_vs_mesh\n";
                for (double rest : rests) {
                    h3b::SystemParams params{vm.mass, vm.omega, rest};
                    auto rule = h3b::gauss_laguerre_rule(vm.points);
                    double h = resolve_scale(vm.scale, vm.extent, params, rule);
                    h3b::MeshSpec mesh{vm.points, h};
                    auto [best, energy] = h3b::optimize_variational(params, mesh);
                    h3b::VariationalEvaluator ev(params, mesh);
                    double ground =
                        h3b::lowest_eigenvalues(ev.op(), 1, vm.tol).energies.front();
                    char line[160];
                    std::snprintf(line, sizeof line, "%s,%.6f,%.3f,%.3f,%.5f\n",
                                  h3b::format_energy(rest).c_str(), energy, best.alpha, best.beta,
                                  (energy - ground) / ground);
                    os << line;
                }
            });
        } else if (cmd_pt->parsed()) {
            auto rests = parse_list(pt.rests, "--R-list");
            pt.out.emit([&](std::ostream& os) {
                os << "# perturbative ground state, omega=" << h3b::format_energy(pt.omega)
                   << ", stationary R=" << h3b::format_energy(h3b::pt_stationary_radius(pt.omega))
                   << "\n";
                os << "R,E,relative_error_vs_mesh\n";
                for (double rest : rests) {
                    double e = h3b::pt_ground_energy(pt.omega, rest);
                    os << h3b::format_energy(rest) << ',' << h3b::format_energy(e) << ',';
                    if (pt.points > 0) {
                        h3b::SystemParams params{1.0, pt.omega, rest};
                        auto rule = h3b::gauss_laguerre_rule(pt.points);
                        double h = resolve_scale(pt.scale, 0.0, params, rule);
                        auto op = h3b::assemble(h3b::MeshSpec{pt.points, h}, rule, params);
                        double ground = h3b::lowest_eigenvalues(op, 1, pt.tol).energies.front();
                        os << h3b::format_energy((e - ground) / ground);
                    }
                    os << "\n";
                }
            });
        } else if (cmd_conv->parsed()) {
            std::vector<int> orders;
            for (double v : parse_list(cv.orders, "--M-list")) orders.push_back(static_cast<int>(v));
            std::vector<double> scales;
            if (!cv.scales.empty()) scales = parse_list(cv.scales, "--h-list");
            h3b::SystemParams params{cv.mass, cv.omega, cv.rest};
            auto table = h3b::convergence_study(params, orders, scales, cv.states, cv.tol);
            cv.out.emit([&](std::ostream& os) { h3b::write_convergence_csv(os, table, params); });
        } else if (cmd_quad->parsed()) {
            auto rule = h3b::gauss_laguerre_rule(qd.points);
            qd.out.emit([&](std::ostream& os) { h3b::write_quadrature_csv(os, rule); });
        }
    } catch (const h3b::SolverError& e) {
        std::cerr << "solver failed: " << e.what() << "\n";
        for (std::size_t i = 0; i < e.energies.size(); ++i)
            std::cerr << "  E[" << i << "] = " << h3b::format_energy(e.energies[i])
                      << "  residual = " << e.residuals[i] << "\n";
        return 3;
    } catch (const h3b::ResolutionError& e) {
        std::cerr << "mesh resolution failure: " << e.what() << "\n";
        return 3;
    } catch (const std::length_error& e) {
        std::cerr << "resource envelope exceeded: " << e.what() << "\n";
        return 4;
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
