#pragma once

#include <utility>
#include <vector>

#include "h3b/solver.hpp"

namespace h3b {

// One labeled spectrum row: multiplet N, sub-level n within it.
struct LevelRow {
    int level = 0;       // N
    int sublevel = 0;    // n, ascending within the multiplet
    double energy = 0.0;
    int multiplicity = 1;
    double residual = 0.0;
};

struct LevelTable {
    std::vector<LevelRow> rows;
    MeshSpec mesh;
    AssembledOperator::Params params;
    double cluster_tol = 0.0;
    double solve_tol = 0.0;
    // set when a cluster boundary fell within a factor 10 of cluster_tol or a
    // cluster straddles a degeneracy-count boundary
    bool ambiguous = false;
};

// Clusters eigenvalues by relative gap < cluster_tol, assigns N by cumulative
// counting against degeneracy(N) (1 state for N=0, then 3, 6, 10, ...) and n
// by ascending cluster order within each N.
LevelTable label_levels(const SpectrumResult& result, double cluster_tol = 1e-7);

// Heuristic mesh scale: h = (2R + 8/sqrt(3 m w)) / x_M with x_M the largest
// node. A default only; precision work should pick h from a convergence
// study (this grows too slowly with M for 1e-8 work).
double default_scale(const SystemParams& params, const QuadratureRule& rule);

// One labeled table per rest length. scale <= 0 requests the heuristic h at
// each R; a positive scale is used verbatim for the whole scan.
std::vector<LevelTable> energy_scan(const SystemParams& base, const std::vector<double>& rests,
                                    int points_per_axis, double scale, int count, double tol,
                                    const SolverOptions& options = {});

// Golden-section refinement of the ground-state minimum over R. A coarse
// walk at step 0.25 locates a sign change of the discrete slope inside
// [bracket_lo, bracket_hi]; throws std::runtime_error when there is none.
// Returns (R_min, E_min).
std::pair<double, double> find_minimum(const SystemParams& base, int points_per_axis, double scale,
                                       double bracket_lo, double bracket_hi, double tol_rest,
                                       double solve_tol, const SolverOptions& options = {});

// Exact spectral map between parameter sets:
//   E[m, w, R] = (w/w') E[m', w', R'],  R' = sqrt(m w / (m' w')) R.
// Given E at `from`, returns (E', R') for the system (to_mass, to_omega).
std::pair<double, double> scale_energy(double energy, const SystemParams& from, double to_mass,
                                       double to_omega);

struct ConvergenceRow {
    int points_per_axis = 0;
    double scale = 0.0;
    std::vector<double> energies;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    // matching leading digits of each tracked energy between successive M
    std::vector<std::vector<int>> stable_digits;  // [row > 0][state]
};

// Energies against (M, h). `scales` may be empty (heuristic h per M) or hold
// one h per entry of `orders`.
ConvergenceTable convergence_study(const SystemParams& params, const std::vector<int>& orders,
                                   const std::vector<double>& scales, int count, double tol,
                                   const SolverOptions& options = {});

}  // namespace h3b
