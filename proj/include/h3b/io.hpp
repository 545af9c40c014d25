#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "h3b/levels.hpp"
#include "h3b/quadrature.hpp"

namespace h3b {

// Fixed 12-significant-digit formatting used for every energy the tool emits;
// identical configs produce byte-identical files.
std::string format_energy(double value);

// Long-format CSV: metadata comment lines (params, mesh, tolerances), then
// one row per (R, N, n) with energy, multiplicity, residual.
void write_levels_csv(std::ostream& out, const std::vector<LevelTable>& tables);

// JSON schema: { "runs": [ { "params": {...}, "mesh": {"M","h"},
// "tolerances": {...}, "rows": [{"N","n","E","multiplicity","residual"}] } ] }
void write_levels_json(std::ostream& out, const std::vector<LevelTable>& tables);

// Pivot facsimile: one row per (N, n) with repeated rows for multiplicity,
// one column per rest length.
void write_levels_pivot(std::ostream& out, const std::vector<LevelTable>& tables);

// nodes/weights CSV for inspection
void write_quadrature_csv(std::ostream& out, const QuadratureRule& rule);

void write_convergence_csv(std::ostream& out, const ConvergenceTable& table,
                           const SystemParams& params);

}  // namespace h3b
