#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "h3b/operator.hpp"

namespace h3b {

// Thrown when the iterative solver exhausts its subspace budget; carries the
// best Ritz values and their residuals at the point of failure.
struct SolverError : std::runtime_error {
    SolverError(const std::string& what, std::vector<double> e, std::vector<double> r)
        : std::runtime_error(what), energies(std::move(e)), residuals(std::move(r)) {}
    std::vector<double> energies;
    std::vector<double> residuals;
};

struct SolverOptions {
    int max_subspace = 0;        // 0: auto, min(dim, max(220, 9 * count))
    int dense_threshold = 2000;  // dimensions up to this use direct diagonalization
    bool force_iterative = false;
    unsigned long long seed = 0x9e3779b97f4a7c15ull;  // fill columns beyond the all-ones start
};

// Eigenvalues with residual certificates ||H v - E v||_2 for unit-norm v.
struct SpectrumResult {
    std::vector<double> energies;   // ascending
    std::vector<double> residuals;  // matching, each <= tol * max(1, |E|)
    MeshSpec mesh;
    AssembledOperator::Params params;
    int count_requested = 0;
    double tol = 0.0;
    int matvecs = 0;
    bool dense_path = false;
};

// The `count` algebraically smallest eigenvalues of the assembled operator.
//
// Dense path (dimension <= dense_threshold): full symmetric diagonalization,
// residuals evaluated explicitly. Iterative path: block Davidson over an
// orthonormal subspace with full reorthogonalization (two Gram-Schmidt
// sweeps), the closed-form operator diagonal as preconditioner, and thick
// restarts. One correction vector per unconverged state per sweep keeps
// degenerate multiplets converging together. The start is deterministic:
// first column the normalized all-ones vector, the rest from a fixed-seed
// splitmix64 stream, so repeated runs agree bit for bit.
//
// Throws SolverError on iteration-budget exhaustion before reaching `tol`.
SpectrumResult lowest_eigenvalues(const AssembledOperator& op, int count, double tol,
                                  const SolverOptions& options = {});

}  // namespace h3b
