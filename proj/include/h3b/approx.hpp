#pragma once

#include <memory>
#include <stdexcept>
#include <utility>

#include "h3b/operator.hpp"
#include "h3b/solver.hpp"

namespace h3b {

// Two-parameter trial family, both parameters confined to the unit square.
struct VariationalParams {
    double alpha = 1.0;
    double beta = 0.0;
};

// Thrown when the mesh cannot resolve a trial function (quadrature norm on
// the mesh rule deviates from a refined rule by more than 1e-6 relative).
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// First-order small-R expansion of the ground state at m = 1:
//   E0(R) = 9 w + (3w / 2 pi) (3 pi w R^2 - 4 R sqrt(6 pi w)).
// Exact at R = 0; higher-order corrections are not included.
double pt_ground_energy(double omega, double rest);

// Stationary point of the expansion, R_crit = 2 sqrt(2 / (3 pi w)).
double pt_stationary_radius(double omega);

// V_R = solvable + linear + constant at m = 1:
//   (3/2) w^2 sum r^2,  -3 w^2 R sum r,  (9/2) w^2 R^2.
struct PotentialSplit {
    double solvable = 0.0;
    double linear = 0.0;
    double constant = 0.0;
};
PotentialSplit potential_split(const Distances& d, double omega, double rest);

// exp(-(alpha w / 2) sum_(ij) (r_ij - beta R)^2); unnormalized.
double trial_value(const VariationalParams& vp, const Distances& d, const SystemParams& params);

// Rayleigh quotients of the trial family on one assembled mesh operator.
// Projection uses the mesh-interpolation coefficients
//   C_ijk = sqrt(h^3 lam_i lam_j lam_k N'_ijk) psi(mesh point),
// so the Gram matrix is the identity at quadrature level and
// E = C^T H C / C^T C. energy() is serial and safe to fan out across threads.
class VariationalEvaluator {
  public:
    VariationalEvaluator(const SystemParams& params, const MeshSpec& mesh);
    ~VariationalEvaluator();
    VariationalEvaluator(VariationalEvaluator&&) noexcept;

    double energy(const VariationalParams& vp) const;
    // relative deviation of the mesh-rule norm from a refined-rule norm
    double resolution_defect(const VariationalParams& vp) const;
    const AssembledOperator& op() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Single-shot Rayleigh quotient with the resolution check (throws
// ResolutionError when the defect exceeds 1e-6).
double variational_energy(const VariationalParams& vp, const SystemParams& params,
                          const MeshSpec& mesh);

// Deterministic optimizer: 0.005-step grid over the unit square, then a
// compass search shrunk to 1e-5. Returns the optimal parameters and energy.
std::pair<VariationalParams, double> optimize_variational(const SystemParams& params,
                                                          const MeshSpec& mesh);

}  // namespace h3b
