#pragma once

#include <array>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "h3b/geometry.hpp"
#include "h3b/quadrature.hpp"

namespace h3b {

// Largest supported mesh order; M^3 basis functions. Beyond this the memory
// and solver envelope is not validated.
inline constexpr int kMaxMeshOrder = 40;

// Per-axis mesh indices, 0-based, each in [0, M).
struct BasisIndex {
    int i = 0, j = 0, k = 0;
};

// Coefficients of the perimetric kinetic bilinear form
//   <F|T|G> = int sum_ab A_ab dF/dx_a dG/dx_b dx dy dz,
// symmetric, A_aa >= 0 and A_ab <= 0 off the diagonal on the octant.
std::array<std::array<double, 3>, 3> a_coefficients(double x, double y, double z);

// N_ijk = h^3 (X_i + Y_j)(X_i + Z_k)(Y_j + Z_k), X = h * node. This is the
// quadrature norm of the ijk basis product under the perimetric volume
// weight, so scaling h -> 2h multiplies it by 2^6.
double normalization(const BasisIndex& idx, const MeshSpec& mesh, const QuadratureRule& rule);

// One kinetic matrix element of the mesh Hamiltonian: the Gauss-quadrature
// collapse of the bilinear form between basis functions `row` and `col`,
//
//   2 (N_row N_col)^(-1/2) h^3 { d_jj' d_kk' sum_n lam_n h^-2 A11(X_n,Y_j,Z_k) D(i,n) D(i',n)
//                              + (y and z axis analogues)
//                              + d_kk' h^-2 [ sqrt(lam_i lam_j') A12(X_i,Y_j',Z_k) D(i',i) D(j,j')
//                                           + sqrt(lam_i' lam_j) A12(X_i',Y_j,Z_k) D(i,i') D(j',j) ]
//                              + (xz and yz analogues) },
//
// lam = reg_weights, D = the derivative table of the basis flavor in use.
// Symmetric in (row, col); exactly zero when all three index pairs differ.
double kinetic_element(const BasisIndex& row, const BasisIndex& col, const MeshSpec& mesh,
                       const QuadratureRule& rule, const Eigen::MatrixXd& deriv);

// V at the mesh point distances_from_perimetric(h x_i, h y_j, h z_k).
double potential_diagonal(const BasisIndex& idx, const MeshSpec& mesh, const QuadratureRule& rule,
                          const SystemParams& params);
double potential_diagonal(const BasisIndex& idx, const MeshSpec& mesh, const QuadratureRule& rule,
                          const GeneralizedParams& params);

// The discretized S-state Hamiltonian on the 3D perimetric Lagrange mesh,
// dimension M^3. Kinetic part stored as three axis blocks (M^2 dense M x M
// matrices each) plus three cross-term coefficient tables applied through the
// derivative table, O(M^4) memory in total; the potential is diagonal.
//
// The expansion basis is the plain (non-regularized) cardinal flavor: the
// kinetic form coefficients A_aa vanish linearly on the faces of the octant
// while eigenfunctions stay finite there, and a basis forced to zero on the
// faces (the regularized flavor) degrades convergence from spectral to
// algebraic. The R = 0 spectrum check pins this choice: assembled eigenvalues
// must reproduce 3w(2N+3) to solver accuracy.
//
// General mass enters through the exact reduction E[m,w,R] = (1/m) E[1,mw,R]:
// assembly uses m = 1 with effective frequency m*w and rescales by 1/m, so
// apply() realizes the physical Hamiltonian in Hartree.
//
// Immutable after construction; apply() is safe to call concurrently.
class AssembledOperator {
  public:
    using Params = std::variant<SystemParams, GeneralizedParams>;

    AssembledOperator(const MeshSpec& mesh, const QuadratureRule& rule, const Params& params);

    int points() const { return mesh_.points_per_axis; }
    Eigen::Index dimension() const { return dim_; }
    const MeshSpec& mesh() const { return mesh_; }
    const QuadratureRule& rule() const { return rule_; }
    const Params& params() const { return params_; }
    const Eigen::VectorXd& potential_diag() const { return potential_; }

    // y = H x. OpenMP-parallel over mesh planes; every output entry is owned
    // by one thread with a fixed summation order, so results are identical
    // for any worker count.
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

    // Serial reference of the same kernel, kept for testing and benchmarks.
    void apply_serial(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;

    // Dense materialization (column-by-column apply); M <= 12 envelope.
    Eigen::MatrixXd dense() const;

    // Closed-form diagonal of H (kinetic axis sums plus the cross-term
    // diagonal plus the potential); used as the Davidson preconditioner.
    Eigen::VectorXd diagonal() const;

    // Columns per row carrying a structural kinetic entry: those sharing at
    // least one axis index. Total stored/effective nonzeros is
    // dim * (3M^2 - 3M + 1) <= M^3 (3M^2 + 3M + 1).
    long structural_nonzeros() const;

    static int linear_index(int m, const BasisIndex& idx) {
        return (idx.i * m + idx.j) * m + idx.k;
    }

  private:
    void apply_impl(const double* x, double* y, bool parallel) const;

    MeshSpec mesh_;
    QuadratureRule rule_;
    Params params_;
    Eigen::Index dim_ = 0;
    double inv_mass_ = 1.0;

    Eigen::MatrixXd deriv_;              // cardinal derivative table D(i, n)
    Eigen::VectorXd scale_;              // N_ijk^{-1/2} over linear index
    Eigen::VectorXd potential_;          // physical V at mesh points
    std::vector<Eigen::MatrixXd> tx_;    // axis blocks, index j*M+k
    std::vector<Eigen::MatrixXd> ty_;    // index i*M+k
    std::vector<Eigen::MatrixXd> tz_;    // index i*M+j
    Eigen::VectorXd gxy_, gxz_, gyz_;    // cross coefficient tables, linear index
};

// Builds the operator; throws std::length_error beyond the M <= kMaxMeshOrder
// envelope and std::invalid_argument for non-positive physical parameters.
AssembledOperator assemble(const MeshSpec& mesh, const QuadratureRule& rule,
                           const SystemParams& params);
AssembledOperator assemble(const MeshSpec& mesh, const QuadratureRule& rule,
                           const GeneralizedParams& params);

}  // namespace h3b
