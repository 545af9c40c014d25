#pragma once

#include <vector>

#include <Eigen/Dense>

namespace h3b {

// Gauss-Laguerre rule of order M.
//
// Weight convention: `weights` are the classical weights, i.e.
//     sum_i weights[i] * G(nodes[i])  ~=  int_0^inf G(x) e^{-x} dx,
// exact for polynomials G of degree <= 2M-1, so sum(weights) == 1.
// `reg_weights[i] = weights[i] * exp(nodes[i])` absorb the e^{-x} factor:
//     sum_i reg_weights[i] * G(nodes[i])  ~=  int_0^inf G(x) dx.
// The Lagrange basis functions carry e^{-x/2} explicitly, so products of two
// basis factors pair with reg_weights in every quadrature sum below.
struct QuadratureRule {
    int order = 0;                    // M
    std::vector<double> nodes;        // zeros of L_M, strictly increasing
    std::vector<double> weights;      // classical weights, all > 0, sum = 1
    std::vector<double> reg_weights;  // weights[i] * exp(nodes[i])
};

// Mesh of M points per axis, physical coordinate = scale * node.
struct MeshSpec {
    int points_per_axis = 0;  // M, equal on all three axes
    double scale = 1.0;       // h > 0, perimetric length per dimensionless node
};

// Nodes via Golub-Welsch plus Newton polishing; weights from the closed form
// w_i = x_i / ((M+1) L_{M+1}(x_i))^2. Accurate to ~1e-14 relative for the
// supported envelope M <= 40. Throws std::invalid_argument for M < 1.
QuadratureRule gauss_laguerre_rule(int order);

// L_M(x) by the three-term recurrence.
double laguerre_value(int degree, double x);

// d/dx L_M(x), from L'_M(x) = M (L_M(x) - L_{M-1}(x)) / x (limit
// -M at x = 0).
double laguerre_deriv(int degree, double x);

// Regularized Lagrange-Laguerre function
//     f_i(x) = (-1)^(i+1) (x / sqrt(x_i)) L_M(x) / (x - x_i) e^{-x/2},
// i is a 0-based mesh index. Satisfies f_i(x_j) = reg_weights[i]^{-1/2} d_ij
// and f_i(0) = 0. Near x_i the removable singularity is evaluated by a
// second-order Taylor branch (window |x - x_i| < 1e-6 x_i).
double lagrange_fn(int i, double x, const QuadratureRule& rule);

// Plain (non-regularized) Lagrange-Laguerre function
//     g_i(x) = (-1)^(i+1) sqrt(x_i) L_M(x) / (x - x_i) e^{-x/2},
// same Lagrange conditions, but g_i(0) != 0. This is the cardinal basis the
// 3D Hamiltonian assembly expands in: the perimetric kinetic form degenerates
// linearly on the domain faces, where eigenfunctions stay finite, and a basis
// pinned to zero there loses the spectral convergence rate (see operator.hpp).
double cardinal_fn(int i, double x, const QuadratureRule& rule);

// D(i, j) = f'_i(x_j) for the regularized functions, closed form:
//   D(i,j) = (-1)^(i-j) sqrt(x_j/x_i) / ((x_j - x_i) sqrt(reg_weights[j]))
//   D(i,i) = 1 / (2 x_i sqrt(reg_weights[i]))
Eigen::MatrixXd lagrange_deriv_at_nodes(const QuadratureRule& rule);

// D(i, j) = g'_i(x_j) for the plain functions:
//   D(i,j) = (-1)^(i-j) sqrt(x_i/x_j) / ((x_j - x_i) sqrt(reg_weights[j]))
//   D(i,i) = -1 / (2 x_i sqrt(reg_weights[i]))
Eigen::MatrixXd cardinal_deriv_at_nodes(const QuadratureRule& rule);

}  // namespace h3b
