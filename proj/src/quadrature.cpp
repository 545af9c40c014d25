#include "h3b/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace h3b {

double laguerre_value(int degree, double x) {
    if (degree == 0) return 1.0;
    double lm1 = 1.0;        // L_0
    double l = 1.0 - x;      // L_1
    for (int k = 1; k < degree; ++k) {
        double lp1 = ((2.0 * k + 1.0 - x) * l - k * lm1) / (k + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

double laguerre_deriv(int degree, double x) {
    if (degree == 0) return 0.0;
    if (std::abs(x) < 1e-300) return -static_cast<double>(degree);
    return degree * (laguerre_value(degree, x) - laguerre_value(degree - 1, x)) / x;
}

QuadratureRule gauss_laguerre_rule(int order) {
    if (order < 1) throw std::invalid_argument("gauss_laguerre_rule: order must be >= 1");
    const int m = order;

    // Golub-Welsch: Jacobi matrix of the Laguerre recurrence,
    // diagonal 2k+1, off-diagonal k.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k) {
        jac(k, k) = 2.0 * k + 1.0;
        if (k > 0) {
            jac(k, k - 1) = k;
            jac(k - 1, k) = k;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac, Eigen::EigenvaluesOnly);

    QuadratureRule rule;
    rule.order = m;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    rule.reg_weights.resize(m);
    for (int i = 0; i < m; ++i) {
        double x = es.eigenvalues()(i);
        // Newton polish; the QR eigenvalues of the Jacobi matrix carry an
        // absolute error ~1e-13 which is too coarse relative to the smallest
        // node at large M.
        for (int it = 0; it < 3; ++it) {
            double f = laguerre_value(m, x);
            double fp = laguerre_deriv(m, x);
            double step = f / fp;
            x -= step;
            if (std::abs(step) < 1e-16 * x) break;
        }
        rule.nodes[i] = x;
        double lnext = laguerre_value(m + 1, x);
        double w = x / ((m + 1.0) * (m + 1.0) * lnext * lnext);
        rule.weights[i] = w;
        rule.reg_weights[i] = w * std::exp(x);
    }
    return rule;
}

namespace {

// sign (-1)^(i+1) and the common tail of both basis flavors
double basis_common(int m, int i, double x, double xi) {
    double sign = (i % 2 == 0) ? -1.0 : 1.0;  // (-1)^(i+1), 0-based i
    return sign * laguerre_value(m, x) / (x - xi) * std::exp(-0.5 * x);
}

// L_M(x)/(x - x_i) near the node by Taylor expansion of L_M around x_i,
// second order, using the ODE x L'' + (1-x) L' + M L = 0 at the root.
double cardinal_core_near_node(int m, double x, double xi) {
    double lp = laguerre_deriv(m, xi);
    double lpp = (xi - 1.0) * lp / xi;
    double lppp = -((2.0 - xi) * lpp + (m - 1.0) * lp) / xi;
    double d = x - xi;
    return lp + 0.5 * lpp * d + lppp * d * d / 6.0;
}

}  // namespace

double lagrange_fn(int i, double x, const QuadratureRule& rule) {
    const int m = rule.order;
    const double xi = rule.nodes[i];
    if (std::abs(x - xi) < 1e-6 * xi) {
        double sign = (i % 2 == 0) ? -1.0 : 1.0;
        double core = cardinal_core_near_node(m, x, xi);
        return sign * x / std::sqrt(xi) * core * std::exp(-0.5 * x);
    }
    return x / std::sqrt(xi) * basis_common(m, i, x, xi);
}

double cardinal_fn(int i, double x, const QuadratureRule& rule) {
    const int m = rule.order;
    const double xi = rule.nodes[i];
    if (std::abs(x - xi) < 1e-6 * xi) {
        double sign = (i % 2 == 0) ? -1.0 : 1.0;
        double core = cardinal_core_near_node(m, x, xi);
        return sign * std::sqrt(xi) * core * std::exp(-0.5 * x);
    }
    return std::sqrt(xi) * basis_common(m, i, x, xi);
}

Eigen::MatrixXd lagrange_deriv_at_nodes(const QuadratureRule& rule) {
    const int m = rule.order;
    Eigen::MatrixXd d(m, m);
    for (int i = 0; i < m; ++i) {
        const double xi = rule.nodes[i];
        for (int j = 0; j < m; ++j) {
            const double xj = rule.nodes[j];
            const double rw = 1.0 / std::sqrt(rule.reg_weights[j]);
            if (i == j) {
                d(i, i) = rw / (2.0 * xi);
            } else {
                double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
                d(i, j) = sign * std::sqrt(xj / xi) * rw / (xj - xi);
            }
        }
    }
    return d;
}

Eigen::MatrixXd cardinal_deriv_at_nodes(const QuadratureRule& rule) {
    const int m = rule.order;
    Eigen::MatrixXd d(m, m);
    for (int i = 0; i < m; ++i) {
        const double xi = rule.nodes[i];
        for (int j = 0; j < m; ++j) {
            const double xj = rule.nodes[j];
            const double rw = 1.0 / std::sqrt(rule.reg_weights[j]);
            if (i == j) {
                d(i, i) = -rw / (2.0 * xi);
            } else {
                double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
                d(i, j) = sign * std::sqrt(xi / xj) * rw / (xj - xi);
            }
        }
    }
    return d;
}

}  // namespace h3b
