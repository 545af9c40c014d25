#include "h3b/operator.hpp"

#include <cmath>
#include <stdexcept>

namespace h3b {

std::array<std::array<double, 3>, 3> a_coefficients(double x, double y, double z) {
    std::array<std::array<double, 3>, 3> a{};
    double s = x + y + z;
    a[0][0] = x * (y + z) * s + x * z * (x + z) + x * y * (x + y);
    a[1][1] = y * z * (y + z) + y * (x + z) * s + x * y * (x + y);
    a[2][2] = y * z * (y + z) + x * z * (x + z) + z * (x + y) * s;
    a[0][1] = a[1][0] = -x * y * (x + y);
    a[0][2] = a[2][0] = -x * z * (x + z);
    a[1][2] = a[2][1] = -y * z * (y + z);
    return a;
}

double normalization(const BasisIndex& idx, const MeshSpec& mesh, const QuadratureRule& rule) {
    const double h = mesh.scale;
    const double xi = h * rule.nodes[idx.i];
    const double yj = h * rule.nodes[idx.j];
    const double zk = h * rule.nodes[idx.k];
    return h * h * h * (xi + yj) * (xi + zk) * (yj + zk);
}

double kinetic_element(const BasisIndex& row, const BasisIndex& col, const MeshSpec& mesh,
                       const QuadratureRule& rule, const Eigen::MatrixXd& deriv) {
    const int m = rule.order;
    const double h = mesh.scale;
    const auto& lam = rule.reg_weights;
    auto X = [&](int t) { return h * rule.nodes[t]; };

    const int i2 = row.i, j2 = row.j, k2 = row.k;  // primed (row) indices
    const int i = col.i, j = col.j, k = col.k;

    double sum = 0.0;
    if (j == j2 && k == k2) {
        for (int n = 0; n < m; ++n) {
            auto a = a_coefficients(X(n), X(j), X(k));
            sum += lam[n] * a[0][0] * deriv(i, n) * deriv(i2, n);
        }
    }
    if (i == i2 && k == k2) {
        for (int n = 0; n < m; ++n) {
            auto a = a_coefficients(X(i), X(n), X(k));
            sum += lam[n] * a[1][1] * deriv(j, n) * deriv(j2, n);
        }
    }
    if (i == i2 && j == j2) {
        for (int n = 0; n < m; ++n) {
            auto a = a_coefficients(X(i), X(j), X(n));
            sum += lam[n] * a[2][2] * deriv(k, n) * deriv(k2, n);
        }
    }
    if (k == k2) {
        sum += std::sqrt(lam[i] * lam[j2]) * a_coefficients(X(i), X(j2), X(k))[0][1] *
               deriv(i2, i) * deriv(j, j2);
        sum += std::sqrt(lam[i2] * lam[j]) * a_coefficients(X(i2), X(j), X(k))[0][1] *
               deriv(i, i2) * deriv(j2, j);
    }
    if (j == j2) {
        sum += std::sqrt(lam[i] * lam[k2]) * a_coefficients(X(i), X(j), X(k2))[0][2] *
               deriv(i2, i) * deriv(k, k2);
        sum += std::sqrt(lam[i2] * lam[k]) * a_coefficients(X(i2), X(j), X(k))[0][2] *
               deriv(i, i2) * deriv(k2, k);
    }
    if (i == i2) {
        sum += std::sqrt(lam[j] * lam[k2]) * a_coefficients(X(i), X(j), X(k2))[1][2] *
               deriv(j2, j) * deriv(k, k2);
        sum += std::sqrt(lam[j2] * lam[k]) * a_coefficients(X(i), X(j2), X(k))[1][2] *
               deriv(j, j2) * deriv(k2, k);
    }

    // prefactor 2 N^-1/2 N'^-1/2 h^3, with the two h^-2 of the per-term sums
    // folded in: h^3 h^-2 = h
    double norm = std::sqrt(normalization(row, mesh, rule) * normalization(col, mesh, rule));
    return 2.0 * h * sum / norm;
}

double potential_diagonal(const BasisIndex& idx, const MeshSpec& mesh, const QuadratureRule& rule,
                          const SystemParams& params) {
    const double h = mesh.scale;
    PerimetricPoint p{h * rule.nodes[idx.i], h * rule.nodes[idx.j], h * rule.nodes[idx.k]};
    return potential(distances_from_perimetric(p), params);
}

double potential_diagonal(const BasisIndex& idx, const MeshSpec& mesh, const QuadratureRule& rule,
                          const GeneralizedParams& params) {
    const double h = mesh.scale;
    PerimetricPoint p{h * rule.nodes[idx.i], h * rule.nodes[idx.j], h * rule.nodes[idx.k]};
    return potential_generalized(distances_from_perimetric(p), params);
}

namespace {

void validate(const MeshSpec& mesh, const QuadratureRule& rule) {
    if (mesh.points_per_axis < 2) throw std::invalid_argument("assemble: M must be >= 2");
    if (mesh.points_per_axis > kMaxMeshOrder)
        throw std::length_error("assemble: M beyond the supported envelope (M <= 40)");
    if (!(mesh.scale > 0.0)) throw std::invalid_argument("assemble: scale h must be > 0");
    if (rule.order != mesh.points_per_axis)
        throw std::invalid_argument("assemble: quadrature order != mesh points per axis");
}

}  // namespace

AssembledOperator::AssembledOperator(const MeshSpec& mesh, const QuadratureRule& rule,
                                     const Params& params)
    : mesh_(mesh), rule_(rule), params_(params) {
    validate(mesh, rule);
    const int m = mesh.points_per_axis;
    const double h = mesh.scale;
    dim_ = static_cast<Eigen::Index>(m) * m * m;

    if (std::holds_alternative<SystemParams>(params_)) {
        const auto& sp = std::get<SystemParams>(params_);
        if (!(sp.mass > 0.0) || !(sp.omega > 0.0) || sp.rest_length < 0.0)
            throw std::invalid_argument("assemble: need m > 0, omega > 0, R >= 0");
        inv_mass_ = 1.0 / sp.mass;
    } else {
        const auto& gp = std::get<GeneralizedParams>(params_);
        if (!(gp.omega > 0.0) || !(gp.r12 > 0.0) || !(gp.r13 > 0.0) || !(gp.r23 > 0.0))
            throw std::invalid_argument("assemble: need omega > 0 and rest lengths > 0");
        inv_mass_ = 1.0;
    }

    deriv_ = cardinal_deriv_at_nodes(rule_);

    scale_.resize(dim_);
    potential_.resize(dim_);
    gxy_.resize(dim_);
    gxz_.resize(dim_);
    gyz_.resize(dim_);
    Eigen::VectorXd ax(dim_), ay(dim_), az(dim_);

    const double pref = 2.0 * h * inv_mass_;
    for (int i = 0; i < m; ++i) {
        const double xi = h * rule_.nodes[i];
        for (int j = 0; j < m; ++j) {
            const double yj = h * rule_.nodes[j];
            for (int k = 0; k < m; ++k) {
                const double zk = h * rule_.nodes[k];
                const Eigen::Index lin = (static_cast<Eigen::Index>(i) * m + j) * m + k;
                auto a = a_coefficients(xi, yj, zk);
                BasisIndex idx{i, j, k};
                scale_(lin) = 1.0 / std::sqrt(normalization(idx, mesh_, rule_));
                if (std::holds_alternative<SystemParams>(params_))
                    potential_(lin) =
                        potential_diagonal(idx, mesh_, rule_, std::get<SystemParams>(params_));
                else
                    potential_(lin) =
                        potential_diagonal(idx, mesh_, rule_, std::get<GeneralizedParams>(params_));
                // axis tables: quadrature node sits in the slot being contracted
                ax(lin) = pref * rule_.reg_weights[i] * a[0][0];
                ay(lin) = pref * rule_.reg_weights[j] * a[1][1];
                az(lin) = pref * rule_.reg_weights[k] * a[2][2];
                gxy_(lin) = pref * std::sqrt(rule_.reg_weights[i] * rule_.reg_weights[j]) * a[0][1];
                gxz_(lin) = pref * std::sqrt(rule_.reg_weights[i] * rule_.reg_weights[k]) * a[0][2];
                gyz_(lin) = pref * std::sqrt(rule_.reg_weights[j] * rule_.reg_weights[k]) * a[1][2];
            }
        }
    }

    // Axis Gram blocks B = D diag(c) D^T per transverse plane, symmetrized.
    tx_.assign(m * m, Eigen::MatrixXd());
    ty_.assign(m * m, Eigen::MatrixXd());
    tz_.assign(m * m, Eigen::MatrixXd());
#pragma omp parallel for schedule(static)
    for (int plane = 0; plane < m * m; ++plane) {
        const int a1 = plane / m;  // j for tx, i for ty/tz
        const int a2 = plane % m;  // k for tx/ty, j for tz
        Eigen::VectorXd cx(m), cy(m), cz(m);
        for (int n = 0; n < m; ++n) {
            cx(n) = ax((static_cast<Eigen::Index>(n) * m + a1) * m + a2);
            cy(n) = ay((static_cast<Eigen::Index>(a1) * m + n) * m + a2);
            cz(n) = az((static_cast<Eigen::Index>(a1) * m + a2) * m + n);
        }
        Eigen::MatrixXd bx = deriv_ * cx.asDiagonal() * deriv_.transpose();
        Eigen::MatrixXd by = deriv_ * cy.asDiagonal() * deriv_.transpose();
        Eigen::MatrixXd bz = deriv_ * cz.asDiagonal() * deriv_.transpose();
        tx_[plane] = 0.5 * (bx + bx.transpose());
        ty_[plane] = 0.5 * (by + by.transpose());
        tz_[plane] = 0.5 * (bz + bz.transpose());
    }
}

namespace {

// out(p, c) = sum_t coef(p, t) in(t, c) along the x (slowest) axis
void mul_x(const Eigen::MatrixXd& coef, const double* in, double* out, int m, bool par) {
    const long m2 = static_cast<long>(m) * m;
#pragma omp parallel for schedule(static) if (par)
    for (int p = 0; p < m; ++p) {
        double* o = out + p * m2;
        for (long c = 0; c < m2; ++c) o[c] = 0.0;
        for (int t = 0; t < m; ++t) {
            const double a = coef(p, t);
            const double* s = in + t * m2;
            for (long c = 0; c < m2; ++c) o[c] += a * s[c];
        }
    }
}

// out(i, p, k) = sum_t coef(p, t) in(i, t, k)
void mul_y(const Eigen::MatrixXd& coef, const double* in, double* out, int m, bool par) {
    const long m2 = static_cast<long>(m) * m;
#pragma omp parallel for schedule(static) if (par)
    for (int i = 0; i < m; ++i) {
        double* oi = out + i * m2;
        const double* si = in + i * m2;
        for (int p = 0; p < m; ++p) {
            double* o = oi + p * m;
            for (int k = 0; k < m; ++k) o[k] = 0.0;
            for (int t = 0; t < m; ++t) {
                const double a = coef(p, t);
                const double* s = si + t * m;
                for (int k = 0; k < m; ++k) o[k] += a * s[k];
            }
        }
    }
}

// out(i, j, p) = sum_t coef(p, t) in(i, j, t)
void mul_z(const Eigen::MatrixXd& coef, const double* in, double* out, int m, bool par) {
    const long m2 = static_cast<long>(m) * m;
#pragma omp parallel for schedule(static) if (par)
    for (long r = 0; r < m2; ++r) {
        double* o = out + r * m;
        const double* s = in + r * m;
        for (int p = 0; p < m; ++p) {
            double acc = 0.0;
            for (int t = 0; t < m; ++t) acc += coef(p, t) * s[t];
            o[p] = acc;
        }
    }
}

}  // namespace

void AssembledOperator::apply_impl(const double* x, double* y, bool par) const {
    const int m = mesh_.points_per_axis;
    const long n = dim_;
    const long m2 = static_cast<long>(m) * m;

    Eigen::VectorXd u(n), tx(n), ty(n), tz(n), w(n), acc(n);
#pragma omp parallel for schedule(static) if (par)
    for (long l = 0; l < n; ++l) u(l) = scale_(l) * x[l];

    const Eigen::MatrixXd dt = deriv_.transpose();
    // t_a = D^T applied along axis a; shared by the axis and cross terms
    mul_x(dt, u.data(), tx.data(), m, par);
    mul_y(dt, u.data(), ty.data(), m, par);
    mul_z(dt, u.data(), tz.data(), m, par);

    // axis terms through the stored Gram blocks
#pragma omp parallel for schedule(static) if (par)
    for (long plane = 0; plane < m2; ++plane) {
        const int j = static_cast<int>(plane / m);
        const int k = static_cast<int>(plane % m);
        Eigen::VectorXd in(m), out(m);
        for (int i = 0; i < m; ++i) in(i) = u(i * m2 + j * static_cast<long>(m) + k);
        out.noalias() = tx_[plane] * in;
        for (int i = 0; i < m; ++i) acc(i * m2 + j * static_cast<long>(m) + k) = out(i);
    }
#pragma omp parallel for schedule(static) if (par)
    for (int i = 0; i < m; ++i) {
        Eigen::VectorXd in(m), out(m);
        for (int k = 0; k < m; ++k) {
            for (int j = 0; j < m; ++j) in(j) = u(i * m2 + j * static_cast<long>(m) + k);
            out.noalias() = ty_[i * m + k] * in;
            for (int j = 0; j < m; ++j) acc(i * m2 + j * static_cast<long>(m) + k) += out(j);
        }
    }
#pragma omp parallel for schedule(static) if (par)
    for (long r = 0; r < m2; ++r) {
        Eigen::Map<const Eigen::VectorXd> in(u.data() + r * m, m);
        Eigen::Map<Eigen::VectorXd> out(acc.data() + r * m, m);
        out.noalias() += tz_[r] * in;
    }

    // cross terms: D applied along one axis of (g table * t of the other axis)
    auto add_cross = [&](const Eigen::VectorXd& g, const Eigen::VectorXd& t,
                         void (*mul)(const Eigen::MatrixXd&, const double*, double*, int, bool)) {
#pragma omp parallel for schedule(static) if (par)
        for (long l = 0; l < n; ++l) w(l) = g(l) * t(l);
        Eigen::VectorXd tmp(n);
        mul(deriv_, w.data(), tmp.data(), m, par);
#pragma omp parallel for schedule(static) if (par)
        for (long l = 0; l < n; ++l) acc(l) += tmp(l);
    };
    add_cross(gxy_, ty, &mul_x);
    add_cross(gxy_, tx, &mul_y);
    add_cross(gxz_, tz, &mul_x);
    add_cross(gxz_, tx, &mul_z);
    add_cross(gyz_, tz, &mul_y);
    add_cross(gyz_, ty, &mul_z);

#pragma omp parallel for schedule(static) if (par)
    for (long l = 0; l < n; ++l) y[l] = scale_(l) * acc(l) + potential_(l) * x[l];
}

void AssembledOperator::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    y.resize(dim_);
    apply_impl(x.data(), y.data(), true);
}

Eigen::VectorXd AssembledOperator::apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y(dim_);
    apply_impl(x.data(), y.data(), true);
    return y;
}

void AssembledOperator::apply_serial(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    y.resize(dim_);
    apply_impl(x.data(), y.data(), false);
}

Eigen::MatrixXd AssembledOperator::dense() const {
    Eigen::MatrixXd h(dim_, dim_);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim_);
    Eigen::VectorXd col(dim_);
    for (Eigen::Index c = 0; c < dim_; ++c) {
        e(c) = 1.0;
        apply_impl(e.data(), col.data(), false);
        h.col(c) = col;
        e(c) = 0.0;
    }
    return h;
}

Eigen::VectorXd AssembledOperator::diagonal() const {
    const int m = mesh_.points_per_axis;
    Eigen::VectorXd diag(dim_);
    const double h = mesh_.scale;
    const double pref = 2.0 * h * inv_mass_;
    for (int i = 0; i < m; ++i) {
        const double xi = h * rule_.nodes[i];
        for (int j = 0; j < m; ++j) {
            const double yj = h * rule_.nodes[j];
            for (int k = 0; k < m; ++k) {
                const double zk = h * rule_.nodes[k];
                const Eigen::Index lin = (static_cast<Eigen::Index>(i) * m + j) * m + k;
                double kin = 0.0;
                for (int n = 0; n < m; ++n) {
                    const double xn = h * rule_.nodes[n];
                    const double w = pref * rule_.reg_weights[n];
                    kin += w * a_coefficients(xn, yj, zk)[0][0] * deriv_(i, n) * deriv_(i, n);
                    kin += w * a_coefficients(xi, xn, zk)[1][1] * deriv_(j, n) * deriv_(j, n);
                    kin += w * a_coefficients(xi, yj, xn)[2][2] * deriv_(k, n) * deriv_(k, n);
                }
                kin += 2.0 * gxy_(lin) * deriv_(i, i) * deriv_(j, j);
                kin += 2.0 * gxz_(lin) * deriv_(i, i) * deriv_(k, k);
                kin += 2.0 * gyz_(lin) * deriv_(j, j) * deriv_(k, k);
                diag(lin) = scale_(lin) * scale_(lin) * kin + potential_(lin);
            }
        }
    }
    return diag;
}

long AssembledOperator::structural_nonzeros() const {
    const long m = mesh_.points_per_axis;
    return m * m * m * (3 * m * m - 3 * m + 1);
}

AssembledOperator assemble(const MeshSpec& mesh, const QuadratureRule& rule,
                           const SystemParams& params) {
    return AssembledOperator(mesh, rule, AssembledOperator::Params(params));
}

AssembledOperator assemble(const MeshSpec& mesh, const QuadratureRule& rule,
                           const GeneralizedParams& params) {
    return AssembledOperator(mesh, rule, AssembledOperator::Params(params));
}

}  // namespace h3b
