#include "h3b/approx.hpp"

#include <cmath>
#include <vector>

namespace h3b {

double pt_ground_energy(double omega, double rest) {
    return 9.0 * omega + (3.0 * omega / (2.0 * M_PI)) *
                             (3.0 * M_PI * omega * rest * rest -
                              4.0 * rest * std::sqrt(6.0 * M_PI * omega));
}

double pt_stationary_radius(double omega) {
    return 2.0 * std::sqrt(2.0 / (3.0 * M_PI * omega));
}

PotentialSplit potential_split(const Distances& d, double omega, double rest) {
    PotentialSplit s;
    double w2 = omega * omega;
    s.solvable = 1.5 * w2 * (d.r12 * d.r12 + d.r13 * d.r13 + d.r23 * d.r23);
    s.linear = -3.0 * w2 * rest * (d.r12 + d.r13 + d.r23);
    s.constant = 4.5 * w2 * rest * rest;
    return s;
}

double trial_value(const VariationalParams& vp, const Distances& d, const SystemParams& params) {
    double c = vp.beta * params.rest_length;
    double a = d.r12 - c, b = d.r13 - c, e = d.r23 - c;
    return std::exp(-0.5 * vp.alpha * params.omega * (a * a + b * b + e * e));
}

struct VariationalEvaluator::Impl {
    SystemParams params;
    MeshSpec mesh;
    AssembledOperator op;
    // mesh distances and projection weights sqrt(h^3 lam^3 N) per point
    std::vector<Distances> dist;
    Eigen::VectorXd weight;
    // refined rule for the resolution check
    QuadratureRule fine;
    double fine_scale;

    Impl(const SystemParams& p, const MeshSpec& m)
        : params(p), mesh(m), op(assemble(m, gauss_laguerre_rule(m.points_per_axis), p)) {
        const int mm = m.points_per_axis;
        const auto& rule = op.rule();
        dist.resize(op.dimension());
        weight.resize(op.dimension());
        for (int i = 0; i < mm; ++i)
            for (int j = 0; j < mm; ++j)
                for (int k = 0; k < mm; ++k) {
                    BasisIndex idx{i, j, k};
                    Eigen::Index lin = AssembledOperator::linear_index(mm, idx);
                    PerimetricPoint pp{m.scale * rule.nodes[i], m.scale * rule.nodes[j],
                                       m.scale * rule.nodes[k]};
                    dist[lin] = distances_from_perimetric(pp);
                    double lam3 = rule.reg_weights[i] * rule.reg_weights[j] * rule.reg_weights[k];
                    double h3 = m.scale * m.scale * m.scale;
                    weight(lin) = std::sqrt(h3 * lam3 * normalization(idx, m, rule));
                }
        fine = gauss_laguerre_rule(std::min(2 * mm + 8, 2 * kMaxMeshOrder + 8));
        // keep the refined rule on the same physical extent
        fine_scale = m.scale * rule.nodes.back() / fine.nodes.back();
    }

    Eigen::VectorXd project(const VariationalParams& vp) const {
        Eigen::VectorXd c(op.dimension());
        for (Eigen::Index l = 0; l < op.dimension(); ++l)
            c(l) = weight(l) * trial_value(vp, dist[l], params);
        return c;
    }

    double norm_fine(const VariationalParams& vp) const {
        // int psi^2 P dx dy dz on the refined rule
        const int n = fine.order;
        const double h = fine_scale;
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double xi = h * fine.nodes[i];
            double wi = h * fine.reg_weights[i];
            for (int j = 0; j < n; ++j) {
                double yj = h * fine.nodes[j];
                double wj = h * fine.reg_weights[j];
                for (int k = 0; k < n; ++k) {
                    double zk = h * fine.nodes[k];
                    double wk = h * fine.reg_weights[k];
                    PerimetricPoint pp{xi, yj, zk};
                    double psi = trial_value(vp, distances_from_perimetric(pp), params);
                    total += wi * wj * wk * psi * psi * perimetric_volume_weight(pp);
                }
            }
        }
        return total;
    }
};

VariationalEvaluator::VariationalEvaluator(const SystemParams& params, const MeshSpec& mesh)
    : impl_(std::make_unique<Impl>(params, mesh)) {}
VariationalEvaluator::~VariationalEvaluator() = default;
VariationalEvaluator::VariationalEvaluator(VariationalEvaluator&&) noexcept = default;

double VariationalEvaluator::energy(const VariationalParams& vp) const {
    Eigen::VectorXd c = impl_->project(vp);
    Eigen::VectorXd hc(c.size());
    impl_->op.apply_serial(c, hc);
    return c.dot(hc) / c.squaredNorm();
}

double VariationalEvaluator::resolution_defect(const VariationalParams& vp) const {
    double coarse = impl_->project(vp).squaredNorm();
    double fine = impl_->norm_fine(vp);
    return std::abs(coarse - fine) / fine;
}

const AssembledOperator& VariationalEvaluator::op() const { return impl_->op; }

double variational_energy(const VariationalParams& vp, const SystemParams& params,
                          const MeshSpec& mesh) {
    VariationalEvaluator ev(params, mesh);
    double defect = ev.resolution_defect(vp);
    if (defect > 1e-6)
        throw ResolutionError("variational_energy: trial function not resolved by the mesh "
                              "(norm defect " +
                              std::to_string(defect) + ")");
    return ev.energy(vp);
}

std::pair<VariationalParams, double> optimize_variational(const SystemParams& params,
                                                          const MeshSpec& mesh) {
    VariationalEvaluator ev(params, mesh);

    // 0.005-step grid over the unit square
    const int steps = 200;
    const double grid = 1.0 / steps;
    std::vector<double> energies(static_cast<std::size_t>(steps + 1) * (steps + 1));
#pragma omp parallel for schedule(dynamic, 4)
    for (int ia = 0; ia <= steps; ++ia) {
        for (int ib = 0; ib <= steps; ++ib) {
            VariationalParams vp{ia * grid, ib * grid};
            // alpha = 0 makes the trial constant and meaningless; skip row 0
            energies[static_cast<std::size_t>(ia) * (steps + 1) + ib] =
                ia == 0 ? 1e300 : ev.energy(vp);
        }
    }
    int best = 0;
    for (std::size_t l = 1; l < energies.size(); ++l)
        if (energies[l] < energies[best]) best = static_cast<int>(l);
    VariationalParams vp{(best / (steps + 1)) * grid, (best % (steps + 1)) * grid};
    double e = energies[best];

    // compass refinement, shrink to 1e-5
    double step = 0.0025;
    auto clamp01 = [](double v) { return std::min(1.0, std::max(0.0, v)); };
    while (step >= 1e-5) {
        bool moved = false;
        const double da[4] = {step, -step, 0.0, 0.0};
        const double db[4] = {0.0, 0.0, step, -step};
        for (int d = 0; d < 4; ++d) {
            VariationalParams cand{clamp01(vp.alpha + da[d]), clamp01(vp.beta + db[d])};
            if (cand.alpha == 0.0) continue;
            double ec = ev.energy(cand);
            if (ec < e) {
                e = ec;
                vp = cand;
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    return {vp, e};
}

}  // namespace h3b
