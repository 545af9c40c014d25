#include "h3b/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace h3b {

double energy_level(int level, double omega) {
    return 3.0 * omega * (2.0 * level + 3.0);
}

double jacobi_energy(const JacobiLabel& label, double omega) {
    return 3.0 * omega * (2.0 * (label.n1 + label.n2) + 2.0 * label.l + 3.0);
}

long degeneracy(int level) {
    return static_cast<long>(level + 1) * (level + 2) / 2;
}

long split_count(int level) {
    return (static_cast<long>(level) * (level + 1) + 2) / 2;
}

std::vector<std::pair<JacobiLabel, RhoLabel>> enumerate_labels(int level) {
    std::vector<std::pair<JacobiLabel, RhoLabel>> out;
    out.reserve(degeneracy(level));
    // descending lexicographic triples (a, b, c) with a + b + c = level
    for (int a = level; a >= 0; --a) {
        for (int b = level - a; b >= 0; --b) {
            int c = level - a - b;
            JacobiLabel j{a, b, c, 0, 0};
            RhoLabel r{a, b, c};
            out.emplace_back(j, r);
        }
    }
    return out;
}

namespace {
double gaussian_factor(const Distances& d, double omega) {
    double s = d.r12 * d.r12 + d.r13 * d.r13 + d.r23 * d.r23;
    return std::exp(-0.5 * omega * s);
}
}  // namespace

double psi0(const Distances& d, double omega) {
    double c0 = std::pow(3.0, 0.75) * std::pow(omega, 1.5) / std::pow(M_PI, 1.5);
    return c0 * gaussian_factor(d, omega);
}

double psi1(int k, const Distances& d, double omega) {
    double rho;
    switch (k) {
        case 0: rho = d.r12 * d.r12; break;
        case 1: rho = d.r13 * d.r13; break;
        case 2: rho = d.r23 * d.r23; break;
        default: throw std::invalid_argument("psi1: k must be 0, 1 or 2");
    }
    double c1 = std::pow(3.0, 1.25) * std::pow(omega, 1.5) /
                (std::sqrt(2.0) * std::pow(M_PI, 1.5));
    return c1 * (1.0 - omega * rho) * gaussian_factor(d, omega);
}

}  // namespace h3b
