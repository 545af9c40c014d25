#include "h3b/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace h3b {

namespace {
constexpr double kBoundaryTol = 1e-12;

double clamp_component(double v) {
    if (v < 0.0) {
        if (v < -kBoundaryTol)
            throw std::domain_error("perimetric_from_distances: triangle inequality violated");
        return 0.0;
    }
    return v;
}
}  // namespace

PerimetricPoint perimetric_from_distances(const Distances& d) {
    PerimetricPoint p;
    p.x = clamp_component(d.r12 + d.r13 - d.r23);
    p.y = clamp_component(d.r12 - d.r13 + d.r23);
    p.z = clamp_component(-d.r12 + d.r13 + d.r23);
    return p;
}

Distances distances_from_perimetric(const PerimetricPoint& p) {
    return {0.5 * (p.x + p.y), 0.5 * (p.x + p.z), 0.5 * (p.y + p.z)};
}

double area_squared(const Distances& d) {
    return (d.r12 + d.r13 + d.r23) * (d.r12 + d.r13 - d.r23) * (d.r12 - d.r13 + d.r23) *
           (-d.r12 + d.r13 + d.r23) / 16.0;
}

double potential(const Distances& d, const SystemParams& p) {
    double a = d.r12 - p.rest_length;
    double b = d.r13 - p.rest_length;
    double c = d.r23 - p.rest_length;
    return 1.5 * p.mass * p.omega * p.omega * (a * a + b * b + c * c);
}

double potential_generalized(const Distances& d, const GeneralizedParams& g) {
    double a = d.r12 - g.r12;
    double b = d.r13 - g.r13;
    double c = d.r23 - g.r23;
    return 1.5 * g.omega * g.omega * (g.nu12 * a * a + g.nu13 * b * b + g.nu23 * c * c);
}

double radial_measure_weight(const Distances& d) {
    return 8.0 * M_PI * M_PI * d.r12 * d.r13 * d.r23;
}

double perimetric_volume_weight(const PerimetricPoint& p) {
    return (p.x + p.y) * (p.x + p.z) * (p.y + p.z);
}

}  // namespace h3b
