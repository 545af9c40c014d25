#pragma once

namespace h3b {

// Physical definition of the symmetric system, Hartree atomic units.
struct SystemParams {
    double mass = 1.0;         // m > 0
    double omega = 1.0;        // angular frequency > 0
    double rest_length = 0.0;  // R >= 0
};

// Pairwise couplings and rest lengths of the generalized potential.
// The nu_ij are dimensionless and may be negative.
struct GeneralizedParams {
    double nu12 = 1.0, nu13 = 1.0, nu23 = 1.0;
    double r12 = 1.0, r13 = 1.0, r23 = 1.0;  // rest lengths > 0
    double omega = 1.0;
};

// Inter-particle distances. A triple is geometrically valid iff
// area_squared(d) >= 0 (triangle inequality).
struct Distances {
    double r12 = 0.0, r13 = 0.0, r23 = 0.0;
};

// Perimetric chart: x = r12+r13-r23, y = r12-r13+r23, z = -r12+r13+r23.
// The triangle-inequality domain maps onto the independent octant [0,inf)^3.
struct PerimetricPoint {
    double x = 0.0, y = 0.0, z = 0.0;
};

// Throws std::domain_error when a perimetric component falls below -1e-12
// (non-physical geometry); components in [-1e-12, 0) are clamped to 0 as
// upstream roundoff.
PerimetricPoint perimetric_from_distances(const Distances& d);

Distances distances_from_perimetric(const PerimetricPoint& p);

// Heron: S^2 = (1/16)(r12+r13+r23)(x)(y)(z) in perimetric factors.
// Negative return signals a triangle-inequality violation.
double area_squared(const Distances& d);

// V_R = (3/2) m w^2 [(r12-R)^2 + (r13-R)^2 + (r23-R)^2]
double potential(const Distances& d, const SystemParams& p);

// Generalized three-spring potential, couplings nu_ij, rest lengths R_ij.
double potential_generalized(const Distances& d, const GeneralizedParams& g);

// 8 pi^2 r12 r13 r23, the radial measure density of the reduced problem.
double radial_measure_weight(const Distances& d);

// (x+y)(x+z)(y+z) = 8 r12 r13 r23; perimetric volume density up to the
// constant factor pi^2 the eigenproblem never sees.
double perimetric_volume_weight(const PerimetricPoint& p);

}  // namespace h3b
