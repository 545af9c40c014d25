#pragma once

#include <utility>
#include <vector>

#include "h3b/geometry.hpp"

namespace h3b {

// Closed-form results of the R = 0 system, where the three-spring Hamiltonian
// separates in Jacobi coordinates and the full spectrum is E_N = 3w(2N+3).

// Jacobi-oscillator quantum numbers of an S-state: equal angular momenta
// l1 = l2 = l, opposite magnetic numbers s1 = -s2.
struct JacobiLabel {
    int n1 = 0, n2 = 0;  // radial
    int l = 0;           // common angular momentum
    int s1 = 0, s2 = 0;  // magnetic, s1 = -s2
};

// Quantum numbers of the rho-representation (polynomials in squared
// distances), N = N1 + N2 + N3.
struct RhoLabel {
    int n1 = 0, n2 = 0, n3 = 0;
};

// E_N = 3 w (2N + 3)
double energy_level(int level, double omega);

// 3 w (2(n1+n2) + 2l + 3); always equals energy_level(n1+n2+l, w).
double jacobi_energy(const JacobiLabel& label, double omega);

// g_N = (N+1)(N+2)/2
long degeneracy(int level);

// Number of distinct sub-levels the N-multiplet unfolds into for R > 0:
// (N(N+1) + 2)/2.
long split_count(int level);

// All degeneracy(N) label pairs of level N, s1 = s2 = 0, each representation
// enumerated in descending lexicographic order (deterministic output).
std::vector<std::pair<JacobiLabel, RhoLabel>> enumerate_labels(int level);

// Ground state (N = 0): c0(w) exp(-w/2 (rho12 + rho13 + rho23)), rho = r^2.
// Normalized to 1 over the S >= 0 domain with measure 8 pi^2 r12 r13 r23;
// c0 = 3^(3/4) w^(3/2) / pi^(3/2).
double psi0(const Distances& d, double omega);

// The three degenerate N = 1 states, k in {0, 1, 2} selecting rho12, rho13,
// rho23: c1(w) (1 - w rho) exp(-w/2 sum rho), c1 = 3^(5/4) w^(3/2) /
// (sqrt(2) pi^(3/2)), same normalization convention as psi0.
double psi1(int k, const Distances& d, double omega);

}  // namespace h3b
