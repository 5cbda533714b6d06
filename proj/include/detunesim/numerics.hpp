// numerics.hpp — dense Hermitian eigensolves, unitary propagation, a
// fixed-step RK4 Lindblad integrator, and a companion-matrix cubic solver.

#pragma once

#include "detunesim/types.hpp"

#include <array>
#include <functional>

namespace dsim::numerics {

struct EigDecomposition {
    Eigen::VectorXd eigenvalues;  // ascending
    ComplexMatrix eigenvectors;   // orthonormal columns, same order
};

// Throws SimError(NonHermitian) if the symmetry violation exceeds
// 1e-10 * max|M|; the message reports the violation.
EigDecomposition hermitian_eig(const ComplexMatrix& m);

// exp(-i t H) through the eigendecomposition of Hermitian H.
ComplexMatrix unitary_propagator(const ComplexMatrix& h, double t);

// Default integrator step: min(0.01/max_row_sum(H), span/2000).
double default_lindblad_step(const ComplexMatrix& h, double t0, double t1);

struct LindbladOptions {
    double step = 0.0;  // <= 0 selects the default rule
    // Hermitian operators whose expectation values are recorded per grid
    // point under the given series name.
    std::vector<std::pair<std::string, ComplexMatrix>> observables;
    bool record_diagnostics = true;
};

// Evolves drho/dt = -i[H,rho] + sum_k (L rho L^+ - 1/2 {L^+L, rho}) with
// fixed-step RK4. rho is taken at t_grid.front(); the grid must ascend.
// Metadata reports trace drift, minimum eigenvalue, and purity drift
// over the whole grid.
Trajectory integrate_lindblad(const ComplexMatrix& rho0,
                              const ComplexMatrix& h,
                              const std::vector<ComplexMatrix>& collapse_ops,
                              const std::vector<double>& t_grid,
                              const LindbladOptions& options = {});

// Roots of p^3 + c2 p^2 + c1 p + c0, via eigenvalues of the 3x3 companion
// matrix. Ordered by (real, imag) ascending.
std::array<Complex, 3> cubic_roots(double c2, double c1, double c0);

// Dense scan maximum of f over [t0, t1] (default 4001 uniform points,
// endpoints included). Resolution-limited by construction.
double scan_max(const std::function<double(double)>& f, double t0, double t1,
                int points = 4001);

} // namespace dsim::numerics
