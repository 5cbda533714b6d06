// propagators.hpp — closed-form time evolution for the collective models
// and the eps-expansion machinery for the two-photon nonresonant case.

#pragma once

#include "detunesim/models.hpp"
#include "detunesim/types.hpp"

#include <array>

namespace dsim::propagators {

// theta = 2 sqrt(N) g / Delta, alpha = sqrt(1 + theta^2),
// beta = theta / sqrt(1 + theta^2) (so beta^2 = theta^2/(1+theta^2)).
struct TwoLevelClosedForm {
    double theta = 0.0;
    double alpha = 1.0;
    double beta = 0.0;

    static TwoLevelClosedForm from(const models::TwoLevelParams& p);

    // Full period of the sin^2 oscillation, 2*pi/(alpha*Delta).
    double period(const models::TwoLevelParams& p) const;
};

// alpha = sqrt(4Ng^2 + 4W^2 + D^2)/D, beta = 2 sqrt(N) g / (alpha D),
// gamma = 2 W / (alpha D); bright/dark weights of the two lower states.
struct LambdaClosedForm {
    double alpha = 1.0;
    double beta = 0.0;
    double gamma = 0.0;
    double weight_bright = 0.0;  // N g^2 / (N g^2 + W^2)
    double weight_dark = 0.0;    // W^2 / (N g^2 + W^2)

    static LambdaClosedForm from(const models::LambdaParams& p);

    double period(const models::LambdaParams& p) const;
};

// 2x2 closed-form propagator [[A-, B], [B, A+]] with
// A+- = cos(aDt/2) +- (i/a) sin(aDt/2), B = -i b sin(aDt/2).
// Equals unitary_propagator(two_level_collective_h, t).
ComplexMatrix two_level_u(const models::TwoLevelParams& p, double t);

// Peak |+> -> |-> transfer probability, beta^2 = theta^2/(1+theta^2).
double max_leakage_two_level(const models::TwoLevelParams& p);

// 3x3 closed-form propagator for the two-photon resonant case, with the
// global e^{-itD/2} factor stripped. Symmetric (U = U^T) and unitary;
// equals unitary_propagator(lambda_resonant_h, t) * e^{+itD/2}.
ComplexMatrix lambda_resonant_u(const models::LambdaParams& p, double t);

// Peak |u2> -> |u1> transfer, beta^2 = 4Ng^2/(4Ng^2 + 4W^2 + D^2).
double max_leakage_lambda_resonant(const models::LambdaParams& p);

// eps = max(|d|/|D|, sqrt(N)g/|D|, W/|D|); lambda * eps = d/D etc.
struct ReducedVariables {
    double epsilon = 0.0;
    double lambda = 0.0;    // Raman detuning scale
    double lambda_c = 0.0;  // collective coupling scale
    double lambda_l = 0.0;  // drive scale
};

// Throws SimError(DegenerateScale) when d = W = 0 and g = 0 has no scale
// (all three ratios zero).
ReducedVariables reduce_variables(const models::LambdaParams& p);

// Coefficients (c2, c1, c0) of the reduced eigenfrequency cubic
// p^3 + c2 p^2 + c1 p + c0 built from the reduced variables.
std::array<double, 3> nonresonant_cubic_coefficients(const ReducedVariables& rv);

using Amplitudes = std::array<Complex, 3>;  // (alpha0, beta0, gamma0)

// Spectral decomposition of the nonresonant evolution: three reduced
// eigenfrequencies p_j (units of Delta) and the coefficient triple each
// basis amplitude carries on every branch.
struct NonresonantSolution {
    std::array<double, 3> roots{};      // p_1, p_2, p_3
    Amplitudes alpha_coeffs{};          // |u1> coefficients per branch
    Amplitudes beta_coeffs{};           // |u2>
    Amplitudes gamma_coeffs{};          // |u3>
    bool perturbative = false;
    // perturbative-path flags (see lambda_nonresonant_perturbative)
    bool epsilon_warning = false;
    bool outside_validity = false;
    bool lambda_singular = false;
};

// Exact path: diagonalizes the 3x3 nonresonant Hamiltonian; roots come
// out in ascending eigenvalue order. The trajectory records pop_u1,
// pop_u2, pop_u3 on the grid; metadata records the norm drift.
std::pair<Trajectory, NonresonantSolution>
lambda_nonresonant_exact(const models::LambdaParams& p, const Amplitudes& initial,
                         const std::vector<double>& t_grid);

// First-order expansions: roots (1 + l*e, 0, l*e) and the coefficient
// triples truncated at O(e). Flags rather than throws:
//   epsilon_warning  — eps >= 0.2
//   outside_validity — |l| e <= l_c l_l e^2 (too close to two-photon
//                      resonance for the 1/l coefficients)
//   lambda_singular  — l == 0 with a nonzero 1/l numerator; the affected
//                      coefficients are NaN.
NonresonantSolution
lambda_nonresonant_perturbative(const models::LambdaParams& p,
                                const Amplitudes& initial);

// Bijective assignment of exact roots to expansion branches, greedy by
// ascending pairwise distance. result[j] = index of the exact root
// assigned to branch j. Throws SimError(BranchAssignment) when a 1e-12
// distance tie makes the assignment ambiguous.
std::array<int, 3> match_branches(const std::array<double, 3>& exact_roots,
                                  const std::array<double, 3>& expansion_roots);

} // namespace dsim::propagators
