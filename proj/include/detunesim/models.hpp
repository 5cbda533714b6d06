// models.hpp — parameter sets, collective basis states, and every
// Hamiltonian builder: collective-subspace, full tensor-product, and
// dispersive effective forms.
//
// Basis conventions (fixed for the whole library):
//   two-level collective: (|+> = |E>|0>, |-> = |G>|1>), plus |G0> = |G>|0>
//     where the decay models need an absorbing state.
//   lambda collective:    (|u1> = |E>|0>, |u2> = |G>|1>, |u3> = |S>|0>).
//   full space: atom 1 is the slowest index, the field mode the fastest;
//     single-atom levels are ordered |g>=0, |e>=1 (two-level) and
//     |g>=0, |s>=1, |e>=2 (lambda).

#pragma once

#include "detunesim/types.hpp"

namespace dsim::models {

struct TwoLevelParams {
    int n_atoms = 1;      // N
    double g = 1.0;       // atom-cavity coupling, units of g = 1
    double delta = 10.0;  // detuning
    double kappa = 0.0;   // cavity decay rate
    double gamma = 0.0;   // atomic spontaneous emission rate

    // Throws SimError(ValidationError) on N < 1, g <= 0, delta == 0,
    // or negative decay rates.
    void validate() const;

    double collective_coupling() const { return std::sqrt(double(n_atoms)) * g; }
};

struct LambdaParams {
    int n_atoms = 1;       // N
    double g = 1.0;        // cavity coupling on |g> <-> |e>
    double omega = 1.0;    // classical Rabi frequency on |s> <-> |e>
    double delta_big = 10.0;  // classical-field detuning (Delta)
    double delta_raman = 0.0; // two-photon detuning (delta); 0 = resonance

    void validate() const;

    double collective_coupling() const { return std::sqrt(double(n_atoms)) * g; }
};

enum class AtomKind { TwoLevel, Lambda };
enum class CollectiveKind { G, E, S };

inline constexpr std::size_t kDefaultDimensionCap = 1'000'000;

// Normalized embedding of |G>, |E>, or |S> (x) |fock> in the full
// tensor-product space. S requires AtomKind::Lambda.
ComplexVector collective_state(AtomKind kind, int n_atoms, CollectiveKind which,
                               int fock, int fock_cutoff,
                               std::size_t dimension_cap = kDefaultDimensionCap);

// 2x2 collective Hamiltonian [[D/2, sqrt(N)g], [sqrt(N)g, -D/2]] in the
// basis (|+>, |->). include_global_phase re-adds the dropped scalar
// generator -(N-1)D/2 * I for phase-sensitive checks.
ComplexMatrix two_level_collective_h(const TwoLevelParams& p,
                                     bool include_global_phase = false);

// Rotating-frame Hamiltonian sum_j [D/2 sz_j + g(sm_j a^+ + sp_j a)] on
// the (2^N)(cutoff+1)-dimensional space. Oracle scale: N <= 3.
ComplexMatrix two_level_full_h(const TwoLevelParams& p, int fock_cutoff);

// Dispersive effective Hamiltonian: per-atom Stark shifts
// (g^2/D)(|e><e| a a^+ - |g><g| a^+ a) plus the (g^2/D) sp_j sm_k
// exchange between distinct atoms. Block diagonal in photon number.
ComplexMatrix two_level_effective_h(const TwoLevelParams& p, int fock_cutoff);

// 3x3 [[D, sqrt(N)g, W], [sqrt(N)g, 0, 0], [W, 0, 0]] in (|u1>,|u2>,|u3>).
// Throws SimError(ExpectedResonance) unless delta_raman == 0.
ComplexMatrix lambda_resonant_h(const LambdaParams& p);

// 3x3 [[d+D, sqrt(N)g, W], [sqrt(N)g, 0, 0], [W, 0, d]].
// include_global_phase re-adds -N(d+D) * I.
ComplexMatrix lambda_nonresonant_h(const LambdaParams& p,
                                   bool include_global_phase = false);

// Rotating-frame Hamiltonian on the (3^N)(cutoff+1)-dimensional space;
// restricted to span{|u1>,|u2>,|u3>} it reproduces lambda_nonresonant_h
// plus the -N(d+D) shift. Oracle scale: N <= 3.
ComplexMatrix lambda_full_h(const LambdaParams& p, int fock_cutoff);

} // namespace dsim::models
