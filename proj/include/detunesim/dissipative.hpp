// dissipative.hpp — decaying dynamics of the two-level ensemble: a
// 3-state collective Lindblad model and a small-N full-space oracle.

#pragma once

#include "detunesim/models.hpp"
#include "detunesim/types.hpp"

namespace dsim::dissipative {

enum class DecayMode { Collective3, Full };

// How the symmetric excited state decays in the collective model:
// SingleAtom uses rate gamma (exact for the single-excitation manifold),
// NAtoms uses N * gamma.
enum class GammaScaling { SingleAtom, NAtoms };

struct DecayModel {
    DecayMode mode = DecayMode::Collective3;
    double kappa = 0.0;
    double gamma = 0.0;
    GammaScaling gamma_scaling = GammaScaling::SingleAtom;

    static DecayModel from(const models::TwoLevelParams& p,
                           DecayMode mode = DecayMode::Collective3,
                           GammaScaling scaling = GammaScaling::SingleAtom);

    void validate(int n_atoms) const;
};

struct SimOptions {
    double step = 0.0;  // RK4 step override; <= 0 selects the default rule
    int fock_cutoff = 2;
};

// rho on (|+>, |->, |G0>) under H = collective 2x2 (+) 0 with collapse
// operators sqrt(kappa)|G0><-| and sqrt(s gamma)|G0><+|, starting
// from |+>. Series: pop_plus, pop_minus, pop_ground.
Trajectory simulate_collective_decay(const models::TwoLevelParams& p,
                                     const DecayModel& model,
                                     const std::vector<double>& t_grid,
                                     const SimOptions& options = {});

// Full (2^N)(cutoff+1)-dimensional Lindblad with sqrt(kappa) a and
// per-atom sqrt(gamma) sm_j, starting from the |+> embedding. Series:
// pop_plus, pop_minus, pop_ground, subspace_leakage. Metadata records
// the peak leakage outside span{|+>,|->,|G0>}. Requires N <= 3.
Trajectory simulate_full_lindblad(const models::TwoLevelParams& p,
                                  int fock_cutoff,
                                  const std::vector<double>& t_grid,
                                  const SimOptions& options = {});

} // namespace dsim::dissipative
