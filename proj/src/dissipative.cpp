#include "detunesim/dissipative.hpp"

#include "detunesim/numerics.hpp"

#include <cmath>

namespace dsim::dissipative {

DecayModel DecayModel::from(const models::TwoLevelParams& p, DecayMode mode,
                            GammaScaling scaling) {
    DecayModel m;
    m.mode = mode;
    m.kappa = p.kappa;
    m.gamma = p.gamma;
    m.gamma_scaling = scaling;
    return m;
}

void DecayModel::validate(int n_atoms) const {
    if (kappa < 0.0 || gamma < 0.0)
        throw SimError(ErrorCode::ValidationError, "decay rates must be ≥ 0");
    if (mode == DecayMode::Full && n_atoms > 3)
        throw SimError(ErrorCode::DimensionCap,
                       "full decay model is limited to N ≤ 3");
}

namespace {

ComplexMatrix projector(const ComplexVector& v) {
    return v * v.adjoint();
}

void stamp_params(Trajectory& traj, const models::TwoLevelParams& p) {
    traj.metadata["N"] = std::to_string(p.n_atoms);
    traj.metadata["g"] = format_double(p.g);
    traj.metadata["Delta"] = format_double(p.delta);
    traj.metadata["kappa"] = format_double(p.kappa);
    traj.metadata["gamma"] = format_double(p.gamma);
}

} // namespace

Trajectory simulate_collective_decay(const models::TwoLevelParams& p,
                                     const DecayModel& model,
                                     const std::vector<double>& t_grid,
                                     const SimOptions& options) {
    p.validate();
    model.validate(p.n_atoms);
    if (model.mode != DecayMode::Collective3)
        throw SimError(ErrorCode::InvalidArgument,
                       "simulate_collective_decay expects the collective3 decay mode");

    // basis (|+>, |->, |G0>); |G0> is the absorbing ground state
    const double sg = p.collective_coupling();
    ComplexMatrix h = ComplexMatrix::Zero(3, 3);
    h(0, 0) = p.delta / 2.0;
    h(1, 1) = -p.delta / 2.0;
    h(0, 1) = h(1, 0) = sg;

    const double scale =
        (model.gamma_scaling == GammaScaling::NAtoms) ? double(p.n_atoms) : 1.0;
    std::vector<ComplexMatrix> ops;
    if (model.kappa > 0.0) {
        ComplexMatrix l = ComplexMatrix::Zero(3, 3);
        l(2, 1) = std::sqrt(model.kappa);
        ops.push_back(std::move(l));
    }
    if (model.gamma > 0.0) {
        ComplexMatrix l = ComplexMatrix::Zero(3, 3);
        l(2, 0) = std::sqrt(scale * model.gamma);
        ops.push_back(std::move(l));
    }

    ComplexMatrix rho0 = ComplexMatrix::Zero(3, 3);
    rho0(0, 0) = 1.0;  // start in |+>

    numerics::LindbladOptions lopt;
    lopt.step = options.step;
    ComplexVector plus = ComplexVector::Zero(3);
    ComplexVector minus = ComplexVector::Zero(3);
    ComplexVector ground = ComplexVector::Zero(3);
    plus[0] = 1.0;
    minus[1] = 1.0;
    ground[2] = 1.0;
    lopt.observables = {{"pop_plus", projector(plus)},
                        {"pop_minus", projector(minus)},
                        {"pop_ground", projector(ground)}};

    Trajectory traj = numerics::integrate_lindblad(rho0, h, ops, t_grid, lopt);
    stamp_params(traj, p);
    traj.metadata["decay_mode"] = "collective3";
    traj.metadata["gamma_scaling"] =
        (model.gamma_scaling == GammaScaling::NAtoms) ? "N" : "1";
    return traj;
}

Trajectory simulate_full_lindblad(const models::TwoLevelParams& p, int fock_cutoff,
                                  const std::vector<double>& t_grid,
                                  const SimOptions& options) {
    p.validate();
    if (p.n_atoms > 3)
        throw SimError(ErrorCode::DimensionCap,
                       "simulate_full_lindblad: full-space oracle is limited to N ≤ 3");

    const ComplexMatrix h = models::two_level_full_h(p, fock_cutoff);
    const Eigen::Index dim = h.rows();
    const int dim_f = fock_cutoff + 1;

    // cavity annihilation operator on the composite space
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        const int n = int(idx % dim_f);
        if (n >= 1) a(idx - 1, idx) = std::sqrt(double(n));
    }

    std::vector<ComplexMatrix> ops;
    if (p.kappa > 0.0) ops.push_back(std::sqrt(p.kappa) * a);
    if (p.gamma > 0.0) {
        // per-atom lowering |g_j><e_j|
        for (int j = 0; j < p.n_atoms; ++j) {
            Eigen::Index stride = dim_f;
            for (int k = p.n_atoms - 1; k > j; --k) stride *= 2;
            ComplexMatrix l = ComplexMatrix::Zero(dim, dim);
            for (Eigen::Index idx = 0; idx < dim; ++idx)
                if ((idx / stride) % 2 == 1) l(idx - stride, idx) = std::sqrt(p.gamma);
            ops.push_back(std::move(l));
        }
    }

    using models::AtomKind;
    using models::CollectiveKind;
    const ComplexVector plus =
        models::collective_state(AtomKind::TwoLevel, p.n_atoms, CollectiveKind::E, 0, fock_cutoff);
    const ComplexVector minus =
        models::collective_state(AtomKind::TwoLevel, p.n_atoms, CollectiveKind::G, 1, fock_cutoff);
    const ComplexVector g0 =
        models::collective_state(AtomKind::TwoLevel, p.n_atoms, CollectiveKind::G, 0, fock_cutoff);

    numerics::LindbladOptions lopt;
    lopt.step = options.step;
    const ComplexMatrix span = projector(plus) + projector(minus) + projector(g0);
    lopt.observables = {{"pop_plus", projector(plus)},
                        {"pop_minus", projector(minus)},
                        {"pop_ground", projector(g0)},
                        {"subspace_leakage",
                         ComplexMatrix(ComplexMatrix::Identity(dim, dim) - span)}};

    Trajectory traj =
        numerics::integrate_lindblad(projector(plus), h, ops, t_grid, lopt);
    double leak_max = 0.0;
    for (double v : traj.series_values("subspace_leakage"))
        leak_max = std::max(leak_max, v);
    traj.metadata["subspace_leakage_max"] = format_double(leak_max);
    stamp_params(traj, p);
    traj.metadata["decay_mode"] = "full";
    traj.metadata["fock_cutoff"] = std::to_string(fock_cutoff);
    return traj;
}

} // namespace dsim::dissipative
