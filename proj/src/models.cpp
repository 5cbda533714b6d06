#include "detunesim/models.hpp"

#include <cmath>
#include <vector>

namespace dsim::models {

namespace {

void check_common(int n_atoms, double g, double delta_value, const char* delta_name) {
    if (n_atoms < 1)
        throw SimError(ErrorCode::ValidationError, "N must be ≥ 1");
    if (!(g > 0.0))
        throw SimError(ErrorCode::ValidationError, "g must be > 0");
    if (delta_value == 0.0)
        throw SimError(ErrorCode::ValidationError, std::string(delta_name) + " must be nonzero");
}

// dimension of levels^N * (cutoff+1) with cap enforcement
std::size_t full_dimension(int levels, int n_atoms, int fock_cutoff, std::size_t cap,
                           const char* who) {
    if (fock_cutoff < 1)
        throw SimError(ErrorCode::ValidationError,
                       std::string(who) + ": fock_cutoff must be ≥ 1");
    double dim = std::pow(double(levels), double(n_atoms)) * (fock_cutoff + 1);
    if (!(dim <= double(cap)))
        throw SimError(ErrorCode::DimensionCap,
                       std::string(who) + ": dimension " + format_double(dim) +
                           " exceeds cap " + std::to_string(cap));
    std::size_t out = 1;
    for (int j = 0; j < n_atoms; ++j) out *= std::size_t(levels);
    return out * std::size_t(fock_cutoff + 1);
}

void require_oracle_scale(int n_atoms, const char* who) {
    if (n_atoms > 3)
        throw SimError(ErrorCode::DimensionCap,
                       std::string(who) + ": full-space oracle is limited to N ≤ 3");
}

// atom 1 is the slowest index, the field mode the fastest
std::size_t atom_stride(int levels, int n_atoms, int atom, int fock_cutoff) {
    std::size_t stride = std::size_t(fock_cutoff + 1);
    for (int j = n_atoms - 1; j > atom; --j) stride *= std::size_t(levels);
    return stride;
}

int atom_level(std::size_t index, int levels, int n_atoms, int atom, int fock_cutoff) {
    return int(index / atom_stride(levels, n_atoms, atom, fock_cutoff)) % levels;
}

int fock_of(std::size_t index, int fock_cutoff) {
    return int(index % std::size_t(fock_cutoff + 1));
}

} // namespace

void TwoLevelParams::validate() const {
    check_common(n_atoms, g, delta, "Delta");
    if (kappa < 0.0)
        throw SimError(ErrorCode::ValidationError, "kappa must be ≥ 0");
    if (gamma < 0.0)
        throw SimError(ErrorCode::ValidationError, "gamma must be ≥ 0");
}

void LambdaParams::validate() const {
    check_common(n_atoms, g, delta_big, "Delta");
    if (omega < 0.0)
        throw SimError(ErrorCode::ValidationError, "Omega must be ≥ 0");
}

ComplexVector collective_state(AtomKind kind, int n_atoms, CollectiveKind which,
                               int fock, int fock_cutoff, std::size_t dimension_cap) {
    if (n_atoms < 1)
        throw SimError(ErrorCode::ValidationError, "N must be ≥ 1");
    if (fock < 0 || fock > fock_cutoff)
        throw SimError(ErrorCode::ValidationError,
                       "fock index must lie within the cutoff");
    if (which == CollectiveKind::S && kind != AtomKind::Lambda)
        throw SimError(ErrorCode::ValidationError,
                       "collective |S> requires the lambda level structure");
    const int levels = (kind == AtomKind::TwoLevel) ? 2 : 3;
    const std::size_t dim =
        full_dimension(levels, n_atoms, fock_cutoff, dimension_cap, "collective_state");

    ComplexVector v = ComplexVector::Zero(Eigen::Index(dim));
    // the singly-raised level: |e> in the two-level ladder, |s> or |e> in lambda
    int raised = 0;
    if (which == CollectiveKind::E) raised = (kind == AtomKind::TwoLevel) ? 1 : 2;
    if (which == CollectiveKind::S) raised = 1;

    if (which == CollectiveKind::G) {
        v[Eigen::Index(fock)] = 1.0;  // all atoms at level 0
        return v;
    }
    const double amp = 1.0 / std::sqrt(double(n_atoms));
    for (int j = 0; j < n_atoms; ++j) {
        const std::size_t idx =
            std::size_t(raised) * atom_stride(levels, n_atoms, j, fock_cutoff) +
            std::size_t(fock);
        v[Eigen::Index(idx)] += amp;
    }
    return v;
}

ComplexMatrix two_level_collective_h(const TwoLevelParams& p, bool include_global_phase) {
    p.validate();
    const double sg = p.collective_coupling();
    ComplexMatrix h(2, 2);
    h << p.delta / 2.0, sg,
         sg, -p.delta / 2.0;
    if (include_global_phase)
        h += -(p.n_atoms - 1) * p.delta / 2.0 * ComplexMatrix::Identity(2, 2);
    return h;
}

ComplexMatrix two_level_full_h(const TwoLevelParams& p, int fock_cutoff) {
    p.validate();
    require_oracle_scale(p.n_atoms, "two_level_full_h");
    const int levels = 2;
    const std::size_t dim =
        full_dimension(levels, p.n_atoms, fock_cutoff, kDefaultDimensionCap, "two_level_full_h");
    ComplexMatrix h = ComplexMatrix::Zero(Eigen::Index(dim), Eigen::Index(dim));

    for (std::size_t s = 0; s < dim; ++s) {
        const int n = fock_of(s, fock_cutoff);
        double diag = 0.0;
        for (int j = 0; j < p.n_atoms; ++j) {
            const int lvl = atom_level(s, levels, p.n_atoms, j, fock_cutoff);
            diag += (lvl == 1 ? 1.0 : -1.0) * p.delta / 2.0;
            // sm_j a^+ : |e_j, n> -> |g_j, n+1>
            if (lvl == 1 && n < fock_cutoff) {
                const std::size_t t = s - atom_stride(levels, p.n_atoms, j, fock_cutoff) + 1;
                const double amp = p.g * std::sqrt(double(n + 1));
                h(Eigen::Index(t), Eigen::Index(s)) += amp;
                h(Eigen::Index(s), Eigen::Index(t)) += amp;
            }
        }
        h(Eigen::Index(s), Eigen::Index(s)) += diag;
    }
    return h;
}

ComplexMatrix two_level_effective_h(const TwoLevelParams& p, int fock_cutoff) {
    p.validate();
    require_oracle_scale(p.n_atoms, "two_level_effective_h");
    const int levels = 2;
    const std::size_t dim = full_dimension(levels, p.n_atoms, fock_cutoff,
                                           kDefaultDimensionCap, "two_level_effective_h");
    const double lambda = p.g * p.g / p.delta;
    ComplexMatrix h = ComplexMatrix::Zero(Eigen::Index(dim), Eigen::Index(dim));

    for (std::size_t s = 0; s < dim; ++s) {
        const int n = fock_of(s, fock_cutoff);
        int excited = 0;
        for (int j = 0; j < p.n_atoms; ++j)
            if (atom_level(s, levels, p.n_atoms, j, fock_cutoff) == 1) ++excited;
        const int ground = p.n_atoms - excited;
        // |e><e| a a^+ and -|g><g| a^+ a Stark shifts
        h(Eigen::Index(s), Eigen::Index(s)) +=
            lambda * (double(excited) * (n + 1) - double(ground) * n);
        // sp_j sm_k exchange between distinct atoms
        for (int j = 0; j < p.n_atoms; ++j) {
            if (atom_level(s, levels, p.n_atoms, j, fock_cutoff) != 0) continue;
            for (int k = 0; k < p.n_atoms; ++k) {
                if (k == j || atom_level(s, levels, p.n_atoms, k, fock_cutoff) != 1) continue;
                const std::size_t t = s + atom_stride(levels, p.n_atoms, j, fock_cutoff) -
                                      atom_stride(levels, p.n_atoms, k, fock_cutoff);
                h(Eigen::Index(t), Eigen::Index(s)) += lambda;
            }
        }
    }
    return h;
}

ComplexMatrix lambda_resonant_h(const LambdaParams& p) {
    p.validate();
    if (p.delta_raman != 0.0)
        throw SimError(ErrorCode::ExpectedResonance,
                       "lambda_resonant_h: two-photon detuning is " +
                           format_double(p.delta_raman) + ", expected 0");
    const double sg = p.collective_coupling();
    ComplexMatrix h(3, 3);
    h << p.delta_big, sg, p.omega,
         sg, 0.0, 0.0,
         p.omega, 0.0, 0.0;
    return h;
}

ComplexMatrix lambda_nonresonant_h(const LambdaParams& p, bool include_global_phase) {
    p.validate();
    const double sg = p.collective_coupling();
    ComplexMatrix h(3, 3);
    h << p.delta_raman + p.delta_big, sg, p.omega,
         sg, 0.0, 0.0,
         p.omega, 0.0, p.delta_raman;
    if (include_global_phase)
        h += -double(p.n_atoms) * (p.delta_raman + p.delta_big) *
             ComplexMatrix::Identity(3, 3);
    return h;
}

ComplexMatrix lambda_full_h(const LambdaParams& p, int fock_cutoff) {
    p.validate();
    require_oracle_scale(p.n_atoms, "lambda_full_h");
    const int levels = 3;  // |g>=0, |s>=1, |e>=2
    const std::size_t dim =
        full_dimension(levels, p.n_atoms, fock_cutoff, kDefaultDimensionCap, "lambda_full_h");
    ComplexMatrix h = ComplexMatrix::Zero(Eigen::Index(dim), Eigen::Index(dim));

    for (std::size_t s = 0; s < dim; ++s) {
        const int n = fock_of(s, fock_cutoff);
        double diag = 0.0;
        for (int j = 0; j < p.n_atoms; ++j) {
            const int lvl = atom_level(s, levels, p.n_atoms, j, fock_cutoff);
            const std::size_t stride = atom_stride(levels, p.n_atoms, j, fock_cutoff);
            if (lvl == 0) {
                diag += -(p.delta_raman + p.delta_big);
                // g |e_j><g_j| a : |g_j, n> -> |e_j, n-1>
                if (n >= 1) {
                    const std::size_t t = s + 2 * stride - 1;
                    const double amp = p.g * std::sqrt(double(n));
                    h(Eigen::Index(t), Eigen::Index(s)) += amp;
                    h(Eigen::Index(s), Eigen::Index(t)) += amp;
                }
            } else if (lvl == 1) {
                diag += -p.delta_big;
                // W |e_j><s_j| : |s_j, n> -> |e_j, n>
                const std::size_t t = s + stride;
                h(Eigen::Index(t), Eigen::Index(s)) += p.omega;
                h(Eigen::Index(s), Eigen::Index(t)) += p.omega;
            }
        }
        h(Eigen::Index(s), Eigen::Index(s)) += diag;
    }
    return h;
}

} // namespace dsim::models
