#include "detunesim/propagators.hpp"

#include "detunesim/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dsim::propagators {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TwoLevelClosedForm TwoLevelClosedForm::from(const models::TwoLevelParams& p) {
    p.validate();
    TwoLevelClosedForm cf;
    cf.theta = 2.0 * p.collective_coupling() / p.delta;
    cf.alpha = std::sqrt(1.0 + cf.theta * cf.theta);
    cf.beta = std::abs(cf.theta) / cf.alpha;
    return cf;
}

double TwoLevelClosedForm::period(const models::TwoLevelParams& p) const {
    return 2.0 * kPi / (alpha * std::abs(p.delta));
}

LambdaClosedForm LambdaClosedForm::from(const models::LambdaParams& p) {
    p.validate();
    const double ng2 = double(p.n_atoms) * p.g * p.g;
    const double w2 = p.omega * p.omega;
    const double root = std::sqrt(4.0 * ng2 + 4.0 * w2 + p.delta_big * p.delta_big);
    LambdaClosedForm cf;
    cf.alpha = root / p.delta_big;  // carries the sign of Delta
    cf.beta = 2.0 * std::sqrt(ng2) / root;
    cf.gamma = 2.0 * p.omega / root;
    cf.weight_bright = ng2 / (ng2 + w2);
    cf.weight_dark = w2 / (ng2 + w2);
    return cf;
}

double LambdaClosedForm::period(const models::LambdaParams& p) const {
    return 2.0 * kPi / std::abs(alpha * p.delta_big);
}

ComplexMatrix two_level_u(const models::TwoLevelParams& p, double t) {
    const TwoLevelClosedForm cf = TwoLevelClosedForm::from(p);
    const double phi = 0.5 * cf.alpha * p.delta * t;
    const double c = std::cos(phi), s = std::sin(phi);
    const Complex a_minus(c, -s / cf.alpha);
    const Complex a_plus(c, +s / cf.alpha);
    const Complex b(0.0, -(cf.theta / cf.alpha) * s);
    ComplexMatrix u(2, 2);
    u << a_minus, b,
         b, a_plus;
    return u;
}

double max_leakage_two_level(const models::TwoLevelParams& p) {
    const TwoLevelClosedForm cf = TwoLevelClosedForm::from(p);
    const double t2 = cf.theta * cf.theta;
    return t2 / (1.0 + t2);
}

ComplexMatrix lambda_resonant_u(const models::LambdaParams& p, double t) {
    p.validate();
    if (p.delta_raman != 0.0)
        throw SimError(ErrorCode::ExpectedResonance,
                       "lambda_resonant_u: two-photon detuning is " +
                           format_double(p.delta_raman) + ", expected 0");
    const LambdaClosedForm cf = LambdaClosedForm::from(p);
    const double phi = 0.5 * cf.alpha * p.delta_big * t;  // = sqrt(4Ng^2+4W^2+D^2) t/2
    const double c = std::cos(phi), s = std::sin(phi);
    const Complex a_plus(c, +s / cf.alpha);
    const Complex a_minus(c, -s / cf.alpha);
    const Complex drift = std::exp(Complex(0.0, 0.5 * p.delta_big * t));
    const Complex b_beta(0.0, -cf.beta * s);
    const Complex b_gamma(0.0, -cf.gamma * s);
    const double cross = std::sqrt(cf.weight_bright * cf.weight_dark);
    const Complex c_cross = cross * (a_plus - drift);
    ComplexMatrix u(3, 3);
    u << a_minus, b_beta, b_gamma,
         b_beta, cf.weight_dark * drift + cf.weight_bright * a_plus, c_cross,
         b_gamma, c_cross, cf.weight_bright * drift + cf.weight_dark * a_plus;
    return u;
}

double max_leakage_lambda_resonant(const models::LambdaParams& p) {
    const LambdaClosedForm cf = LambdaClosedForm::from(p);
    return cf.beta * cf.beta;
}

ReducedVariables reduce_variables(const models::LambdaParams& p) {
    p.validate();
    const double abs_delta = std::abs(p.delta_big);
    const double r_raman = std::abs(p.delta_raman) / abs_delta;
    const double r_coupling = p.collective_coupling() / abs_delta;
    const double r_drive = p.omega / abs_delta;
    const double eps = std::max({r_raman, r_coupling, r_drive});
    if (eps == 0.0)
        throw SimError(ErrorCode::DegenerateScale,
                       "reduce_variables: all coupling scales are zero");
    ReducedVariables rv;
    rv.epsilon = eps;
    rv.lambda = (p.delta_raman / p.delta_big) / eps;
    rv.lambda_c = (p.collective_coupling() / p.delta_big) / eps;
    rv.lambda_l = (p.omega / p.delta_big) / eps;
    return rv;
}

std::array<double, 3> nonresonant_cubic_coefficients(const ReducedVariables& rv) {
    const double e = rv.epsilon, l = rv.lambda, lc = rv.lambda_c, ll = rv.lambda_l;
    const double c2 = -(2.0 * l * e + 1.0);
    const double c1 = -(lc * lc * e * e + ll * ll * e * e - l * l * e * e - l * e);
    const double c0 = l * lc * lc * e * e * e;
    return {c2, c1, c0};
}

std::pair<Trajectory, NonresonantSolution>
lambda_nonresonant_exact(const models::LambdaParams& p, const Amplitudes& initial,
                         const std::vector<double>& t_grid) {
    p.validate();
    double norm2 = 0.0;
    for (const Complex& a : initial) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-10)
        throw SimError(ErrorCode::ValidationError,
                       "lambda_nonresonant_exact: initial amplitudes have norm^2 " +
                           format_double(norm2) + ", expected 1");
    if (t_grid.empty())
        throw SimError(ErrorCode::InvalidArgument,
                       "lambda_nonresonant_exact: empty time grid");

    const ComplexMatrix h = models::lambda_nonresonant_h(p);
    const numerics::EigDecomposition eig = numerics::hermitian_eig(h);

    NonresonantSolution sol;
    sol.perturbative = false;
    ComplexVector psi0(3);
    psi0 << initial[0], initial[1], initial[2];
    const ComplexVector overlaps = eig.eigenvectors.adjoint() * psi0;
    for (int j = 0; j < 3; ++j) {
        sol.roots[j] = eig.eigenvalues[j] / p.delta_big;
        sol.alpha_coeffs[j] = eig.eigenvectors(0, j) * overlaps[j];
        sol.beta_coeffs[j] = eig.eigenvectors(1, j) * overlaps[j];
        sol.gamma_coeffs[j] = eig.eigenvectors(2, j) * overlaps[j];
    }

    Trajectory traj;
    traj.times = t_grid;
    std::vector<double> pop_u1, pop_u2, pop_u3;
    pop_u1.reserve(t_grid.size());
    pop_u2.reserve(t_grid.size());
    pop_u3.reserve(t_grid.size());
    double norm_drift = 0.0;
    for (double t : t_grid) {
        Complex a(0), b(0), c(0);
        for (int j = 0; j < 3; ++j) {
            const Complex phase = std::exp(Complex(0.0, -eig.eigenvalues[j] * t));
            a += sol.alpha_coeffs[j] * phase;
            b += sol.beta_coeffs[j] * phase;
            c += sol.gamma_coeffs[j] * phase;
        }
        pop_u1.push_back(std::norm(a));
        pop_u2.push_back(std::norm(b));
        pop_u3.push_back(std::norm(c));
        norm_drift = std::max(norm_drift,
                              std::abs(std::norm(a) + std::norm(b) + std::norm(c) - 1.0));
    }
    traj.add_series("pop_u1", std::move(pop_u1));
    traj.add_series("pop_u2", std::move(pop_u2));
    traj.add_series("pop_u3", std::move(pop_u3));
    traj.metadata["norm_drift_max"] = format_double(norm_drift);
    traj.metadata["N"] = std::to_string(p.n_atoms);
    traj.metadata["g"] = format_double(p.g);
    traj.metadata["Omega"] = format_double(p.omega);
    traj.metadata["Delta"] = format_double(p.delta_big);
    traj.metadata["delta"] = format_double(p.delta_raman);
    return {std::move(traj), sol};
}

namespace {

// numerator/lambda with the 0/0 -> 0 convention; flags a true singularity.
Complex over_lambda(Complex numerator, double lambda, bool& singular) {
    if (lambda != 0.0) return numerator / lambda;
    if (numerator == Complex(0.0, 0.0)) return Complex(0.0, 0.0);
    singular = true;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return Complex(nan, nan);
}

} // namespace

NonresonantSolution
lambda_nonresonant_perturbative(const models::LambdaParams& p, const Amplitudes& initial) {
    const ReducedVariables rv = reduce_variables(p);
    const double e = rv.epsilon, l = rv.lambda, lc = rv.lambda_c, ll = rv.lambda_l;
    const Complex a0 = initial[0], b0 = initial[1], g0 = initial[2];

    NonresonantSolution sol;
    sol.perturbative = true;
    sol.epsilon_warning = (e >= 0.2);
    sol.outside_validity = (std::abs(l) * e <= lc * ll * e * e);
    sol.roots = {1.0 + l * e, 0.0, l * e};

    sol.alpha_coeffs[0] = a0 + (b0 * lc + g0 * ll) * e;
    sol.alpha_coeffs[1] = -b0 * lc * e;
    sol.alpha_coeffs[2] = -g0 * ll * e;

    bool singular = false;
    const Complex beta_sing = over_lambda(g0 * lc * ll * e, l, singular);
    sol.beta_coeffs[0] = a0 * lc * e;
    sol.beta_coeffs[1] = b0 - a0 * lc * e + beta_sing;
    sol.beta_coeffs[2] = -beta_sing;

    const Complex gamma_sing = over_lambda(b0 * lc * ll * e, l, singular);
    sol.gamma_coeffs[0] = a0 * ll * e;
    sol.gamma_coeffs[1] = gamma_sing;
    sol.gamma_coeffs[2] = g0 - a0 * ll * e - gamma_sing;

    sol.lambda_singular = singular;
    return sol;
}

std::array<int, 3> match_branches(const std::array<double, 3>& exact_roots,
                                  const std::array<double, 3>& expansion_roots) {
    constexpr double kTieTol = 1e-12;
    std::array<int, 3> assignment{-1, -1, -1};  // branch -> exact index
    std::array<bool, 3> exact_used{false, false, false};
    std::array<bool, 3> branch_used{false, false, false};

    for (int round = 0; round < 3; ++round) {
        double best = std::numeric_limits<double>::infinity();
        int bi = -1, bj = -1;
        for (int i = 0; i < 3; ++i) {
            if (exact_used[i]) continue;
            for (int j = 0; j < 3; ++j) {
                if (branch_used[j]) continue;
                const double d = std::abs(exact_roots[i] - expansion_roots[j]);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        // another exact root equally close to the chosen branch -> ambiguous
        for (int i = 0; i < 3; ++i) {
            if (i == bi || exact_used[i]) continue;
            if (std::abs(std::abs(exact_roots[i] - expansion_roots[bj]) - best) <= kTieTol)
                throw SimError(ErrorCode::BranchAssignment,
                               "match_branches: two exact roots are equidistant from "
                               "expansion branch " + std::to_string(bj + 1));
        }
        assignment[bj] = bi;
        exact_used[bi] = true;
        branch_used[bj] = true;
    }
    return assignment;
}

} // namespace dsim::propagators
