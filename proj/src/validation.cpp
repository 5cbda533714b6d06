#include "detunesim/validation.hpp"

#include "detunesim/analysis.hpp"
#include "detunesim/dissipative.hpp"
#include "detunesim/numerics.hpp"
#include "detunesim/propagators.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace dsim::validation {

using namespace dsim;

namespace {

Check limit_check(const std::string& name, double measured, double limit) {
    std::ostringstream detail;
    detail << "measured " << format_double(measured) << ", limit " << format_double(limit);
    return {name, measured <= limit, detail.str()};
}

} // namespace

std::vector<Check> run_validation() {
    std::vector<Check> checks;
    std::mt19937 rng(20240901u);

    // closed forms against dense exponentiation
    {
        std::uniform_real_distribution<double> theta_draw(0.05, 2.0);
        std::uniform_int_distribution<int> n_draw(1, 100);
        std::uniform_real_distribution<double> t_draw(0.0, 10.0);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            models::TwoLevelParams p;
            p.n_atoms = n_draw(rng);
            p.g = 1.0;
            p.delta = 2.0 * p.collective_coupling() / theta_draw(rng);
            const ComplexMatrix h = models::two_level_collective_h(p);
            for (int s = 0; s < 10; ++s) {
                const double t = t_draw(rng);
                const ComplexMatrix diff =
                    propagators::two_level_u(p, t) - numerics::unitary_propagator(h, t);
                worst = std::max(worst, max_abs(diff));
            }
        }
        checks.push_back(limit_check("two-level closed form vs numeric", worst, 1e-9));
    }
    {
        std::uniform_int_distribution<int> n_draw(1, 100);
        std::uniform_real_distribution<double> omega_draw(0.0, 3.0);
        std::uniform_real_distribution<double> delta_draw(5.0, 50.0);
        std::uniform_real_distribution<double> t_draw(0.0, 10.0);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            models::LambdaParams p;
            p.n_atoms = n_draw(rng);
            p.g = 1.0;
            p.omega = omega_draw(rng);
            p.delta_big = delta_draw(rng);
            p.delta_raman = 0.0;
            const ComplexMatrix h = models::lambda_resonant_h(p);
            for (int s = 0; s < 10; ++s) {
                const double t = t_draw(rng);
                const Complex strip = std::exp(Complex(0.0, 0.5 * p.delta_big * t));
                const ComplexMatrix diff = propagators::lambda_resonant_u(p, t) -
                                           ComplexMatrix(numerics::unitary_propagator(h, t) * strip);
                worst = std::max(worst, max_abs(diff));
            }
        }
        checks.push_back(limit_check("lambda closed form vs numeric", worst, 1e-9));
    }

    // unitarity of the closed forms
    {
        double worst = 0.0;
        for (int n : {1, 5, 25}) {
            models::TwoLevelParams p{n, 1.0, 10.0, 0.0, 0.0};
            for (double t : {0.1, 1.0, 7.3}) {
                const ComplexMatrix u = propagators::two_level_u(p, t);
                worst = std::max(
                    worst, max_abs(ComplexMatrix(u.adjoint() * u -
                                                 ComplexMatrix::Identity(2, 2))));
            }
        }
        checks.push_back(limit_check("closed-form unitarity", worst, 1e-12));
    }

    // leakage values at Delta = 10 g
    {
        double worst = 0.0;
        const double expected[] = {1.0 / 26.0, 1.0 / 6.0, 0.5};
        const int ns[] = {1, 5, 25};
        for (int i = 0; i < 3; ++i) {
            models::TwoLevelParams p{ns[i], 1.0, 10.0, 0.0, 0.0};
            worst = std::max(worst,
                             std::abs(propagators::max_leakage_two_level(p) - expected[i]));
        }
        checks.push_back(limit_check("collective leakage values", worst, 1e-12));
    }

    // sqrt(N) scaling of the minimal detuning
    {
        const double slope = analysis::scaling_exponent(1.0, 0.01, {1, 4, 16, 64});
        checks.push_back(limit_check("scaling exponent vs 1/2", std::abs(slope - 0.5), 1e-3));
    }

    // Lindblad hygiene on a short decaying run
    {
        models::TwoLevelParams p{5, 1.0, 10.0, 0.1, 0.01};
        const auto model = dissipative::DecayModel::from(p);
        const Trajectory traj =
            dissipative::simulate_collective_decay(p, model, linspace(0.0, 10.0, 101));
        const double drift = std::stod(traj.metadata.at("trace_drift_max"));
        const double min_eig = std::stod(traj.metadata.at("min_eigenvalue"));
        checks.push_back(limit_check("Lindblad trace drift", drift, 1e-8));
        checks.push_back(limit_check("Lindblad positivity", -min_eig, 1e-8));
    }

    // cubic solver against Vieta
    {
        std::uniform_real_distribution<double> coeff(-2.0, 2.0);
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            const double c2 = coeff(rng), c1 = coeff(rng), c0 = coeff(rng);
            const auto roots = numerics::cubic_roots(c2, c1, c0);
            const Complex sum = roots[0] + roots[1] + roots[2];
            const Complex pair =
                roots[0] * roots[1] + roots[0] * roots[2] + roots[1] * roots[2];
            const Complex prod = roots[0] * roots[1] * roots[2];
            const double scale = std::max({1.0, std::abs(c2), std::abs(c1), std::abs(c0)});
            worst = std::max({worst, std::abs(sum + c2) / scale,
                              std::abs(pair - c1) / scale, std::abs(prod + c0) / scale});
        }
        checks.push_back(limit_check("cubic roots Vieta residual", worst, 1e-10));
    }

    return checks;
}

} // namespace dsim::validation
