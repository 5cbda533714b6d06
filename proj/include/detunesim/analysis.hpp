// analysis.hpp — detuning-condition reports, leakage thresholds, the
// sqrt(N) scaling law, effective-Hamiltonian fidelity, and sweeps.

#pragma once

#include "detunesim/models.hpp"
#include "detunesim/types.hpp"

#include <map>
#include <optional>

namespace dsim::analysis {

struct ConditionEntry {
    std::string name;  // "collective", "drive", "raman"
    double ratio = 0.0;
    bool pass = false;
};

// verdict(x) = (x >= threshold); legacy uses |Delta|/g, the condition
// usually quoted for a single emitter.
struct ConditionReport {
    double threshold = 10.0;
    std::vector<ConditionEntry> ratios;
    double legacy_ratio = 0.0;
    bool legacy_pass = false;

    bool all_pass() const;
    const ConditionEntry& entry(const std::string& name) const;
};

ConditionReport condition_report(const models::TwoLevelParams& p,
                                 double threshold = 10.0);
ConditionReport condition_report(const models::LambdaParams& p,
                                 double threshold = 10.0);

// Smallest detuning with peak leakage <= leak_tol:
// Delta* = 2 sqrt(N) g sqrt((1 - tol)/tol). Throws SimError(DomainError)
// for leak_tol outside (0, 1).
double min_detuning(int n_atoms, double g, double leak_tol);

// Least-squares slope of log y vs log x. Throws
// SimError(InsufficientPoints) below two distinct points.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

// Slope of log Delta*(N) vs log N; requires >= 3 distinct N.
double scaling_exponent(double g, double leak_tol, const std::vector<int>& n_list);

// |<psi_exact(t)|psi_eff(t)>|^2 from initial |+>. Both states live in the
// drive interaction picture: the exact state is the closed-form propagator
// with the collective-frame phases diag(e^{+iDt/2}, e^{-iDt/2}) restored,
// the effective state evolves under diag(Ng^2/D, -Ng^2/D).
double effective_fidelity(const models::TwoLevelParams& p, double t);

struct SweepAxis {
    std::string name;  // parameter key: N, g, Delta, Omega, delta, kappa, gamma
    std::vector<double> values;
};

struct SweepSpec {
    std::string model = "two_level";  // "two_level" | "lambda"
    std::vector<SweepAxis> axes;
    std::vector<std::string> metrics;
    std::map<std::string, double> base;  // parameter defaults for off-axis keys
    double leak_tol = 0.01;              // used by min_detuning
    double t_max = 100.0;                // used by avg_pop_plus
    int grid_points = 2001;
};

struct SweepRow {
    std::vector<double> point;  // one value per axis, axis order
    std::string metric;
    double value = 0.0;
};

struct SweepResult {
    std::vector<std::string> axis_names;
    std::vector<SweepRow> rows;  // lexicographic in the axes, metrics inner
    std::string provenance;      // spec hash
};

// Registered metrics: max_leakage, fidelity_min, min_detuning, raman_max,
// avg_pop_plus. Throws SimError(UnknownMetric) otherwise. Rows are
// independent of evaluation order; `jobs` > 1 evaluates points in
// parallel.
SweepResult sweep(const SweepSpec& spec, int jobs = 1);

// FNV-1a 64 over a canonical serialization of the spec.
std::string sweep_spec_hash(const SweepSpec& spec);

} // namespace dsim::analysis
