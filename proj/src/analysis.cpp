#include "detunesim/analysis.hpp"

#include "detunesim/dissipative.hpp"
#include "detunesim/numerics.hpp"
#include "detunesim/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

namespace dsim::analysis {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool ConditionReport::all_pass() const {
    for (const auto& e : ratios)
        if (!e.pass) return false;
    return true;
}

const ConditionEntry& ConditionReport::entry(const std::string& name) const {
    for (const auto& e : ratios)
        if (e.name == name) return e;
    throw SimError(ErrorCode::InvalidArgument, "no condition ratio named '" + name + "'");
}

namespace {

ConditionReport make_report(double threshold) {
    if (!(threshold > 1.0))
        throw SimError(ErrorCode::DomainError, "condition threshold must be > 1");
    ConditionReport r;
    r.threshold = threshold;
    return r;
}

void push_ratio(ConditionReport& r, std::string name, double ratio) {
    r.ratios.push_back({std::move(name), ratio, ratio >= r.threshold});
}

} // namespace

ConditionReport condition_report(const models::TwoLevelParams& p, double threshold) {
    p.validate();
    ConditionReport r = make_report(threshold);
    push_ratio(r, "collective", std::abs(p.delta) / p.collective_coupling());
    r.legacy_ratio = std::abs(p.delta) / p.g;
    r.legacy_pass = r.legacy_ratio >= threshold;
    return r;
}

ConditionReport condition_report(const models::LambdaParams& p, double threshold) {
    p.validate();
    ConditionReport r = make_report(threshold);
    const double sg = p.collective_coupling();
    push_ratio(r, "collective", std::abs(p.delta_big) / sg);
    push_ratio(r, "drive", p.omega > 0.0 ? std::abs(p.delta_big) / p.omega : kInf);
    // Raman detuning against the collective Raman Rabi frequency
    const double raman_rabi = sg * p.omega / std::abs(p.delta_big);
    push_ratio(r, "raman",
               raman_rabi > 0.0 ? std::abs(p.delta_raman) / raman_rabi : kInf);
    r.legacy_ratio = std::abs(p.delta_big) / p.g;
    r.legacy_pass = r.legacy_ratio >= threshold;
    return r;
}

double min_detuning(int n_atoms, double g, double leak_tol) {
    if (!(leak_tol > 0.0 && leak_tol < 1.0))
        throw SimError(ErrorCode::DomainError,
                       "leak_tol must lie in (0, 1), got " + format_double(leak_tol));
    if (n_atoms < 1)
        throw SimError(ErrorCode::ValidationError, "N must be ≥ 1");
    if (!(g > 0.0))
        throw SimError(ErrorCode::ValidationError, "g must be > 0");
    const double sg = std::sqrt(double(n_atoms)) * g;
    const double delta_star = 2.0 * sg * std::sqrt((1.0 - leak_tol) / leak_tol);

    models::TwoLevelParams check{n_atoms, g, delta_star, 0.0, 0.0};
    if (propagators::max_leakage_two_level(check) > leak_tol + 1e-12)
        throw SimError(ErrorCode::Internal, "min_detuning: inversion check failed high");
    check.delta = 0.99 * delta_star;
    if (!(propagators::max_leakage_two_level(check) > leak_tol))
        throw SimError(ErrorCode::Internal, "min_detuning: inversion check failed low");
    return delta_star;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw SimError(ErrorCode::DimensionMismatch, "log_log_slope: length mismatch");
    if (x.size() < 2)
        throw SimError(ErrorCode::InsufficientPoints,
                       "log_log_slope: need at least 2 points");
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw SimError(ErrorCode::DomainError, "log_log_slope: values must be > 0");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        mx += lx[i];
        my += ly[i];
    }
    mx /= double(n);
    my /= double(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    if (den == 0.0)
        throw SimError(ErrorCode::InsufficientPoints, "log_log_slope: degenerate x values");
    return num / den;
}

double scaling_exponent(double g, double leak_tol, const std::vector<int>& n_list) {
    std::set<int> distinct(n_list.begin(), n_list.end());
    if (distinct.size() < 3)
        throw SimError(ErrorCode::InsufficientPoints,
                       "scaling_exponent: need at least 3 distinct N values");
    std::vector<double> xs, ys;
    for (int n : n_list) {
        xs.push_back(double(n));
        ys.push_back(min_detuning(n, g, leak_tol));
    }
    return log_log_slope(xs, ys);
}

double effective_fidelity(const models::TwoLevelParams& p, double t) {
    const ComplexMatrix u = propagators::two_level_u(p, t);
    // restore the collective-frame phases so both states live in the
    // same (drive interaction) picture
    const Complex plus_amp = std::exp(Complex(0.0, +0.5 * p.delta * t)) * u(0, 0);
    const Complex minus_amp = std::exp(Complex(0.0, -0.5 * p.delta * t)) * u(1, 0);
    const double stark = double(p.n_atoms) * p.g * p.g / p.delta;
    const Complex eff_plus = std::exp(Complex(0.0, -stark * t));
    const Complex overlap = std::conj(plus_amp) * eff_plus + std::conj(minus_amp) * 0.0;
    return std::clamp(std::norm(overlap), 0.0, 1.0);
}

namespace {

const std::set<std::string>& known_parameter_keys() {
    static const std::set<std::string> keys = {"N", "g", "Delta", "Omega",
                                               "delta", "kappa", "gamma"};
    return keys;
}

const std::set<std::string>& known_metrics() {
    static const std::set<std::string> metrics = {
        "max_leakage", "fidelity_min", "min_detuning", "raman_max", "avg_pop_plus"};
    return metrics;
}

std::map<std::string, double> default_base() {
    return {{"N", 1.0},     {"g", 1.0},     {"Delta", 10.0}, {"Omega", 1.0},
            {"delta", 0.0}, {"kappa", 0.0}, {"gamma", 0.0}};
}

models::TwoLevelParams two_level_from(const std::map<std::string, double>& v) {
    models::TwoLevelParams p;
    p.n_atoms = int(std::llround(v.at("N")));
    p.g = v.at("g");
    p.delta = v.at("Delta");
    p.kappa = v.at("kappa");
    p.gamma = v.at("gamma");
    p.validate();
    return p;
}

models::LambdaParams lambda_from(const std::map<std::string, double>& v) {
    models::LambdaParams p;
    p.n_atoms = int(std::llround(v.at("N")));
    p.g = v.at("g");
    p.omega = v.at("Omega");
    p.delta_big = v.at("Delta");
    p.delta_raman = v.at("delta");
    p.validate();
    return p;
}

// peak |u3| population from initial |u2>, scanned over the slow beat
double raman_transfer_max(const models::LambdaParams& p) {
    const ComplexMatrix h = models::lambda_nonresonant_h(p);
    const numerics::EigDecomposition eig = numerics::hermitian_eig(h);
    ComplexVector psi0 = ComplexVector::Zero(3);
    psi0[1] = 1.0;
    const ComplexVector c = eig.eigenvectors.adjoint() * psi0;

    // beat window between the two slow branches (smallest |eigenvalue|)
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(eig.eigenvalues[a]) < std::abs(eig.eigenvalues[b]);
    });
    const double gap = std::abs(eig.eigenvalues[order[0]] - eig.eigenvalues[order[1]]);
    const double fast = std::abs(eig.eigenvalues.maxCoeff() - eig.eigenvalues.minCoeff());
    double window = (gap > 1e-12) ? 2.0 * kPi / gap : 0.0;
    if (fast > 1e-12) window = std::max(window, 2.0 * kPi / fast);
    if (window == 0.0) {
        const Complex amp = (eig.eigenvectors.row(2) * c).value();
        return std::norm(amp);  // fully degenerate spectrum: gamma is static
    }

    auto gamma_pop = [&](double t) {
        Complex amp(0.0, 0.0);
        for (int j = 0; j < 3; ++j)
            amp += eig.eigenvectors(2, j) * c[j] *
                   std::exp(Complex(0.0, -eig.eigenvalues[j] * t));
        return std::norm(amp);
    };
    return numerics::scan_max(gamma_pop, 0.0, window);
}

double fidelity_min_scan(const models::TwoLevelParams& p) {
    const auto cf = propagators::TwoLevelClosedForm::from(p);
    const double window = cf.period(p);
    return -numerics::scan_max([&](double t) { return -effective_fidelity(p, t); },
                               0.0, window);
}

double avg_pop_plus(const models::TwoLevelParams& p, double t_max, int grid_points) {
    const auto model = dissipative::DecayModel::from(p);
    const Trajectory traj = dissipative::simulate_collective_decay(
        p, model, linspace(0.0, t_max, grid_points));
    const auto& pop = traj.series_values("pop_plus");
    double area = 0.0;
    for (std::size_t i = 1; i < traj.times.size(); ++i)
        area += 0.5 * (pop[i] + pop[i - 1]) * (traj.times[i] - traj.times[i - 1]);
    return area / (traj.times.back() - traj.times.front());
}

double evaluate_metric(const std::string& metric, const SweepSpec& spec,
                       const std::map<std::string, double>& values) {
    if (metric == "max_leakage") {
        if (spec.model == "lambda")
            return propagators::max_leakage_lambda_resonant(lambda_from(values));
        return propagators::max_leakage_two_level(two_level_from(values));
    }
    if (metric == "fidelity_min") return fidelity_min_scan(two_level_from(values));
    if (metric == "min_detuning")
        return min_detuning(int(std::llround(values.at("N"))), values.at("g"),
                            spec.leak_tol);
    if (metric == "raman_max") return raman_transfer_max(lambda_from(values));
    if (metric == "avg_pop_plus")
        return avg_pop_plus(two_level_from(values), spec.t_max, spec.grid_points);
    throw SimError(ErrorCode::UnknownMetric, "unknown metric '" + metric + "'");
}

void validate_spec(const SweepSpec& spec) {
    if (spec.model != "two_level" && spec.model != "lambda")
        throw SimError(ErrorCode::ValidationError,
                       "sweep model must be two_level or lambda");
    if (spec.axes.empty())
        throw SimError(ErrorCode::ValidationError, "sweep needs at least one axis");
    if (spec.metrics.empty())
        throw SimError(ErrorCode::ValidationError, "sweep needs at least one metric");
    std::set<std::string> seen;
    for (const auto& axis : spec.axes) {
        if (!known_parameter_keys().count(axis.name))
            throw SimError(ErrorCode::ValidationError,
                           "unknown sweep axis '" + axis.name + "'");
        if (axis.values.empty())
            throw SimError(ErrorCode::ValidationError,
                           "sweep axis '" + axis.name + "' is empty");
        if (!seen.insert(axis.name).second)
            throw SimError(ErrorCode::ValidationError,
                           "duplicate sweep axis '" + axis.name + "'");
    }
    for (const auto& [key, value] : spec.base)
        if (!known_parameter_keys().count(key))
            throw SimError(ErrorCode::ValidationError,
                           "unknown sweep base parameter '" + key + "'");
    for (const auto& metric : spec.metrics)
        if (!known_metrics().count(metric))
            throw SimError(ErrorCode::UnknownMetric, "unknown metric '" + metric + "'");
}

} // namespace

std::string sweep_spec_hash(const SweepSpec& spec) {
    std::ostringstream os;
    os << "model=" << spec.model << ";axes=";
    for (const auto& axis : spec.axes) {
        os << axis.name << ":";
        for (double v : axis.values) os << format_double(v) << ",";
        os << ";";
    }
    os << "metrics=";
    for (const auto& m : spec.metrics) os << m << ",";
    os << ";base=";
    for (const auto& [k, v] : spec.base) os << k << "=" << format_double(v) << ",";
    os << ";leak_tol=" << format_double(spec.leak_tol)
       << ";t_max=" << format_double(spec.t_max)
       << ";grid_points=" << spec.grid_points;
    const std::string text = os.str();
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

SweepResult sweep(const SweepSpec& spec, int jobs) {
    validate_spec(spec);
    SweepResult result;
    result.provenance = sweep_spec_hash(spec);

    std::size_t total = 1;
    for (const auto& axis : spec.axes) {
        result.axis_names.push_back(axis.name);
        total *= axis.values.size();
    }

    std::map<std::string, double> base = default_base();
    for (const auto& [k, v] : spec.base) base[k] = v;

    const std::size_t n_metrics = spec.metrics.size();
    result.rows.resize(total * n_metrics);

    auto eval_point = [&](std::size_t point_idx) {
        // lexicographic decode, first axis slowest
        std::map<std::string, double> values = base;
        std::vector<double> point(spec.axes.size());
        std::size_t rem = point_idx;
        for (std::size_t a = spec.axes.size(); a-- > 0;) {
            const auto& axis = spec.axes[a];
            const std::size_t k = rem % axis.values.size();
            rem /= axis.values.size();
            point[a] = axis.values[k];
            values[axis.name] = axis.values[k];
        }
        for (std::size_t m = 0; m < n_metrics; ++m) {
            SweepRow& row = result.rows[point_idx * n_metrics + m];
            row.point = point;
            row.metric = spec.metrics[m];
            row.value = evaluate_metric(spec.metrics[m], spec, values);
        }
    };

    if (jobs <= 1 || total <= 1) {
        for (std::size_t i = 0; i < total; ++i) eval_point(i);
        return result;
    }

    const int workers = std::min<std::size_t>(jobs, total);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < total; i += workers) eval_point(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
    return result;
}

} // namespace dsim::analysis
