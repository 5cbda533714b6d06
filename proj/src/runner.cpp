#include "detunesim/runner.hpp"

#include "detunesim/analysis.hpp"
#include "detunesim/csv.hpp"
#include "detunesim/dissipative.hpp"
#include "detunesim/propagators.hpp"
#include "detunesim/svg.hpp"
#include "detunesim/validation.hpp"
#include "detunesim/version.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

namespace dsim::cli {

namespace {

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b"};

void run_indexed(std::size_t total, int jobs,
                 const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || total <= 1) {
        for (std::size_t i = 0; i < total; ++i) fn(i);
        return;
    }
    const int workers = int(std::min<std::size_t>(jobs, total));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = std::size_t(w); i < total; i += workers) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (const auto& err : errors)
        if (err) std::rethrow_exception(err);
}

Trajectory simulate_lambda_trajectory(const RunConfig& c, int n_atoms) {
    models::LambdaParams p = c.lambda;
    p.n_atoms = n_atoms;
    propagators::Amplitudes initial{0.0, 0.0, 0.0};
    if (c.initial_state == "u1") initial[0] = 1.0;
    if (c.initial_state == "u2") initial[1] = 1.0;
    if (c.initial_state == "u3") initial[2] = 1.0;
    auto [traj, sol] = propagators::lambda_nonresonant_exact(
        p, initial, linspace(0.0, c.t_max, c.grid_points));
    return std::move(traj);
}

Trajectory simulate_two_level_trajectory(const RunConfig& c, int n_atoms) {
    models::TwoLevelParams p = c.two_level;
    p.n_atoms = n_atoms;
    const auto grid = linspace(0.0, c.t_max, c.grid_points);
    if (c.decay_mode == dissipative::DecayMode::Full) {
        dissipative::SimOptions opt;
        opt.fock_cutoff = c.fock_cutoff;
        return dissipative::simulate_full_lindblad(p, c.fock_cutoff, grid, opt);
    }
    const auto model =
        dissipative::DecayModel::from(p, dissipative::DecayMode::Collective3,
                                      c.gamma_scaling);
    return dissipative::simulate_collective_decay(p, model, grid);
}

struct FigureBundle {
    std::vector<Trajectory> trajectories;  // one per N
    std::string csv_stem;
    std::string plot_series;  // series drawn in the SVG, one curve per N
    std::string plot_title;
    std::string y_label;
};

FigureBundle compute_figure(const RunConfig& c) {
    FigureBundle bundle;
    bundle.trajectories.resize(c.figure_n_values.size());
    run_indexed(c.figure_n_values.size(), c.jobs, [&](std::size_t i) {
        const int n = c.figure_n_values[i];
        if (c.figure == FigureId::Fig2)
            bundle.trajectories[i] = simulate_two_level_trajectory(c, n);
        else
            bundle.trajectories[i] = simulate_lambda_trajectory(c, n);
    });
    switch (c.figure) {
        case FigureId::Fig2:
            bundle.csv_stem = "fig2";
            bundle.plot_series = "pop_plus";
            bundle.plot_title = "Population of |+> under decay";
            bundle.y_label = "P+";
            break;
        case FigureId::Fig4:
            bundle.csv_stem = "fig4";
            bundle.plot_series = "pop_u1";
            bundle.plot_title = "Excited-state population, two-photon resonance";
            bundle.y_label = "P(u1)";
            break;
        case FigureId::Fig5:
            bundle.csv_stem = "fig5";
            bundle.plot_series = "pop_u3";
            bundle.plot_title = "Raman transfer, two-photon nonresonance";
            bundle.y_label = "population";
            break;
    }
    return bundle;
}

std::string manifest_text(const RunConfig& c,
                          const std::vector<std::filesystem::path>& files,
                          double wall_ms) {
    std::ostringstream os;
    os << "detune-sim run manifest\n"
       << "tool_version: " << kVersion << "\n"
       << "command: " << command_name(c.command) << "\n"
       << "config_hash: " << c.config_hash << "\n"
       << "units: all quantities in units of g = 1\n"
       << "config: " << c.canonical_json << "\n"
       << "outputs:\n";
    for (const auto& f : files) os << "  " << f.filename().string() << "\n";
    os << "wall_time_ms: " << format_double(wall_ms) << "\n";
    return os.str();
}

void commit_text_file(const std::string& text, const std::filesystem::path& path) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw SimError(ErrorCode::IoError, "cannot open " + tmp.string());
        out << text;
        if (!out) throw SimError(ErrorCode::IoError, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw SimError(ErrorCode::IoError,
                       "rename to " + path.string() + " failed: " + ec.message());
}

} // namespace

RunOutcome run(const RunConfig& c) {
    const auto start = std::chrono::steady_clock::now();
    std::error_code ec;
    std::filesystem::create_directories(c.output_dir, ec);
    if (ec)
        throw SimError(ErrorCode::IoError,
                       "cannot create output dir " + c.output_dir.string());

    RunOutcome outcome;
    std::ostringstream summary;

    switch (c.command) {
        case Command::Simulate: {
            const Trajectory traj =
                (c.model == ModelKind::TwoLevel)
                    ? simulate_two_level_trajectory(c, c.two_level.n_atoms)
                    : simulate_lambda_trajectory(c, c.lambda.n_atoms);
            const auto path = c.output_dir / "trajectory.csv";
            write_trajectory_csv(traj, path);
            outcome.files.push_back(path);
            summary << "trajectory with " << traj.times.size() << " points -> "
                    << path.string() << "\n";
            break;
        }
        case Command::Figure: {
            const FigureBundle bundle = compute_figure(c);
            std::vector<SvgSeries> curves;
            for (std::size_t i = 0; i < c.figure_n_values.size(); ++i) {
                const int n = c.figure_n_values[i];
                const auto path =
                    c.output_dir / (bundle.csv_stem + "_N" + std::to_string(n) + ".csv");
                write_trajectory_csv(bundle.trajectories[i], path);
                outcome.files.push_back(path);
                if (c.figure == FigureId::Fig5) {
                    // paper styling: u3 solid, u2 dashed, u1 dotted
                    const char* color = kSeriesColors[i % 6];
                    curves.push_back({"u3, N=" + std::to_string(n), bundle.trajectories[i].times,
                                      bundle.trajectories[i].series_values("pop_u3"), color, ""});
                    curves.push_back({"u2, N=" + std::to_string(n), bundle.trajectories[i].times,
                                      bundle.trajectories[i].series_values("pop_u2"), color,
                                      "6,3"});
                    curves.push_back({"u1, N=" + std::to_string(n), bundle.trajectories[i].times,
                                      bundle.trajectories[i].series_values("pop_u1"), color,
                                      "2,3"});
                } else {
                    curves.push_back({"N=" + std::to_string(n), bundle.trajectories[i].times,
                                      bundle.trajectories[i].series_values(bundle.plot_series),
                                      kSeriesColors[i % 6], ""});
                }
            }
            const auto svg_path = c.output_dir / (bundle.csv_stem + ".svg");
            write_line_plot(svg_path, bundle.plot_title, "t (1/g)", bundle.y_label, curves);
            outcome.files.push_back(svg_path);
            summary << figure_name(c.figure) << ": " << c.figure_n_values.size()
                    << " trajectories + plot\n";
            break;
        }
        case Command::Threshold: {
            std::vector<std::vector<double>> rows;
            for (int n : c.threshold.n_list) {
                const double dstar =
                    analysis::min_detuning(n, c.two_level.g, c.threshold.leak_tol);
                rows.push_back({double(n), dstar});
                summary << "Delta*(N=" << n << ") = " << format_double(dstar) << "\n";
            }
            const auto path = c.output_dir / "threshold.csv";
            write_csv({"N", "delta_star"}, rows, path);
            outcome.files.push_back(path);
            std::set<int> distinct(c.threshold.n_list.begin(), c.threshold.n_list.end());
            if (distinct.size() >= 3) {
                const double slope = analysis::scaling_exponent(
                    c.two_level.g, c.threshold.leak_tol, c.threshold.n_list);
                summary << "scaling_exponent = " << format_double(slope) << "\n";
            }
            break;
        }
        case Command::Sweep: {
            const analysis::SweepResult result = analysis::sweep(c.sweep, c.jobs);
            const auto path = c.output_dir / "sweep.csv";
            write_sweep_csv(result, path);
            outcome.files.push_back(path);
            summary << result.rows.size() << " sweep rows (provenance "
                    << result.provenance << ")\n";
            break;
        }
        case Command::Validate: {
            const auto checks = validation::run_validation();
            std::ostringstream report;
            bool all = true;
            for (const auto& check : checks) {
                report << (check.passed ? "PASS" : "FAIL") << "  " << check.name << "  ("
                       << check.detail << ")\n";
                all &= check.passed;
            }
            report << (all ? "all checks passed" : "some checks FAILED") << "\n";
            const auto path = c.output_dir / "validation_report.txt";
            commit_text_file(report.str(), path);
            outcome.files.push_back(path);
            summary << report.str();
            outcome.ok = all;
            break;
        }
    }

    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    const auto manifest_path = c.output_dir / "run_manifest.txt";
    commit_text_file(manifest_text(c, outcome.files, wall_ms), manifest_path);
    outcome.files.push_back(manifest_path);
    outcome.summary = summary.str();
    return outcome;
}

} // namespace dsim::cli
