#include "detunesim/numerics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace dsim::numerics {

namespace {

void require_square(const ComplexMatrix& m, const char* who) {
    if (m.rows() != m.cols() || m.rows() < 1)
        throw SimError(ErrorCode::DimensionMismatch,
                       std::string(who) + ": matrix must be square and non-empty");
}

} // namespace

EigDecomposition hermitian_eig(const ComplexMatrix& m) {
    require_square(m, "hermitian_eig");
    const double scale = std::max(max_abs(m), 1e-300);
    const double violation = hermiticity_violation(m);
    if (violation > 1e-10 * scale) {
        throw SimError(ErrorCode::NonHermitian,
                       "hermitian_eig: symmetry violation " + format_double(violation) +
                           " exceeds " + format_double(1e-10 * scale));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success)
        throw SimError(ErrorCode::Internal, "hermitian_eig: eigensolver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix unitary_propagator(const ComplexMatrix& h, double t) {
    if (!std::isfinite(t))
        throw SimError(ErrorCode::InvalidArgument, "unitary_propagator: t must be finite");
    const EigDecomposition eig = hermitian_eig(h);
    const Eigen::Index dim = h.rows();
    ComplexVector phases(dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        phases[k] = std::exp(Complex(0.0, -t * eig.eigenvalues[k]));
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

double default_lindblad_step(const ComplexMatrix& h, double t0, double t1) {
    const double span = t1 - t0;
    double row_sum = 0.0;
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        row_sum = std::max(row_sum, h.row(i).cwiseAbs().sum());
    double step = span / 2000.0;
    if (row_sum > 0.0) step = std::min(step, 0.01 / row_sum);
    return step;
}

namespace {

// Lindblad right-hand side with preallocated scratch. L^+L products are
// cached once; the commutator and jump terms reuse `tmp`.
class LindbladRhs {
public:
    LindbladRhs(const ComplexMatrix& h, const std::vector<ComplexMatrix>& ops)
        : h_(h), ops_(ops) {
        const Eigen::Index dim = h.rows();
        for (const auto& op : ops_) ldl_.push_back(op.adjoint() * op);
        tmp_.resize(dim, dim);
    }

    void operator()(const ComplexMatrix& rho, ComplexMatrix& out) {
        const Complex minus_i(0.0, -1.0);
        tmp_.noalias() = h_ * rho;
        tmp_.noalias() -= rho * h_;
        out = minus_i * tmp_;
        for (std::size_t k = 0; k < ops_.size(); ++k) {
            tmp_.noalias() = ops_[k] * rho * ops_[k].adjoint();
            out += tmp_;
            tmp_.noalias() = ldl_[k] * rho;
            tmp_.noalias() += rho * ldl_[k];
            out -= 0.5 * tmp_;
        }
    }

private:
    const ComplexMatrix& h_;
    const std::vector<ComplexMatrix>& ops_;
    std::vector<ComplexMatrix> ldl_;
    ComplexMatrix tmp_;
};

double min_eigenvalue(const ComplexMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        ComplexMatrix(0.5 * (rho + rho.adjoint())));
    return solver.eigenvalues().minCoeff();
}

} // namespace

Trajectory integrate_lindblad(const ComplexMatrix& rho0, const ComplexMatrix& h,
                              const std::vector<ComplexMatrix>& collapse_ops,
                              const std::vector<double>& t_grid,
                              const LindbladOptions& options) {
    require_square(rho0, "integrate_lindblad");
    require_square(h, "integrate_lindblad");
    const Eigen::Index dim = rho0.rows();
    if (h.rows() != dim)
        throw SimError(ErrorCode::DimensionMismatch,
                       "integrate_lindblad: H dimension does not match rho0");
    for (const auto& op : collapse_ops)
        if (op.rows() != dim || op.cols() != dim)
            throw SimError(ErrorCode::DimensionMismatch,
                           "integrate_lindblad: collapse operator dimension mismatch");
    for (const auto& [name, obs] : options.observables)
        if (obs.rows() != dim || obs.cols() != dim)
            throw SimError(ErrorCode::DimensionMismatch,
                           "integrate_lindblad: observable '" + name + "' dimension mismatch");
    if (t_grid.size() < 2)
        throw SimError(ErrorCode::InvalidArgument,
                       "integrate_lindblad: grid needs at least 2 points");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw SimError(ErrorCode::InvalidArgument,
                           "integrate_lindblad: time grid must ascend");

    const double rho_scale = std::max(max_abs(rho0), 1e-300);
    if (hermiticity_violation(rho0) > 1e-10 * rho_scale)
        throw SimError(ErrorCode::NonPhysicalState,
                       "integrate_lindblad: rho0 is not Hermitian");
    if (std::abs(rho0.trace().real() - 1.0) > 1e-8 || std::abs(rho0.trace().imag()) > 1e-10)
        throw SimError(ErrorCode::NonPhysicalState,
                       "integrate_lindblad: rho0 trace is " + format_double(rho0.trace().real()) +
                           ", expected 1");
    if (min_eigenvalue(rho0) < -1e-10)
        throw SimError(ErrorCode::NonPhysicalState,
                       "integrate_lindblad: rho0 has eigenvalue " +
                           format_double(min_eigenvalue(rho0)) + " < -1e-10");

    double step = options.step;
    if (step <= 0.0) step = default_lindblad_step(h, t_grid.front(), t_grid.back());

    Trajectory out;
    out.times = t_grid;
    std::vector<std::vector<double>> obs_values(options.observables.size());
    for (auto& v : obs_values) v.reserve(t_grid.size());

    LindbladRhs rhs(h, collapse_ops);
    ComplexMatrix rho = rho0;
    ComplexMatrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), stage(dim, dim);

    const double trace0 = rho0.trace().real();
    const double purity0 = (rho0 * rho0).trace().real();
    double trace_drift = 0.0, purity_drift = 0.0;
    double min_eig = min_eigenvalue(rho0);

    auto record = [&](const ComplexMatrix& r) {
        for (std::size_t k = 0; k < options.observables.size(); ++k)
            obs_values[k].push_back((options.observables[k].second * r).trace().real());
        if (options.record_diagnostics) {
            trace_drift = std::max(trace_drift, std::abs(r.trace().real() - trace0));
            purity_drift = std::max(purity_drift, std::abs((r * r).trace().real() - purity0));
            min_eig = std::min(min_eig, min_eigenvalue(r));
        }
    };

    record(rho);
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        const double span = t_grid[i] - t_grid[i - 1];
        const int substeps = std::max(1, int(std::ceil(span / step - 1e-12)));
        const double hstep = span / substeps;
        for (int s = 0; s < substeps; ++s) {
            rhs(rho, k1);
            stage = rho + (0.5 * hstep) * k1;
            rhs(stage, k2);
            stage = rho + (0.5 * hstep) * k2;
            rhs(stage, k3);
            stage = rho + hstep * k3;
            rhs(stage, k4);
            rho += (hstep / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        record(rho);
    }

    for (std::size_t k = 0; k < options.observables.size(); ++k)
        out.add_series(options.observables[k].first, std::move(obs_values[k]));
    out.metadata["step"] = format_double(step);
    if (options.record_diagnostics) {
        out.metadata["trace_drift_max"] = format_double(trace_drift);
        out.metadata["purity_drift_max"] = format_double(purity_drift);
        out.metadata["min_eigenvalue"] = format_double(min_eig);
    }
    return out;
}

std::array<Complex, 3> cubic_roots(double c2, double c1, double c0) {
    for (double c : {c2, c1, c0})
        if (!std::isfinite(c))
            throw SimError(ErrorCode::InvalidArgument, "cubic_roots: coefficients must be finite");
    Eigen::Matrix3d companion;
    companion << 0.0, 0.0, -c0,
                 1.0, 0.0, -c1,
                 0.0, 1.0, -c2;
    Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw SimError(ErrorCode::Internal, "cubic_roots: eigensolver failed");
    std::array<Complex, 3> roots{solver.eigenvalues()[0], solver.eigenvalues()[1],
                                 solver.eigenvalues()[2]};
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

double scan_max(const std::function<double(double)>& f, double t0, double t1, int points) {
    if (points < 2)
        throw SimError(ErrorCode::InvalidArgument, "scan_max: need at least 2 points");
    double best = f(t0);
    const double step = (t1 - t0) / (points - 1);
    for (int i = 1; i < points; ++i) best = std::max(best, f(t0 + i * step));
    return best;
}

} // namespace dsim::numerics
