#include "detunesim/types.hpp"

#include <algorithm>
#include <cstdio>

namespace dsim {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::NonHermitian: return "NonHermitian";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::NonPhysicalState: return "NonPhysicalState";
        case ErrorCode::DimensionCap: return "DimensionCap";
        case ErrorCode::ExpectedResonance: return "ExpectedResonance";
        case ErrorCode::DegenerateScale: return "DegenerateScale";
        case ErrorCode::BranchAssignment: return "BranchAssignment";
        case ErrorCode::UnknownMetric: return "UnknownMetric";
        case ErrorCode::InsufficientPoints: return "InsufficientPoints";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ValidationError: return "ValidationError";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

double max_abs(const ComplexMatrix& m) noexcept {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

double hermiticity_violation(const ComplexMatrix& m) noexcept {
    if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
    return max_abs(m - m.adjoint());
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) noexcept {
    if (m.rows() != m.cols()) return false;
    return hermiticity_violation(m) <= rel_tol * std::max(max_abs(m), 1e-300);
}

void Trajectory::add_series(std::string name, std::vector<double> values) {
    if (values.size() != times.size()) {
        throw SimError(ErrorCode::DimensionMismatch,
                       "series '" + name + "' length " + std::to_string(values.size()) +
                           " does not match grid length " + std::to_string(times.size()));
    }
    series.emplace_back(std::move(name), std::move(values));
}

bool Trajectory::has_series(const std::string& name) const noexcept {
    for (const auto& [n, v] : series)
        if (n == name) return true;
    return false;
}

const std::vector<double>& Trajectory::series_values(const std::string& name) const {
    for (const auto& [n, v] : series)
        if (n == name) return v;
    throw SimError(ErrorCode::InvalidArgument, "no series named '" + name + "'");
}

std::vector<double> linspace(double t0, double t1, int points) {
    if (points < 2)
        throw SimError(ErrorCode::InvalidArgument, "linspace needs at least 2 points");
    std::vector<double> out(points);
    const double step = (t1 - t0) / (points - 1);
    for (int i = 0; i < points; ++i) out[i] = t0 + step * i;
    out.back() = t1;
    return out;
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

} // namespace dsim
