// types.hpp — shared dense types, error codes, and the Trajectory record.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class ErrorCode {
    InvalidArgument,
    NonHermitian,
    DimensionMismatch,
    NonPhysicalState,
    DimensionCap,
    ExpectedResonance,
    DegenerateScale,
    BranchAssignment,
    UnknownMetric,
    InsufficientPoints,
    DomainError,
    ParseError,
    ValidationError,
    IoError,
    Internal,
};

class SimError : public std::runtime_error {
public:
    SimError(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

const char* error_code_name(ErrorCode code) noexcept;

// Largest |entry| of a matrix; 0 for empty.
double max_abs(const ComplexMatrix& m) noexcept;

// max_ij |M[i][j] - conj(M[j][i])|
double hermiticity_violation(const ComplexMatrix& m) noexcept;

bool is_hermitian(const ComplexMatrix& m, double rel_tol = 1e-12) noexcept;

// Time grid plus named series. The unit of all simulation output.
// Series keep insertion order so file output is deterministic.
struct Trajectory {
    std::vector<double> times;
    std::vector<std::pair<std::string, std::vector<double>>> series;
    std::map<std::string, std::string> metadata;

    void add_series(std::string name, std::vector<double> values);
    bool has_series(const std::string& name) const noexcept;
    const std::vector<double>& series_values(const std::string& name) const;
};

std::vector<double> linspace(double t0, double t1, int points);

// 17-significant-digit decimal rendering, C locale. Shared by CSV,
// manifests, and Trajectory metadata so numbers round-trip exactly.
std::string format_double(double value);

} // namespace dsim
