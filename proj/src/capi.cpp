// capi.cpp — extern "C" surface over the C++ core. Exceptions are
// translated to status codes; the message lands in a thread-local slot.

#include "detune_sim.h"

#include "detunesim/analysis.hpp"
#include "detunesim/config.hpp"
#include "detunesim/propagators.hpp"
#include "detunesim/runner.hpp"
#include "detunesim/validation.hpp"
#include "detunesim/version.hpp"

#include <memory>
#include <string>
#include <vector>

namespace {

thread_local std::string g_last_error;

ds_status status_of(const dsim::SimError& e) {
    using dsim::ErrorCode;
    switch (e.code()) {
        case ErrorCode::InvalidArgument: return DS_ERR_INVALID_ARGUMENT;
        case ErrorCode::ParseError: return DS_ERR_PARSE;
        case ErrorCode::ValidationError: return DS_ERR_VALIDATION;
        case ErrorCode::DimensionMismatch:
        case ErrorCode::DimensionCap: return DS_ERR_DIMENSION;
        case ErrorCode::NonHermitian: return DS_ERR_NON_HERMITIAN;
        case ErrorCode::NonPhysicalState: return DS_ERR_NON_PHYSICAL_STATE;
        case ErrorCode::DegenerateScale: return DS_ERR_DEGENERATE_SCALE;
        case ErrorCode::UnknownMetric: return DS_ERR_UNKNOWN_METRIC;
        case ErrorCode::ExpectedResonance:
        case ErrorCode::InsufficientPoints:
        case ErrorCode::BranchAssignment:
        case ErrorCode::DomainError: return DS_ERR_DOMAIN;
        case ErrorCode::IoError: return DS_ERR_IO;
        case ErrorCode::Internal: return DS_ERR_INTERNAL;
    }
    return DS_ERR_INTERNAL;
}

template <typename Fn>
ds_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return DS_OK;
    } catch (const dsim::SimError& e) {
        g_last_error = std::string(dsim::error_code_name(e.code())) + ": " + e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return DS_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return DS_ERR_INTERNAL;
    }
}

} // namespace

struct ds_config {
    dsim::cli::RunConfig config;
    std::string source_json;  // pre-validation text, for override re-parsing
};

struct ds_run_result {
    std::vector<std::string> files;
    std::string summary;
};

struct ds_validation {
    std::vector<dsim::validation::Check> checks;
};

extern "C" {

const char* ds_version(void) { return dsim::kVersion; }

const char* ds_status_name(ds_status status) {
    switch (status) {
        case DS_OK: return "DS_OK";
        case DS_ERR_INVALID_ARGUMENT: return "DS_ERR_INVALID_ARGUMENT";
        case DS_ERR_PARSE: return "DS_ERR_PARSE";
        case DS_ERR_VALIDATION: return "DS_ERR_VALIDATION";
        case DS_ERR_DIMENSION: return "DS_ERR_DIMENSION";
        case DS_ERR_NON_HERMITIAN: return "DS_ERR_NON_HERMITIAN";
        case DS_ERR_NON_PHYSICAL_STATE: return "DS_ERR_NON_PHYSICAL_STATE";
        case DS_ERR_DEGENERATE_SCALE: return "DS_ERR_DEGENERATE_SCALE";
        case DS_ERR_UNKNOWN_METRIC: return "DS_ERR_UNKNOWN_METRIC";
        case DS_ERR_DOMAIN: return "DS_ERR_DOMAIN";
        case DS_ERR_IO: return "DS_ERR_IO";
        case DS_ERR_INTERNAL: return "DS_ERR_INTERNAL";
    }
    return "DS_ERR_INTERNAL";
}

const char* ds_last_error(void) { return g_last_error.c_str(); }

ds_status ds_config_load(const char* path, ds_config** out) {
    return guarded([&] {
        if (!path || !out)
            throw dsim::SimError(dsim::ErrorCode::InvalidArgument, "null argument");
        auto handle = std::make_unique<ds_config>();
        handle->config = dsim::cli::load_config(path);
        handle->source_json = handle->config.canonical_json;
        *out = handle.release();
    });
}

ds_status ds_config_from_json(const char* json_text, ds_config** out) {
    return guarded([&] {
        if (!json_text || !out)
            throw dsim::SimError(dsim::ErrorCode::InvalidArgument, "null argument");
        auto handle = std::make_unique<ds_config>();
        handle->config = dsim::cli::parse_config(json_text);
        handle->source_json = handle->config.canonical_json;
        *out = handle.release();
    });
}

ds_status ds_config_set(ds_config** cfg, const char* key, const char* value) {
    return guarded([&] {
        if (!cfg || !*cfg || !key || !value)
            throw dsim::SimError(dsim::ErrorCode::InvalidArgument, "null argument");
        const std::string updated =
            dsim::cli::apply_override((*cfg)->source_json, key, value);
        auto handle = std::make_unique<ds_config>();
        handle->config = dsim::cli::parse_config(updated);
        handle->source_json = handle->config.canonical_json;
        delete *cfg;
        *cfg = handle.release();
    });
}

const char* ds_config_canonical_json(const ds_config* cfg) {
    return cfg ? cfg->config.canonical_json.c_str() : "";
}

const char* ds_config_hash(const ds_config* cfg) {
    return cfg ? cfg->config.config_hash.c_str() : "";
}

void ds_config_free(ds_config* cfg) { delete cfg; }

ds_status ds_run(const ds_config* cfg, ds_run_result** out) {
    return guarded([&] {
        if (!cfg || !out)
            throw dsim::SimError(dsim::ErrorCode::InvalidArgument, "null argument");
        const dsim::cli::RunOutcome outcome = dsim::cli::run(cfg->config);
        if (!outcome.ok)
            throw dsim::SimError(dsim::ErrorCode::ValidationError,
                                 "validation checks failed:\n" + outcome.summary);
        auto handle = std::make_unique<ds_run_result>();
        for (const auto& f : outcome.files) handle->files.push_back(f.string());
        handle->summary = outcome.summary;
        *out = handle.release();
    });
}

size_t ds_run_result_file_count(const ds_run_result* result) {
    return result ? result->files.size() : 0;
}

const char* ds_run_result_file(const ds_run_result* result, size_t index) {
    if (!result || index >= result->files.size()) return nullptr;
    return result->files[index].c_str();
}

const char* ds_run_result_summary(const ds_run_result* result) {
    return result ? result->summary.c_str() : "";
}

void ds_run_result_free(ds_run_result* result) { delete result; }

ds_status ds_max_leakage(int n_atoms, double g, double delta, double* out) {
    return guarded([&] {
        if (!out) throw dsim::SimError(dsim::ErrorCode::InvalidArgument, "null output");
        dsim::models::TwoLevelParams p{n_atoms, g, delta, 0.0, 0.0};
        *out = dsim::propagators::max_leakage_two_level(p);
    });
}

ds_status ds_min_detuning(int n_atoms, double g, double leak_tol, double* out) {
    return guarded([&] {
        if (!out) throw dsim::SimError(dsim::ErrorCode::InvalidArgument, "null output");
        *out = dsim::analysis::min_detuning(n_atoms, g, leak_tol);
    });
}

ds_status ds_scaling_exponent(const int* n_list, size_t n_count, double g,
                              double leak_tol, double* out) {
    return guarded([&] {
        if (!out || (!n_list && n_count))
            throw dsim::SimError(dsim::ErrorCode::InvalidArgument, "null argument");
        const std::vector<int> ns(n_list, n_list + n_count);
        *out = dsim::analysis::scaling_exponent(g, leak_tol, ns);
    });
}

ds_status ds_validate(ds_validation** out) {
    return guarded([&] {
        if (!out) throw dsim::SimError(dsim::ErrorCode::InvalidArgument, "null output");
        auto handle = std::make_unique<ds_validation>();
        handle->checks = dsim::validation::run_validation();
        *out = handle.release();
    });
}

size_t ds_validation_count(const ds_validation* v) {
    return v ? v->checks.size() : 0;
}

const char* ds_validation_name(const ds_validation* v, size_t index) {
    if (!v || index >= v->checks.size()) return nullptr;
    return v->checks[index].name.c_str();
}

int ds_validation_passed(const ds_validation* v, size_t index) {
    if (!v || index >= v->checks.size()) return 0;
    return v->checks[index].passed ? 1 : 0;
}

const char* ds_validation_detail(const ds_validation* v, size_t index) {
    if (!v || index >= v->checks.size()) return nullptr;
    return v->checks[index].detail.c_str();
}

void ds_validation_free(ds_validation* v) { delete v; }

} // extern "C"
