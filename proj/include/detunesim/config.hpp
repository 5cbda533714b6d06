// config.hpp — run configuration: JSON parsing, validation, defaults,
// figure presets, and the provenance hash.

#pragma once

#include "detunesim/analysis.hpp"
#include "detunesim/dissipative.hpp"
#include "detunesim/models.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace dsim::cli {

enum class Command { Simulate, Sweep, Figure, Threshold, Validate };
enum class ModelKind { TwoLevel, Lambda };
enum class FigureId { Fig2, Fig4, Fig5 };

struct ThresholdSpec {
    double leak_tol = 0.01;
    std::vector<int> n_list = {1, 4, 16};
};

struct RunConfig {
    Command command = Command::Simulate;
    ModelKind model = ModelKind::TwoLevel;
    models::TwoLevelParams two_level;
    models::LambdaParams lambda;
    double t_max = 0.0;       // defaulted to 100/g when absent
    int grid_points = 2001;
    dissipative::DecayMode decay_mode = dissipative::DecayMode::Collective3;
    dissipative::GammaScaling gamma_scaling = dissipative::GammaScaling::SingleAtom;
    int fock_cutoff = 2;
    std::string initial_state = "u2";    // lambda simulations
    FigureId figure = FigureId::Fig2;
    std::vector<int> figure_n_values = {1, 5, 25};
    ThresholdSpec threshold;
    analysis::SweepSpec sweep;
    std::filesystem::path output_dir = "out";
    int jobs = 1;

    // Canonical JSON echo (defaults applied, keys sorted) and its hash.
    std::string canonical_json;
    std::string config_hash;
};

// Throws SimError(ParseError) with position info for malformed JSON and
// SimError(ValidationError) naming the offending key; unknown keys are
// rejected.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& json_text);

// Applies a dotted-path override ("parameters.N=25") onto a JSON config
// text and returns the updated text. The value is parsed as JSON when
// possible, else taken as a string.
std::string apply_override(const std::string& json_text, const std::string& key,
                           const std::string& value);

// Preset parameter bundle for a figure command, as a JSON config text.
std::string figure_preset(FigureId id);

const char* command_name(Command c);
const char* figure_name(FigureId id);

} // namespace dsim::cli
