#include "detunesim/config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace dsim::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad_key(const std::string& context, const std::string& key) {
    throw SimError(ErrorCode::ValidationError,
                   "unknown config key '" + (context.empty() ? key : context + "." + key) + "'");
}

void reject_unknown(const json& obj, const std::string& context,
                    const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) bad_key(context, key);
}

double number_at(const json& obj, const std::string& context, const std::string& key,
                 double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number())
        throw SimError(ErrorCode::ValidationError,
                       "config key '" + context + "." + key + "' must be a number");
    return v.get<double>();
}

int int_at(const json& obj, const std::string& context, const std::string& key,
           int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        throw SimError(ErrorCode::ValidationError,
                       "config key '" + context + "." + key + "' must be an integer");
    return v.get<int>();
}

std::string string_at(const json& obj, const std::string& context, const std::string& key,
                      const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string())
        throw SimError(ErrorCode::ValidationError,
                       "config key '" + context + "." + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<int> int_list_at(const json& obj, const std::string& context,
                             const std::string& key, std::vector<int> fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_array() || v.empty())
        throw SimError(ErrorCode::ValidationError,
                       "config key '" + context + "." + key + "' must be a non-empty array");
    std::vector<int> out;
    for (const json& e : v) {
        if (!e.is_number_integer())
            throw SimError(ErrorCode::ValidationError,
                           "config key '" + context + "." + key + "' must hold integers");
        out.push_back(e.get<int>());
    }
    return out;
}

Command parse_command(const std::string& s) {
    if (s == "simulate") return Command::Simulate;
    if (s == "sweep") return Command::Sweep;
    if (s == "figure") return Command::Figure;
    if (s == "threshold") return Command::Threshold;
    if (s == "validate") return Command::Validate;
    throw SimError(ErrorCode::ValidationError, "unknown command '" + s + "'");
}

FigureId parse_figure(const std::string& s) {
    if (s == "fig2") return FigureId::Fig2;
    if (s == "fig4") return FigureId::Fig4;
    if (s == "fig5") return FigureId::Fig5;
    throw SimError(ErrorCode::ValidationError, "unknown figure '" + s + "'");
}

json canonicalize(const RunConfig& c) {
    json out;
    out["command"] = command_name(c.command);
    out["model"] = (c.model == ModelKind::TwoLevel) ? "two_level" : "lambda";
    out["parameters"] = {{"N", c.model == ModelKind::TwoLevel ? c.two_level.n_atoms
                                                              : c.lambda.n_atoms},
                         {"g", c.model == ModelKind::TwoLevel ? c.two_level.g : c.lambda.g},
                         {"Delta", c.model == ModelKind::TwoLevel ? c.two_level.delta
                                                                  : c.lambda.delta_big},
                         {"kappa", c.two_level.kappa},
                         {"gamma", c.two_level.gamma},
                         {"Omega", c.lambda.omega},
                         {"delta", c.lambda.delta_raman}};
    out["t_max"] = c.t_max;
    out["grid_points"] = c.grid_points;
    out["decay"] = {{"mode", c.decay_mode == dissipative::DecayMode::Full ? "full"
                                                                          : "collective3"},
                    {"gamma_scaling",
                     c.gamma_scaling == dissipative::GammaScaling::NAtoms ? "N" : "1"},
                    {"fock_cutoff", c.fock_cutoff}};
    out["initial_state"] = c.initial_state;
    if (c.command == Command::Figure) {
        out["figure"] = figure_name(c.figure);
        out["figure_N"] = c.figure_n_values;
    }
    if (c.command == Command::Threshold)
        out["threshold"] = {{"leak_tol", c.threshold.leak_tol}, {"N", c.threshold.n_list}};
    if (c.command == Command::Sweep) {
        json axes = json::array();
        for (const auto& axis : c.sweep.axes)
            axes.push_back({{"name", axis.name}, {"values", axis.values}});
        out["sweep"] = {{"axes", axes},
                        {"metrics", c.sweep.metrics},
                        {"base", c.sweep.base},
                        {"leak_tol", c.sweep.leak_tol},
                        {"t_max", c.sweep.t_max},
                        {"grid_points", c.sweep.grid_points}};
    }
    out["output_dir"] = c.output_dir.string();
    out["jobs"] = c.jobs;
    return out;
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

const char* command_name(Command c) {
    switch (c) {
        case Command::Simulate: return "simulate";
        case Command::Sweep: return "sweep";
        case Command::Figure: return "figure";
        case Command::Threshold: return "threshold";
        case Command::Validate: return "validate";
    }
    return "unknown";
}

const char* figure_name(FigureId id) {
    switch (id) {
        case FigureId::Fig2: return "fig2";
        case FigureId::Fig4: return "fig4";
        case FigureId::Fig5: return "fig5";
    }
    return "unknown";
}

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SimError(ErrorCode::ParseError, e.what());
    }
    if (!root.is_object())
        throw SimError(ErrorCode::ValidationError, "config root must be a JSON object");

    reject_unknown(root, "",
                   {"command", "model", "parameters", "t_max", "grid_points", "decay",
                    "initial_state", "figure", "figure_N", "threshold", "sweep",
                    "output_dir", "jobs"});
    if (!root.contains("command"))
        throw SimError(ErrorCode::ValidationError, "config key 'command' is required");

    RunConfig c;
    c.command = parse_command(string_at(root, "", "command", ""));

    // figure commands take their defaults from the preset bundle, so a
    // bare {"command":"figure","figure":"fig2"} yields the full caption
    // parameters
    json defaults = json::object();
    if (c.command == Command::Figure) {
        if (!root.contains("figure"))
            throw SimError(ErrorCode::ValidationError,
                           "figure command requires the 'figure' key");
        c.figure = parse_figure(string_at(root, "", "figure", ""));
        defaults = json::parse(figure_preset(c.figure));
    }
    const json default_params = defaults.value("parameters", json::object());

    const std::string model =
        string_at(root, "", "model", defaults.value("model", "two_level"));
    if (model == "two_level")
        c.model = ModelKind::TwoLevel;
    else if (model == "lambda")
        c.model = ModelKind::Lambda;
    else
        throw SimError(ErrorCode::ValidationError, "unknown model '" + model + "'");

    json params = root.value("parameters", json::object());
    if (!params.is_object())
        throw SimError(ErrorCode::ValidationError, "config key 'parameters' must be an object");
    reject_unknown(params, "parameters", {"N", "g", "Delta", "kappa", "gamma", "Omega", "delta"});
    auto param_default = [&](const std::string& key, double fallback) {
        return default_params.contains(key) ? default_params.at(key).get<double>()
                                            : fallback;
    };
    const int n_atoms = int_at(params, "parameters", "N", 1);
    const double g = number_at(params, "parameters", "g", param_default("g", 1.0));
    const double delta_big =
        number_at(params, "parameters", "Delta", param_default("Delta", 10.0));
    c.two_level = {n_atoms, g, delta_big,
                   number_at(params, "parameters", "kappa", param_default("kappa", 0.0)),
                   number_at(params, "parameters", "gamma", param_default("gamma", 0.0))};
    c.lambda = {n_atoms, g,
                number_at(params, "parameters", "Omega", param_default("Omega", 1.0)),
                delta_big,
                number_at(params, "parameters", "delta", param_default("delta", 0.0))};
    if (c.model == ModelKind::TwoLevel)
        c.two_level.validate();
    else
        c.lambda.validate();

    c.t_max = number_at(root, "", "t_max", defaults.value("t_max", 100.0 / g));
    if (!(c.t_max > 0.0))
        throw SimError(ErrorCode::ValidationError, "t_max must be > 0");
    c.grid_points = int_at(root, "", "grid_points", 2001);
    if (c.grid_points < 2)
        throw SimError(ErrorCode::ValidationError, "grid_points must be ≥ 2");

    json decay = root.value("decay", json::object());
    if (!decay.is_object())
        throw SimError(ErrorCode::ValidationError, "config key 'decay' must be an object");
    reject_unknown(decay, "decay", {"mode", "gamma_scaling", "fock_cutoff"});
    const std::string mode = string_at(decay, "decay", "mode", "collective3");
    if (mode == "collective3")
        c.decay_mode = dissipative::DecayMode::Collective3;
    else if (mode == "full")
        c.decay_mode = dissipative::DecayMode::Full;
    else
        throw SimError(ErrorCode::ValidationError, "unknown decay mode '" + mode + "'");
    if (decay.contains("gamma_scaling")) {
        const json& gs = decay.at("gamma_scaling");
        if (gs.is_number_integer() && gs.get<int>() == 1)
            c.gamma_scaling = dissipative::GammaScaling::SingleAtom;
        else if (gs.is_string() && gs.get<std::string>() == "N")
            c.gamma_scaling = dissipative::GammaScaling::NAtoms;
        else
            throw SimError(ErrorCode::ValidationError,
                           "decay.gamma_scaling must be 1 or \"N\"");
    }
    c.fock_cutoff = int_at(decay, "decay", "fock_cutoff", 2);
    if (c.fock_cutoff < 1)
        throw SimError(ErrorCode::ValidationError, "decay.fock_cutoff must be ≥ 1");

    c.initial_state = string_at(root, "", "initial_state", "u2");
    if (c.initial_state != "u1" && c.initial_state != "u2" && c.initial_state != "u3")
        throw SimError(ErrorCode::ValidationError,
                       "initial_state must be u1, u2, or u3");

    if (c.command == Command::Figure) {
        c.figure_n_values = int_list_at(root, "", "figure_N", {1, 5, 25});
        for (int n : c.figure_n_values)
            if (n < 1) throw SimError(ErrorCode::ValidationError, "N must be ≥ 1");
    } else if (root.contains("figure") || root.contains("figure_N")) {
        throw SimError(ErrorCode::ValidationError,
                       "'figure' keys are only valid with the figure command");
    }

    if (c.command == Command::Threshold) {
        json th = root.value("threshold", json::object());
        if (!th.is_object())
            throw SimError(ErrorCode::ValidationError,
                           "config key 'threshold' must be an object");
        reject_unknown(th, "threshold", {"leak_tol", "N"});
        c.threshold.leak_tol = number_at(th, "threshold", "leak_tol", 0.01);
        c.threshold.n_list = int_list_at(th, "threshold", "N", {1, 4, 16});
        if (!(c.threshold.leak_tol > 0.0 && c.threshold.leak_tol < 1.0))
            throw SimError(ErrorCode::ValidationError,
                           "threshold.leak_tol must lie in (0, 1)");
        for (int n : c.threshold.n_list)
            if (n < 1) throw SimError(ErrorCode::ValidationError, "N must be ≥ 1");
    } else if (root.contains("threshold")) {
        throw SimError(ErrorCode::ValidationError,
                       "'threshold' is only valid with the threshold command");
    }

    if (c.command == Command::Sweep) {
        if (!root.contains("sweep"))
            throw SimError(ErrorCode::ValidationError,
                           "sweep command requires the 'sweep' key");
        const json& sw = root.at("sweep");
        if (!sw.is_object())
            throw SimError(ErrorCode::ValidationError, "config key 'sweep' must be an object");
        reject_unknown(sw, "sweep",
                       {"axes", "metrics", "base", "leak_tol", "t_max", "grid_points"});
        if (!sw.contains("axes") || !sw.at("axes").is_array() || sw.at("axes").empty())
            throw SimError(ErrorCode::ValidationError,
                           "sweep.axes must be a non-empty array");
        c.sweep.model = model;
        for (const json& axis : sw.at("axes")) {
            if (!axis.is_object())
                throw SimError(ErrorCode::ValidationError,
                               "sweep.axes entries must be objects");
            reject_unknown(axis, "sweep.axes", {"name", "values"});
            analysis::SweepAxis a;
            a.name = string_at(axis, "sweep.axes", "name", "");
            if (a.name.empty())
                throw SimError(ErrorCode::ValidationError, "sweep axis needs a name");
            if (!axis.contains("values") || !axis.at("values").is_array())
                throw SimError(ErrorCode::ValidationError,
                               "sweep axis '" + a.name + "' needs a values array");
            for (const json& v : axis.at("values")) {
                if (!v.is_number())
                    throw SimError(ErrorCode::ValidationError,
                                   "sweep axis '" + a.name + "' must hold numbers");
                a.values.push_back(v.get<double>());
            }
            c.sweep.axes.push_back(std::move(a));
        }
        if (!sw.contains("metrics") || !sw.at("metrics").is_array() || sw.at("metrics").empty())
            throw SimError(ErrorCode::ValidationError,
                           "sweep.metrics must be a non-empty array");
        for (const json& m : sw.at("metrics")) {
            if (!m.is_string())
                throw SimError(ErrorCode::ValidationError, "sweep.metrics must hold strings");
            c.sweep.metrics.push_back(m.get<std::string>());
        }
        if (sw.contains("base")) {
            if (!sw.at("base").is_object())
                throw SimError(ErrorCode::ValidationError, "sweep.base must be an object");
            for (const auto& [k, v] : sw.at("base").items()) {
                if (!v.is_number())
                    throw SimError(ErrorCode::ValidationError,
                                   "sweep.base values must be numbers");
                c.sweep.base[k] = v.get<double>();
            }
        } else {
            c.sweep.base = {{"N", double(n_atoms)}, {"g", g}, {"Delta", delta_big},
                            {"Omega", c.lambda.omega}, {"delta", c.lambda.delta_raman},
                            {"kappa", c.two_level.kappa}, {"gamma", c.two_level.gamma}};
        }
        c.sweep.leak_tol = number_at(sw, "sweep", "leak_tol", 0.01);
        c.sweep.t_max = number_at(sw, "sweep", "t_max", c.t_max);
        c.sweep.grid_points = int_at(sw, "sweep", "grid_points", c.grid_points);
    } else if (root.contains("sweep")) {
        throw SimError(ErrorCode::ValidationError,
                       "'sweep' is only valid with the sweep command");
    }

    c.output_dir = string_at(root, "", "output_dir", "out");
    c.jobs = int_at(root, "", "jobs", 1);
    if (c.jobs < 1)
        throw SimError(ErrorCode::ValidationError, "jobs must be ≥ 1");

    c.canonical_json = canonicalize(c).dump();
    c.config_hash = fnv1a_hex(c.canonical_json);
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw SimError(ErrorCode::IoError, "cannot open config " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string apply_override(const std::string& json_text, const std::string& key,
                           const std::string& value) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SimError(ErrorCode::ParseError, e.what());
    }
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value;  // bare strings are taken literally
    }
    json* node = &root;
    std::string remaining = key;
    while (true) {
        const std::size_t dot = remaining.find('.');
        if (dot == std::string::npos) break;
        const std::string head = remaining.substr(0, dot);
        if (head.empty())
            throw SimError(ErrorCode::ValidationError, "bad override key '" + key + "'");
        node = &(*node)[head];
        remaining = remaining.substr(dot + 1);
    }
    if (remaining.empty())
        throw SimError(ErrorCode::ValidationError, "bad override key '" + key + "'");
    (*node)[remaining] = parsed;
    return root.dump();
}

std::string figure_preset(FigureId id) {
    json preset;
    preset["command"] = "figure";
    preset["figure"] = figure_name(id);
    preset["figure_N"] = {1, 5, 25};
    switch (id) {
        case FigureId::Fig2:
            preset["model"] = "two_level";
            preset["parameters"] = {{"g", 1.0}, {"Delta", 10.0}, {"kappa", 0.1},
                                    {"gamma", 0.01}};
            preset["t_max"] = 100.0;
            break;
        case FigureId::Fig4:
            preset["model"] = "lambda";
            preset["parameters"] = {{"g", 1.0}, {"Omega", 1.0}, {"Delta", 10.0},
                                    {"delta", 0.0}};
            preset["t_max"] = 3.0;
            break;
        case FigureId::Fig5:
            preset["model"] = "lambda";
            preset["parameters"] = {{"g", 1.0}, {"Omega", 10.0}, {"Delta", 100.0},
                                    {"delta", 0.3}};
            preset["t_max"] = 30.0;
            break;
    }
    return preset.dump();
}

} // namespace dsim::cli
