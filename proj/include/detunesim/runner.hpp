// runner.hpp — command dispatch: simulations, sweeps, figure bundles,
// threshold tables, validation; CSV/SVG/manifest output with provenance.

#pragma once

#include "detunesim/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace dsim::cli {

struct RunOutcome {
    std::vector<std::filesystem::path> files;
    std::string summary;  // human-readable result lines
    bool ok = true;
};

// Executes the configured command. Writes outputs plus run_manifest.txt
// into config.output_dir. Throws SimError on any module failure; no
// partially written CSV survives an error.
RunOutcome run(const RunConfig& config);

} // namespace dsim::cli
