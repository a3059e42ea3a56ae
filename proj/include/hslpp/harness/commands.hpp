#pragma once

#include <string>

#include "hslpp/harness/config.hpp"

namespace hslpp::harness {

enum ExitCode { kSuccess = 0, kUsage = 1, kContractFailure = 2, kNumericalFailure = 3 };

struct CommandOutcome {
    bool pass = true;  // experiment contract
    json result;       // also written to <out>/<experiment>.json
    int exit_code() const { return pass ? kSuccess : kContractFailure; }
};

CommandOutcome cmd_simulate(const RunConfig& cfg);
CommandOutcome cmd_exact_law(const RunConfig& cfg);
CommandOutcome cmd_kernel_eval(const RunConfig& cfg);
CommandOutcome cmd_converge(const RunConfig& cfg);
CommandOutcome cmd_verify_lemmas(const RunConfig& cfg);
CommandOutcome cmd_distribution(const RunConfig& cfg);
// Merges every experiment JSON in the directory; throws ConfigError when there is none.
CommandOutcome cmd_report(const std::string& dir);

// Validates and dispatches on cfg.experiment.
CommandOutcome run(const RunConfig& cfg);

// run() with exceptions mapped to exit codes; messages go to stderr.
int run_and_report(const RunConfig& cfg);

}  // namespace hslpp::harness
