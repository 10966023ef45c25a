#pragma once

#include "gelfond/verdict.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gelfond {

enum ExitCode : int {
    kExitOk = 0,
    kExitFails = 1,
    kExitUsage = 2,
    kExitNotFound = 3,
    kExitRejected = 4,
    kExitUndecided = 5,
};

struct RunConfig {
    std::string subcommand;
    std::vector<std::string> inputs;
    Precision prec = Precision::defaults();
    std::uint64_t seed = 1;
    unsigned trials = 100;
    std::string out;  // empty: stdout
    bool summary = false;
    unsigned workers = 0;  // 0: hardware concurrency
    int verbosity = 0;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

struct TrialReport {
    std::size_t trial = 0;
    Outcome outcome = Outcome::Undecided;
    nlohmann::json line;  // one JSON-lines record
};

// The instance is a function of (suite, seed, trial) only.
TrialReport run_suite_trial(const std::string& suite, std::uint64_t seed, std::size_t trial, const Precision& prec);

struct CampaignSummary {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t trials = 0, holds = 0, fails = 0, undecided = 0;
    nlohmann::json to_json() const;
    int exit_code() const;
};

// Trials run on cfg.workers threads; sink receives the reports in trial order.
CampaignSummary run_campaign(const std::string& suite, const RunConfig& cfg,
                             const std::function<void(const TrialReport&)>& sink);

int cli_main(int argc, char** argv);

}  // namespace gelfond
