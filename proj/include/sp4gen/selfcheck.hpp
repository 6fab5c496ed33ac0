#pragma once

#include "json.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sp4gen {

using json = nlohmann::json;

struct SuiteOptions {
    uint64_t seed = 0;
    int corpus_per_case = 50;
    int uder_samples = 1000;
    int lattice_instances = 1000;
    int certificate_instances = 20;
    int certificate_g_samples = 100;
};

struct SuiteResult {
    int id = 0;  // acceptance criterion number, 0 for the extra suites
    std::string name;
    bool ok = false;
    double seconds = 0;
    double budget_seconds = 0;
    std::string detail;
    json stats = json::object();

    bool within_budget() const { return budget_seconds <= 0 || seconds < budget_seconds; }
    bool passed() const { return ok && within_budget(); }
};

struct Suite {
    int id;
    std::string name;
    double budget_seconds;
    std::function<SuiteResult(const SuiteOptions&)> run;
};

// Acceptance criteria 1-8 in order.
const std::vector<Suite>& acceptance_suites();
// Invariant suites beyond the acceptance criteria.
const std::vector<Suite>& extra_suites();

// Runs a suite, timing it and turning exceptions into failures.
SuiteResult run_suite(const Suite& s, const SuiteOptions& opt);

}  // namespace sp4gen
