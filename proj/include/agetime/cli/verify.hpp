#pragma once

#include <set>
#include <string>
#include <vector>

#include "agetime/cli/commands.hpp"

namespace agetime::cli {

// Every operation of the library modules and of the command layer.
const std::vector<std::string>& primary_operations();

class Coverage {
public:
    void use(std::initializer_list<const char*> ops) { used_.insert(ops.begin(), ops.end()); }
    std::vector<std::string> missing() const;

private:
    std::set<std::string> used_;
};

// The invariant suite on the configured chart. Randomized parts draw from
// config.seed. Precondition failures come back as Skipped with a warning.
std::vector<CheckResult> run_verify_suite(const Scenario& scenario, Coverage& coverage,
                                          std::vector<std::string>& warnings);

}  // namespace agetime::cli
