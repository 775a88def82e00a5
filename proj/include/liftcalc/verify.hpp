#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liftcalc/lifting.hpp"
#include "liftcalc/sampling.hpp"

namespace liftcalc {

/* One row per (identity, configuration): an exact identity holds iff
 * failures == 0 and max_discrepancy == "0". */
struct VerifyRow {
    std::string identity;
    std::string config;
    int samples = 0;
    int failures = 0;
    std::string max_discrepancy = "0";
};

struct VerifyOptions {
    std::uint32_t q = 3;
    int precision = 12;
    std::optional<ExtCase> ext;   // narrow the configuration grid
    std::optional<int> level;
    int samples = 100;
    std::uint64_t seed = 1;
    int gl2_level = 2;
};

using IdentityFn = std::function<std::vector<VerifyRow>(const VerifyOptions&)>;

/* Named identity suites; keys are the CLI --identity names. */
const std::map<std::string, IdentityFn>& identity_registry();

std::vector<VerifyRow> run_identity(const std::string& name, const VerifyOptions& opt);
std::vector<VerifyRow> run_all_identities(const VerifyOptions& opt);

}  // namespace liftcalc
