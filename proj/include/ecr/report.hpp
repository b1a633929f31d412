#pragma once

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecr::report {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SuiteConfig {
    std::vector<long> primes{2, 3, 5};
    std::vector<long> ramified{3, 5};  // odd primes dividing d_B; must be listed in primes
    std::string grid = "small";        // small | full
    std::vector<int> ops{1, 2};        // which T_i are exercised in coset / jsum-unram / ecr
    std::vector<int> kappas{10};
    std::string checks = "abcdef";  // arch letters; 'm' adds M_kappa, the residue integral and the inner product
    std::map<std::string, double> tol;  // per arch letter, overrides the defaults
    int workers = 1;
    std::uint64_t seed = 20240601;
    bool timing = false;  // wall time in the report (breaks byte-identity)

    nlohmann::json to_json() const;
};

// throws ConfigError
void validate(const SuiteConfig& c);

struct Case {
    std::string id;
    nlohmann::json inputs = nlohmann::json::object();
    std::string expected, got;
    std::string status;  // pass | fail | skipped
    std::optional<double> residual;
    std::string note;
};

struct Report {
    std::string suite;
    nlohmann::json config;
    std::vector<Case> cases;
    std::vector<nlohmann::json> flags;  // transcription flags: informational, do not fail a run
    std::optional<double> wall_seconds;

    std::size_t count(const std::string& status) const;
    bool ok() const { return count("fail") == 0; }
    nlohmann::json to_json() const;
    std::string to_text() const;
};

const std::vector<std::string>& suite_names();

// throws ConfigError for an unknown suite or an invalid config
Report run_suite(const SuiteConfig& config, const std::vector<std::string>& suites, const std::string& suite_id);

}  // namespace ecr::report
