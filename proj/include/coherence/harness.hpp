#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "coherence/measures.hpp"

namespace coherence {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Command { ShScan, Axioms, Plane, Walk, Eur, Gil };

Command parse_command(const std::string& name);
const char* to_string(Command c);

struct RunConfig {
    Command command = Command::ShScan;
    std::vector<std::size_t> dims{4};
    std::size_t rank = 0;               // 0: drawn uniformly per trial
    std::string method = "mixed";       // mixed | ginibre | spectrum-haar
    std::size_t trials = 10000;
    std::size_t steps = 200;
    double strength = 0.005;
    std::uint64_t master_seed = 0;
    LogBase log_base = LogBase::Two;
    double eta = 1e-9;
    std::size_t kraus_min = 1;
    std::size_t kraus_max = 6;
    bool strict = false;
    bool reuse_channel = false;
    std::size_t channel_steps = 1;
    std::string measure = "C_r";
    double tol = 1e-10;                 // sh-scan/gil; axioms use axiom_tol
    double axiom_tol = 1e-8;
    double perturb = 1e-3;
    std::size_t samples = 512;
    std::vector<std::string> bases{"computational", "fourier"};
    std::string state = "random";       // random | maximally-mixed | path to matrix JSON
    unsigned root_order = 1;
    std::filesystem::path output = "out";
    std::size_t workers = 1;
};

// "4", "2..6", "2,3,5"
std::vector<std::size_t> parse_dims(const std::string& text);

// Validates the config (ConfigError on bad input), runs the command and
// writes its files under config.output. Returns 0, or 1 when a checked
// property was violated.
int run(const RunConfig& config, std::ostream& log);

}  // namespace coherence
