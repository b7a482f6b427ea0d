// Subcommands shared by the sktgeo front end and the fixture runner.
#pragma once

#include "skt/model.hpp"

#include <string>
#include <vector>

namespace skt {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Command {
    std::string sub;  // check bundle product cone induce evolve connection cohomology props
    std::string what, check, omega, normal, type, structure;
    std::vector<std::string> parallel;
    std::vector<std::string> samples;  // NAME=RAT, combined into one sample point
    bool curvature = false, holonomy_span = false, emit_extension = false;
    int k = -1;

    // Canonical flag spelling, used as Report::command.
    std::string str() const;
};

// Parses "bundle --omega Omega --check skt" style strings (no input path).
Command parse_command(const std::string& line);

// Runs the command; the report carries the model hash and the command.
Report run_command(const Model& model, const Command& cmd);

// Model text of the total space built by a bundle, product or cone command.
std::string emit_extension(const Model& model, const Command& cmd);

// 0 all hold, 1 some check fails, 3 cross-validation mismatch.
int exit_code(const Report& r);

}  // namespace skt
