// Catalog of worked examples with their expected verdicts.
#pragma once

#include "skt/commands.hpp"

#include <string>
#include <vector>

namespace skt {

struct Expectation {
    std::string command;  // as accepted by parse_command
    std::string check;    // check name in the report
    bool holds = true;
    std::string provenance;  // PAPER, DERIVED or DISCREPANCY, with a short source note
};

struct Fixture {
    std::string name;
    std::string text;
    std::vector<Expectation> manifest;
};

const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& name);
Model load_fixture(const std::string& name);

struct ManifestResult {
    std::string fixture;
    Expectation expected;
    bool found = false;
    bool actual = false;
    bool mismatch = false;  // report raised a cross-validation mismatch
    std::string error;
    bool ok() const { return found && actual == expected.holds && !mismatch && error.empty(); }
};

std::vector<ManifestResult> run_manifest(const Fixture& f);

}  // namespace skt
