// Seeded random models for reduced-versus-direct cross-validation.
#pragma once

#include "skt/hkt.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace skt {

struct RandomCase {
    std::string label;
    Frame frame;
    std::optional<AlmostContactMetric> acm;
    Form Omega{2};  // closed; used with acm
    std::optional<SU2Structure> su2;
    std::optional<SU3Structure> su3;  // ambient structure for a hypersurface
    int normal = -1;                  // hypersurface normal slot for su3
};

// Dimension <= 6, structure coefficients in {-2, ..., 2}, d^2 = 0 by
// construction. The same seed always yields the same cases.
std::vector<RandomCase> random_crossval_cases(std::uint64_t seed, int count);

// Runs every construction applicable to the case and merges the reports;
// mismatch is set when a reduced criterion disagrees with the direct check.
Report crossval_report(const RandomCase& c);

}  // namespace skt
