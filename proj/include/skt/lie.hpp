// Chevalley-Eilenberg cohomology and Lie algebra invariants of
// constant-coefficient coframes.
#pragma once

#include "skt/report.hpp"

#include <vector>

namespace skt {

struct CohomologyBasis {
    int degree = 0;
    int betti = 0;
    std::vector<Form> representatives;
    // Pivots that are not constants: parameter values where the generic
    // ranks may drop.
    std::vector<Scalar> nongeneric;
};

// Throws ModelError for frames whose structure coefficients vary.
CohomologyBasis cohomology(const Frame& frame, int k);
std::vector<int> betti_numbers(const Frame& frame);

struct AlgebraProps {
    std::vector<Scalar> ad_traces;
    bool unimodular = false;
    std::vector<int> derived_dims;        // dimensions of g, [g,g], ...
    std::vector<int> lower_central_dims;  // dimensions of g, [g,g], [g,[g,g]], ...
    bool solvable = false, nilpotent = false;
    int solvable_step = 0, nilpotent_step = 0;  // 0 when not solvable / nilpotent
    bool derived_abelian = false;
    std::vector<VectorField> center;
    std::vector<VectorField> derived;  // basis of [g,g]
    Report report;
};

AlgebraProps algebra_props(const Frame& frame);

}  // namespace skt
