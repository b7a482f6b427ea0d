// Triples of almost contact metric structures and hyper-Hermitian
// structures on products and circle bundles.
#pragma once

#include "skt/constructions.hpp"

#include <array>

namespace skt {

struct ContactTriple {
    std::array<AlmostContactMetric, 3> s;  // share one metric
};

Report validate_triple(const ContactTriple& t, const Frame& frame);

struct HyperHermitian {
    Frame frame;
    std::array<Endo, 3> J;
    Matrix h;
    std::array<Form, 3> F;
};

HyperHermitian hyper_product(const ContactTriple& t, const Frame& base);
HyperHermitian hyper_bundle(const ContactTriple& t, const Frame& base, const Form& Omega);

// Quaternion relations, integrability, J_r dF_r equality and closedness.
Report check_hyper_direct(const HyperHermitian& hh);

Report check_hkt_product(const ContactTriple& t, const Frame& base, const std::vector<SamplePoint>& samples = {});
Report check_hkt_bundle(const ContactTriple& t, const Frame& base, const Form& Omega);

}  // namespace skt
