// Circle bundles, products with a line, Riemannian cones, hypersurfaces and
// SU(2) families, each with a reduced criterion on the base and a direct
// check on the constructed total space.
#pragma once

#include "skt/structures.hpp"

#include <string>

namespace skt {

VectorField pad_vector(const VectorField& X, int n);
Endo pad_endo(const Endo& T, int n);

struct Extension {
    Frame frame;     // base covectors followed by the new covector
    int slot = -1;   // index of the new covector (theta or dt)
    int t_var = -1;  // cone radial symbol, -1 otherwise
    Hermitian her;
    Form F{2};
};

// Circle bundle with d theta = Omega. Throws ModelError if Omega is not closed.
Extension extend_s1_bundle(const AlmostContactMetric& acm, const Frame& base, const Form& Omega,
                           const std::string& name = "theta");
Report check_skt_bundle(const AlmostContactMetric& acm, const Frame& base, const Form& Omega);

Extension product_with_line(const AlmostContactMetric& acm, const Frame& base, const std::string& name = "dt");
Report check_skt_product(const AlmostContactMetric& acm, const Frame& base);

Extension riemannian_cone(const AlmostContactMetric& acm, const Frame& base);
Report check_skt_cone(const AlmostContactMetric& acm, const Frame& base);

struct SU3Assembly {
    Frame frame;
    SU3Structure su3;
    int t_var = -1;
    Report report;
};

SU3Assembly su3_product_from_su2(const SU2Structure& s, const Frame& base);
SU3Assembly su3_cone_from_su2(const SU2Structure& s, const Frame& base);

struct Induced {
    Frame frame;  // hypersurface coframe
    AlmostContactMetric acm;
    Form omega{2};
    bool has_su2 = false;
    SU2Structure su2;
    Report report;
};

// normal is a covector slot k, or -(k+1) for the covector -e^k.
Induced induce_hypersurface(const Hermitian& ambient, const Frame& frame, int normal);
Induced induce_hypersurface(const SU3Structure& ambient, const Frame& frame, int normal);

// A family of SU(2) structures whose coefficients depend on symbols with
// declared t-derivatives; the base frame's d is the differential on N.
Report check_evolution(const SU2Structure& family, const Frame& base);
SU3Assembly assemble_su3_from_family(const SU2Structure& family, const Frame& base);

}  // namespace skt
