// Almost contact metric, Hermitian, SU(2) and SU(3) structures and their
// pointwise and differential conditions.
#pragma once

#include "skt/report.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace skt {

using SamplePoint = std::map<int, mpq_class>;

struct AlmostContactMetric {
    Endo I;
    VectorField xi;
    Form eta{1};
    Matrix g;
};

// Real and imaginary parts of a complex form.
struct ComplexForm {
    Form re, im;
    ComplexForm() = default;
    ComplexForm(Form r, Form i) : re(std::move(r)), im(std::move(i)) {}
};
ComplexForm wedge(const ComplexForm& a, const ComplexForm& b);

Report validate_acm(const AlmostContactMetric& acm, const Frame& frame);
// omega(X, Y) = g(X, I Y); throws ModelError when (I, g) are incompatible.
Form fundamental_form(const AlmostContactMetric& acm);
// The 2-form with coefficients g(e_i, T e_j), without validation.
Form two_form_of(const Matrix& g, const Endo& T);
// The endomorphism T with w(X, Y) = g(X, T Y).
Endo endo_of(const Matrix& g, const Form& w);
// Vector field metrically dual to a 1-form.
VectorField metric_dual(const Matrix& g, const Form& alpha);

VectorField nijenhuis(const Endo& I, const Frame& frame, const VectorField& X, const VectorField& Y);
std::map<std::pair<int, int>, VectorField> nijenhuis_table(const Endo& I, const Frame& frame);

Report check_normal(const AlmostContactMetric& acm, const Frame& frame);

struct ContactClass {
    bool normal = false;
    bool omega_closed = false;
    std::optional<Scalar> alpha;  // set when d eta = alpha * omega
    std::string label;            // quasi-Sasakian, alpha-Sasakian, Sasakian, or none
    bool quasi_sasakian() const { return normal && omega_closed; }
    Report report;
};
ContactClass classify_contact(const AlmostContactMetric& acm, const Frame& frame);

struct Hermitian {
    Endo J;
    Matrix h;
};

Report validate_hermitian(const Hermitian& her, const Frame& frame);
Form fundamental_form(const Hermitian& her);
// J dF for the structure's own F.
Form torsion_form(const Hermitian& her, const Frame& frame);
Report check_skt(const Hermitian& her, const Frame& frame);
Report check_balanced(const Form& F, const Frame& frame, int n);

struct SU2Structure {
    Form eta{1};
    Form w1{2}, w2{2}, w3{2};
    Matrix g;  // metric used to derive I; identity when not supplied
};

AlmostContactMetric su2_contact(const SU2Structure& s);
Report validate_su2(const SU2Structure& s, const Frame& frame, const std::vector<SamplePoint>& samples = {});

struct SU3Structure {
    Form F{2};
    Form psi_plus{3}, psi_minus{3};
    Matrix h;
};

Endo su3_complex_structure(const SU3Structure& s);
Hermitian su3_hermitian(const SU3Structure& s);

// Normalization data read off the flat model F = e12 + e34 + e56,
// Psi = (e1 + i e2)(e3 + i e4)(e5 + i e6) by direct expansion.
struct Su3Normalization {
    int type_sign;  // J Psi+ = type_sign * Psi-
    Scalar c;       // Psi+ ^ Psi- = c * F^3 / 3!
};
Su3Normalization flat_su3_normalization();

Report validate_su3(const SU3Structure& s, const Frame& frame);
Report check_skt_su3(const SU3Structure& s, const Frame& frame);

}  // namespace skt
