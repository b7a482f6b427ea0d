// Metric connections on orthonormal constant-coefficient coframes.
#pragma once

#include "skt/structures.hpp"

#include <vector>

namespace skt {

// Gamma[i](k, j) = e^k(nabla_{e_i} e_j).
struct ConnectionForms {
    std::vector<Matrix> Gamma;
    int dim() const { return static_cast<int>(Gamma.size()); }
    // omega^k_j = sum_i Gamma[i](k, j) e^i
    Form form(int k, int j) const;
};

struct CurvatureForms {
    std::vector<std::vector<Form>> R;  // R[k][j] = Omega^k_j
    const Form& at(int k, int j) const { return R[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]; }
    // Curvature endomorphism Omega(e_a, e_b) as a matrix on frame components.
    Matrix endo(int a, int b) const;
};

// c[i][j] = [e_i, e_j] as a vector field.
std::vector<std::vector<VectorField>> structure_constants(const Frame& frame);

// Throws ModelError unless the metric is the identity and the frame has
// constant coefficients.
ConnectionForms levi_civita(const Frame& frame, const Matrix& metric);

// Adds (s/2) T(e_i, e_j, e_k) to the Levi-Civita coefficients.
ConnectionForms add_skew_torsion(const ConnectionForms& lc, const Form& T, const Scalar& s);

// Torsion 3-form read off the connection: T(e_i,e_j,e_k) = e^k(nabla_i e_j - nabla_j e_i - [e_i,e_j]).
// The report records total skew-symmetry.
Form torsion_form(const ConnectionForms& c, const Frame& frame, Report* report = nullptr);
// de^k + omega^k_j ^ e^j for every k.
std::vector<Form> structure_residual(const ConnectionForms& c, const Frame& frame);

struct BismutResult {
    ConnectionForms conn;
    Form torsion{3};  // read from the connection
    int sign = 0;     // torsion = sign * J dF
    Report report;
};
BismutResult bismut(const Hermitian& her, const Frame& frame);

struct ContactConnectionResult {
    ConnectionForms conn;
    Form torsion{3};
    Report report;
};
ContactConnectionResult contact_connection(const AlmostContactMetric& acm, const Frame& frame);

CurvatureForms curvature(const ConnectionForms& c, const Frame& frame);
// R(e_a, e_b) = [G_a, G_b] - G_{[e_a, e_b]}, computed without curvature forms.
Matrix curvature_bruteforce(const ConnectionForms& c, const Frame& frame, int a, int b);

Form covariant_derivative(const ConnectionForms& c, const Frame& frame, int i, const Form& a);
Matrix covariant_derivative(const ConnectionForms& c, int i, const Endo& T);
// Holds iff the form is parallel; the obstruction lists the nonzero derivatives.
Check parallel_check(const ConnectionForms& c, const Frame& frame, const std::string& name, const Form& a);
Check parallel_check(const ConnectionForms& c, const Frame& frame, const std::string& name, const Endo& T);

struct CurvatureSpan {
    int dimension = 0;
    std::vector<Matrix> basis;
    bool commuting = true;
    bool curvature_parallel = true;  // when false the span is only a lower bound
    Report report;
};
CurvatureSpan curvature_span(const ConnectionForms& c, const CurvatureForms& curv, const Frame& frame);

}  // namespace skt
