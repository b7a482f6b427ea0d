// Coframe algebras: covectors with declared differentials, bound symbols, and
// the exterior calculus operations that depend on them.
#pragma once

#include "skt/form.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace skt {

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SymbolInfo {
    int var = -1;
    std::string name;
    std::optional<Form> d;       // absent means d(symbol) = 0
    std::optional<Scalar> ddt;   // absent means d/dt(symbol) = 0
    std::vector<std::string> constraints;
    bool parameter = true;
};

class Frame {
public:
    Frame() = default;
    explicit Frame(std::vector<std::string> names);

    int dim() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> index_of(const std::string& name) const;
    int require_index(const std::string& name) const;

    void set_d(int i, Form f);
    const Form& d_of(int i) const { return d_.at(static_cast<std::size_t>(i)); }

    void declare_symbol(SymbolInfo s);
    const std::vector<SymbolInfo>& symbols() const { return symbols_; }
    const SymbolInfo* symbol(int var) const;
    const SymbolInfo* symbol(const std::string& name) const;

    std::optional<int> dt_index;
    std::optional<int> theta_index;

    // d of a Scalar: sum of partial derivatives times declared differentials.
    Form scalar_d(const Scalar& s) const;
    // t-derivative of a Scalar through declared d/dt values.
    Scalar scalar_dt(const Scalar& s) const;
    Form d(const Form& a) const;

    std::string str(const Form& f) const { return f.str(names_); }
    std::string str(const VectorField& v) const { return v.str(names_); }

    VectorField basis_vector(int i) const { return VectorField::basis(dim(), i); }
    Form covector(int i) const { return Form::covector(i); }
    Form covector(const std::string& name) const { return Form::covector(require_index(name)); }

    // New frame with one more covector whose differential is dform.
    Frame extend(const std::string& name, const Form& dform) const;
    // Embed a form of this frame into an extension (slots are preserved).
    static Form embed(const Form& f) { return f; }

    // True when every differential and symbol differential has no
    // symbol-dependent coefficients.
    bool constant_coefficients() const;

private:
    std::vector<std::string> names_;
    std::vector<Form> d_;
    std::vector<SymbolInfo> symbols_;
};

Form exterior_d(const Frame& frame, const Form& a);

// d(d e^i) for every covector and d(d s) for every symbol; nonzero entries
// are obstructions labelled by the covector or symbol name.
std::vector<std::pair<std::string, Form>> d_squared_defects(const Frame& frame);

VectorField frame_bracket(const Frame& frame, int i, int j);
VectorField bracket(const Frame& frame, const VectorField& X, const VectorField& Y);
// Directional derivative X(f).
Scalar directional(const Frame& frame, const VectorField& X, const Scalar& f);

Form lie_derivative(const Frame& frame, const VectorField& X, const Form& a);
Form partial_t(const Frame& frame, const Form& a);

// Hodge star on a coframe declared orthonormal (metric must be the identity).
// orientation lists the slots of the positively oriented volume form.
Form hodge_star(const Form& a, const Matrix& metric, const std::vector<int>& orientation);

// Pullback to the hypersurface {normal = 0}: terms containing the normal are
// dropped and the remaining slots are renumbered in order.
Form pullback_hypersurface(const Form& a, int normal);
// Frame of the hypersurface, with pulled-back differentials.
Frame hypersurface_frame(const Frame& frame, int normal);
// Inverse of the slot renumbering: push a hypersurface form back.
Form lift_from_hypersurface(const Form& a, int normal);

struct CoframeChange {
    Frame frame;                   // new coframe with induced differentials
    Matrix M;                      // new covector i = sum_j M(i,j) old covector j
    Matrix Minv;
    std::vector<Form> old_in_new;  // old covector j written in the new coframe
    std::vector<Form> new_in_old;
    Form to_new(const Form& f) const { return substitute_covectors(f, old_in_new); }
    Form to_old(const Form& f) const { return substitute_covectors(f, new_in_old); }
    VectorField vector_to_new(const VectorField& X) const { return M * X; }
    VectorField vector_to_old(const VectorField& X) const { return Minv * X; }
    Endo endo_to_new(const Endo& T) const;
    Matrix metric_to_new(const Matrix& g) const;
};

CoframeChange change_coframe(const Frame& frame, const Matrix& M, std::vector<std::string> new_names);

}  // namespace skt
