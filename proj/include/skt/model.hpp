// The .geo structure-equation language: parser, binder and canonical printer.
#pragma once

#include "skt/hkt.hpp"

#include <string>
#include <utility>
#include <vector>

namespace skt {

// Syntax and binding errors. line and column are 1-based; token is the
// offending token text (empty at end of input).
struct ParseError : ModelError {
    int line = 0, column = 0;
    std::string token;
    ParseError(int line, int column, std::string token, const std::string& message);
};

template <class T>
using Named = std::vector<std::pair<std::string, T>>;

struct StructureDecl {
    std::string kind;  // contact, hermitian, su2, su3, triple, family
    std::string name;
    // Canonical binding text: a referenced name or a printed form.
    std::vector<std::pair<std::string, std::string>> bindings;
};

struct Model {
    Frame frame;
    std::vector<std::string> assumptions;
    Named<Endo> endos;
    Named<Form> covectors;
    Named<VectorField> vectors;
    Named<Matrix> metrics;
    Named<Form> forms;
    std::vector<StructureDecl> structures;
    Named<AlmostContactMetric> contact;
    Named<Hermitian> hermitian;
    Named<SU2Structure> su2;
    Named<SU3Structure> su3;
    Named<ContactTriple> triple;
    Named<SU2Structure> family;
    std::vector<SamplePoint> samples;
    std::vector<std::string> warnings;

    std::string canonical() const;
    std::string hash() const { return content_hash(canonical()); }

    // Evaluates a form expression in the model's scope (covectors, named
    // forms, symbols). Throws ParseError with columns relative to expr.
    Form parse_form(const std::string& expr) const;

    // Name of the structure of the given kind: the requested one, or the
    // first declared when name is empty. Throws ModelError if none.
    std::string pick(const std::string& kind, const std::string& name = "") const;
};

template <class T>
const T& lookup(const Named<T>& list, const std::string& name) {
    for (const auto& [n, v] : list)
        if (n == name) return v;
    throw ModelError("unknown name '" + name + "'");
}

Model parse_model(const std::string& text);
std::string print_model(const Model& m);

// A model holding only a frame and one Hermitian structure, as produced by
// the bundle/product/cone constructions.
Model hermitian_model(const Frame& frame, const Hermitian& her, const std::string& name = "H");

}  // namespace skt
