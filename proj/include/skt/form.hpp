// Graded exterior forms over a fixed coframe with Scalar coefficients.
#pragma once

#include "skt/scalar.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace skt {

// A strictly increasing multi-index, stored as a bit set over coframe slots.
using Mask = std::uint32_t;

inline constexpr int kMaxDim = 24;

int popcount(Mask m);
std::vector<int> mask_indices(Mask m);
Mask mask_of(const std::vector<int>& idx);
// Sign of the shuffle that sorts the concatenation (a, b); 0 if they overlap.
int wedge_sign(Mask a, Mask b);
bool mask_lex_less(Mask a, Mask b);

class Form {
public:
    Form() = default;
    explicit Form(int degree) : degree_(degree) {}
    static Form scalar(const Scalar& s);
    static Form basis(Mask m, const Scalar& c = Scalar(1));
    static Form covector(int index, const Scalar& c = Scalar(1)) { return basis(Mask{1} << index, c); }

    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Mask, Scalar>& terms() const { return terms_; }
    Scalar coeff(Mask m) const;
    void add_term(Mask m, const Scalar& c);

    Form operator-() const;
    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(const Scalar& s, const Form& f);
    friend Form operator*(const Form& f, const Scalar& s) { return s * f; }

    bool operator==(const Form& o) const;
    bool operator!=(const Form& o) const { return !(*this == o); }

    Form map_coeffs(const std::function<Scalar(const Scalar&)>& f) const;
    // Mask of all coframe slots that appear in some term.
    Mask support() const;

    std::string str(const std::vector<std::string>& names) const;

private:
    int degree_ = 0;
    std::map<Mask, Scalar> terms_;
};

Form wedge(const Form& a, const Form& b);
Form wedge_all(const std::vector<Form>& fs);

// Linear substitution of covectors: slot i is replaced by images[i] (1-forms).
Form substitute_covectors(const Form& f, const std::vector<Form>& images);

// Components of a vector field: value of coframe covector i on the field.
struct VectorField {
    std::vector<Scalar> c;

    VectorField() = default;
    explicit VectorField(int dim) : c(static_cast<std::size_t>(dim)) {}
    static VectorField basis(int dim, int i);
    int dim() const { return static_cast<int>(c.size()); }
    bool is_zero() const;
    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(const Scalar& s, VectorField v);
    bool operator==(const VectorField& o) const { return c == o.c; }
    std::string str(const std::vector<std::string>& names) const;
};

// Value of a 1-form on a vector field.
Scalar pair(const Form& alpha, const VectorField& X);
Form contract(const VectorField& X, const Form& a);
// a(X1, ..., Xk) with the determinant convention.
Scalar evaluate(const Form& a, const std::vector<VectorField>& xs);

// Dense matrix of Scalars.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows * cols)) {}
    static Matrix identity(int n);
    static Matrix diag(const std::vector<Scalar>& d);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Scalar& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * c_ + j)]; }
    const Scalar& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * c_ + j)]; }

    Matrix operator-() const;
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Scalar& s, const Matrix& a);
    friend VectorField operator*(const Matrix& a, const VectorField& v);
    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    bool is_zero() const;
    Matrix transpose() const;
    // Throws std::domain_error when singular.
    Matrix inverse() const;
    int rank() const;
    // Basis of {x : A x = 0}, one vector per free column in reduced echelon form.
    std::vector<std::vector<Scalar>> nullspace() const;
    std::string str() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Scalar> a_;
};

// Row-reduced echelon form; returns pivot columns. Pivot values encountered
// before scaling are appended to pivots_seen when non-null.
std::vector<int> rref(Matrix& m, std::vector<Scalar>* pivots_seen = nullptr);

// Endomorphism stored by its covector action: covector e^j maps to
// sum_k m(j,k) e^k. The vector action uses the same matrix on components:
// (T X)^j = sum_k m(j,k) X^k, so that (T* alpha)(X) = alpha(T X).
class Endo {
public:
    Endo() = default;
    explicit Endo(Matrix m) : m_(std::move(m)) {}
    static Endo identity(int n) { return Endo(Matrix::identity(n)); }
    static Endo zero(int n) { return Endo(Matrix(n, n)); }

    int dim() const { return m_.rows(); }
    const Matrix& matrix() const { return m_; }
    Form image_of_covector(int j) const;
    VectorField apply(const VectorField& X) const { return m_ * X; }
    Form apply(const Form& a) const;

    friend Endo operator*(const Endo& a, const Endo& b) { return Endo(a.m_ * b.m_); }
    friend Endo operator+(const Endo& a, const Endo& b) { return Endo(a.m_ + b.m_); }
    friend Endo operator-(const Endo& a, const Endo& b) { return Endo(a.m_ - b.m_); }
    Endo operator-() const { return Endo(-m_); }
    bool operator==(const Endo& o) const { return m_ == o.m_; }

private:
    Matrix m_;
};

Form apply_endo(const Endo& T, const Form& a);
// (alpha tensor X) as an endomorphism: Y -> alpha(Y) X.
Endo outer(const Form& alpha, const VectorField& X);
// Covector obtained by composing a 1-form with T: alpha o T.
Form compose(const Form& alpha, const Endo& T);

}  // namespace skt
