#include "skt/form.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace skt {

int popcount(Mask m) { return std::popcount(m); }

std::vector<int> mask_indices(Mask m) {
    std::vector<int> out;
    for (int i = 0; m; ++i, m >>= 1u)
        if (m & 1u) out.push_back(i);
    return out;
}

Mask mask_of(const std::vector<int>& idx) {
    Mask m = 0;
    for (int i : idx) m |= Mask{1} << i;
    return m;
}

int wedge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    int inversions = 0;
    for (int j : mask_indices(b)) inversions += std::popcount(a >> (j + 1));
    return (inversions % 2) ? -1 : 1;
}

bool mask_lex_less(Mask a, Mask b) {
    auto x = mask_indices(a), y = mask_indices(b);
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

// ---------------------------------------------------------------- Form

Form Form::scalar(const Scalar& s) {
    Form f(0);
    f.add_term(0, s);
    return f;
}

Form Form::basis(Mask m, const Scalar& c) {
    Form f(popcount(m));
    f.add_term(m, c);
    return f;
}

Scalar Form::coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
}

void Form::add_term(Mask m, const Scalar& c) {
    if (c.is_zero()) return;
    if (popcount(m) != degree_) throw std::invalid_argument("term degree does not match form degree");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Form Form::operator-() const {
    Form r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Form& Form::operator+=(const Form& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
        *this = o;
        return *this;
    }
    if (degree_ != o.degree_) throw std::invalid_argument("adding forms of different degree");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Form& Form::operator-=(const Form& o) { return *this += -o; }

Form operator*(const Scalar& s, const Form& f) {
    Form r(f.degree_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : f.terms_) r.add_term(m, s * c);
    return r;
}

bool Form::operator==(const Form& o) const {
    if (is_zero() && o.is_zero()) return true;
    return degree_ == o.degree_ && terms_ == o.terms_;
}

Form Form::map_coeffs(const std::function<Scalar(const Scalar&)>& f) const {
    Form r(degree_);
    for (const auto& [m, c] : terms_) r.add_term(m, f(c));
    return r;
}

Mask Form::support() const {
    Mask s = 0;
    for (const auto& [m, c] : terms_) s |= m;
    return s;
}

std::string Form::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::vector<Mask> keys;
    for (const auto& [m, c] : terms_) keys.push_back(m);
    std::sort(keys.begin(), keys.end(), mask_lex_less);
    std::ostringstream os;
    bool first = true;
    for (Mask m : keys) {
        const Scalar& c = terms_.at(m);
        std::string mono;
        for (int i : mask_indices(m)) {
            if (!mono.empty()) mono += "^";
            mono += names.at(static_cast<std::size_t>(i));
        }
        std::string term;
        if (mono.empty())
            term = c.needs_parens() ? "(" + c.str() + ")" : c.str();
        else if (c.is_one())
            term = mono;
        else if ((-c).is_one())
            term = "-" + mono;
        else
            term = (c.needs_parens() ? "(" + c.str() + ")" : c.str()) + "*" + mono;
        if (first)
            os << term;
        else if (term[0] == '-')
            os << " - " << term.substr(1);
        else
            os << " + " << term;
        first = false;
    }
    return os.str();
}

Form wedge(const Form& a, const Form& b) {
    Form r(a.degree() + b.degree());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            int s = wedge_sign(ma, mb);
            if (s == 0) continue;
            Scalar c = ca * cb;
            r.add_term(ma | mb, s > 0 ? c : -c);
        }
    return r;
}

Form wedge_all(const std::vector<Form>& fs) {
    Form r = Form::scalar(Scalar(1));
    for (const auto& f : fs) r = wedge(r, f);
    return r;
}

Form substitute_covectors(const Form& f, const std::vector<Form>& images) {
    Form r(f.degree());
    for (const auto& [m, c] : f.terms()) {
        Form t = Form::scalar(c);
        for (int i : mask_indices(m)) {
            t = wedge(t, images.at(static_cast<std::size_t>(i)));
            if (t.is_zero()) break;
        }
        r += t;
    }
    return r;
}

// ---------------------------------------------------------------- vectors

VectorField VectorField::basis(int dim, int i) {
    VectorField v(dim);
    v.c.at(static_cast<std::size_t>(i)) = Scalar(1);
    return v;
}

bool VectorField::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.is_zero(); });
}

VectorField& VectorField::operator+=(const VectorField& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c.at(i);
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c.at(i);
    return *this;
}

VectorField operator*(const Scalar& s, VectorField v) {
    for (auto& x : v.c) x *= s;
    return v;
}

std::string VectorField::str(const std::vector<std::string>& names) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        std::string name = "d/d" + names.at(i);
        std::string term;
        if (c[i].is_one())
            term = name;
        else if ((-c[i]).is_one())
            term = "-" + name;
        else
            term = (c[i].needs_parens() ? "(" + c[i].str() + ")" : c[i].str()) + "*" + name;
        if (first)
            os << term;
        else if (term[0] == '-')
            os << " - " << term.substr(1);
        else
            os << " + " << term;
        first = false;
    }
    return first ? "0" : os.str();
}

Scalar pair(const Form& alpha, const VectorField& X) {
    if (alpha.is_zero()) return Scalar();
    if (alpha.degree() != 1) throw std::invalid_argument("pairing needs a 1-form");
    Scalar s;
    for (const auto& [m, c] : alpha.terms()) s += c * X.c.at(static_cast<std::size_t>(mask_indices(m)[0]));
    return s;
}

Form contract(const VectorField& X, const Form& a) {
    if (a.degree() == 0) return Form(0);
    Form r(a.degree() - 1);
    for (const auto& [m, c] : a.terms()) {
        int pos = 0;
        for (int i : mask_indices(m)) {
            const Scalar& xi = X.c.at(static_cast<std::size_t>(i));
            if (!xi.is_zero()) r.add_term(m & ~(Mask{1} << i), (pos % 2 ? -c : c) * xi);
            ++pos;
        }
    }
    return r;
}

Scalar evaluate(const Form& a, const std::vector<VectorField>& xs) {
    if (static_cast<int>(xs.size()) != a.degree() && !a.is_zero())
        throw std::invalid_argument("wrong number of arguments for form evaluation");
    Form r = a;
    for (const auto& X : xs) r = contract(X, r);
    return r.coeff(0);
}

// ---------------------------------------------------------------- Matrix

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

Matrix Matrix::diag(const std::vector<Scalar>& d) {
    int n = static_cast<int>(d.size());
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

Matrix Matrix::operator-() const {
    Matrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_.at(i);
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch");
    Matrix r(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
        for (int k = 0; k < a.c_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.c_; ++j)
                if (!b(k, j).is_zero()) r(i, j) += x * b(k, j);
        }
    return r;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
    Matrix r = a;
    for (auto& x : r.a_) x *= s;
    return r;
}

VectorField operator*(const Matrix& a, const VectorField& v) {
    VectorField r(a.r_);
    for (int i = 0; i < a.r_; ++i)
        for (int k = 0; k < a.c_; ++k)
            if (!a(i, k).is_zero()) r.c[static_cast<std::size_t>(i)] += a(i, k) * v.c.at(static_cast<std::size_t>(k));
    return r;
}

bool Matrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Scalar& s) { return s.is_zero(); });
}

Matrix Matrix::transpose() const {
    Matrix r(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

std::vector<int> rref(Matrix& m, std::vector<Scalar>* pivots_seen) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!m(i, col).is_zero()) {
                // prefer constant pivots so parameter loci stay minimal
                if (p < 0 || (m(i, col).is_constant() && !m(p, col).is_constant())) p = i;
            }
        if (p < 0) continue;
        for (int j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(p, j));
        Scalar inv = m(row, col).inverse();
        if (pivots_seen && !m(row, col).is_constant()) pivots_seen->push_back(m(row, col));
        for (int j = 0; j < m.cols(); ++j) m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) continue;
            Scalar f = m(i, col);
            for (int j = 0; j < m.cols(); ++j)
                if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

Matrix Matrix::inverse() const {
    if (r_ != c_) throw std::domain_error("inverse of non-square matrix");
    Matrix aug(r_, 2 * c_);
    for (int i = 0; i < r_; ++i) {
        for (int j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
        aug(i, c_ + i) = Scalar(1);
    }
    auto piv = rref(aug);
    if (static_cast<int>(piv.size()) < r_ || piv.back() >= c_) throw std::domain_error("singular matrix");
    Matrix r(r_, c_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) r(i, j) = aug(i, c_ + j);
    return r;
}

int Matrix::rank() const {
    Matrix m = *this;
    return static_cast<int>(rref(m).size());
}

std::vector<std::vector<Scalar>> Matrix::nullspace() const {
    Matrix m = *this;
    auto piv = rref(m);
    std::vector<bool> is_pivot(static_cast<std::size_t>(c_), false);
    for (int p : piv) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int f = 0; f < c_; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<Scalar> v(static_cast<std::size_t>(c_));
        v[static_cast<std::size_t>(f)] = Scalar(1);
        for (std::size_t k = 0; k < piv.size(); ++k)
            v[static_cast<std::size_t>(piv[k])] = -m(static_cast<int>(k), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::string Matrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < r_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------- Endo

Form Endo::image_of_covector(int j) const {
    Form f(1);
    for (int k = 0; k < m_.cols(); ++k) f.add_term(Mask{1} << k, m_(j, k));
    return f;
}

Form Endo::apply(const Form& a) const {
    std::vector<Form> images;
    images.reserve(static_cast<std::size_t>(dim()));
    for (int j = 0; j < dim(); ++j) images.push_back(image_of_covector(j));
    return substitute_covectors(a, images);
}

Form apply_endo(const Endo& T, const Form& a) { return T.apply(a); }

Endo outer(const Form& alpha, const VectorField& X) {
    int n = X.dim();
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = X.c[static_cast<std::size_t>(i)] * alpha.coeff(Mask{1} << j);
    return Endo(m);
}

Form compose(const Form& alpha, const Endo& T) { return T.apply(alpha); }

}  // namespace skt
