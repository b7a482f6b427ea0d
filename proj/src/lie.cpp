#include "skt/lie.hpp"

#include <algorithm>
#include <sstream>

namespace skt {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

void require_constant(const Frame& frame) {
    if (!frame.constant_coefficients()) throw ModelError("structure coefficients are not constant");
}

std::vector<Mask> masks_of_degree(int n, int k) {
    std::vector<Mask> out;
    if (k < 0 || k > n) return out;
    for (Mask m = 0; m < (Mask{1} << n); ++m)
        if (popcount(m) == k) out.push_back(m);
    std::sort(out.begin(), out.end(), mask_lex_less);
    return out;
}

// Column j holds the coordinates of d(basis_k[j]) in basis_{k+1}.
Matrix differential_matrix(const Frame& frame, int k) {
    auto src = masks_of_degree(frame.dim(), k), dst = masks_of_degree(frame.dim(), k + 1);
    Matrix D(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (std::size_t j = 0; j < src.size(); ++j) {
        Form df = frame.d(Form::basis(src[j]));
        for (std::size_t i = 0; i < dst.size(); ++i) D(static_cast<int>(i), static_cast<int>(j)) = df.coeff(dst[i]);
    }
    return D;
}

void note_pivots(const std::vector<Scalar>& piv, std::vector<Scalar>& out) {
    for (const auto& p : piv)
        if (!p.is_constant() && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
}

// Rows spanning the same space, in reduced echelon form, zero rows dropped.
Matrix row_basis(Matrix m, std::vector<Scalar>* piv) {
    auto p = rref(m, piv);
    Matrix r(static_cast<int>(p.size()), m.cols());
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

}  // namespace

CohomologyBasis cohomology(const Frame& frame, int k) {
    require_constant(frame);
    CohomologyBasis out;
    out.degree = k;
    int n = frame.dim();
    auto basis = masks_of_degree(n, k);
    int N = static_cast<int>(basis.size());
    if (N == 0) return out;
    std::vector<Scalar> piv;

    Matrix Dk = differential_matrix(frame, k);
    std::vector<std::vector<Scalar>> closed;
    if (Dk.rows() == 0) {
        for (int j = 0; j < N; ++j) {
            std::vector<Scalar> v(u(N));
            v[u(j)] = Scalar(1);
            closed.push_back(v);
        }
    } else {
        Matrix tmp = Dk;
        rref(tmp, &piv);
        closed = Dk.nullspace();
    }

    Matrix exact(0, N);
    if (k > 0) {
        Matrix Dprev = differential_matrix(frame, k - 1);
        exact = row_basis(Dprev.transpose(), &piv);
    }
    std::vector<int> exact_piv;
    for (int i = 0; i < exact.rows(); ++i)
        for (int j = 0; j < N; ++j)
            if (!exact(i, j).is_zero()) {
                exact_piv.push_back(j);
                break;
            }

    Matrix reduced(static_cast<int>(closed.size()), N);
    for (std::size_t r = 0; r < closed.size(); ++r) {
        std::vector<Scalar> z = closed[r];
        for (int i = 0; i < exact.rows(); ++i) {
            Scalar f = z[u(exact_piv[u(i)])];
            if (f.is_zero()) continue;
            for (int j = 0; j < N; ++j) z[u(j)] -= f * exact(i, j);
        }
        for (int j = 0; j < N; ++j) reduced(static_cast<int>(r), j) = z[u(j)];
    }
    Matrix reps = row_basis(reduced, &piv);
    out.betti = reps.rows();
    for (int i = 0; i < reps.rows(); ++i) {
        Form f(k);
        for (int j = 0; j < N; ++j) f.add_term(basis[u(j)], reps(i, j));
        out.representatives.push_back(f);
    }
    note_pivots(piv, out.nongeneric);
    return out;
}

std::vector<int> betti_numbers(const Frame& frame) {
    std::vector<int> b;
    for (int k = 0; k <= frame.dim(); ++k) b.push_back(cohomology(frame, k).betti);
    return b;
}

namespace {

using Bracket = std::vector<std::vector<VectorField>>;

VectorField bracket_of(const Bracket& c, const VectorField& x, const VectorField& y) {
    int n = x.dim();
    VectorField r(n);
    for (int i = 0; i < n; ++i) {
        if (x.c[u(i)].is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (y.c[u(j)].is_zero() || i == j) continue;
            r += (x.c[u(i)] * y.c[u(j)]) * c[u(i)][u(j)];
        }
    }
    return r;
}

std::vector<VectorField> span_basis(const std::vector<VectorField>& vs, int n) {
    Matrix m(static_cast<int>(vs.size()), n);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (int j = 0; j < n; ++j) m(static_cast<int>(i), j) = vs[i].c[u(j)];
    Matrix b = row_basis(m, nullptr);
    std::vector<VectorField> out;
    for (int i = 0; i < b.rows(); ++i) {
        VectorField v(n);
        for (int j = 0; j < n; ++j) v.c[u(j)] = b(i, j);
        out.push_back(v);
    }
    return out;
}

std::vector<VectorField> bracket_span(const Bracket& c, const std::vector<VectorField>& A,
                                      const std::vector<VectorField>& B, int n) {
    std::vector<VectorField> vs;
    for (const auto& a : A)
        for (const auto& b : B) {
            VectorField v = bracket_of(c, a, b);
            if (!v.is_zero()) vs.push_back(v);
        }
    return span_basis(vs, n);
}

std::string span_str(const Frame& frame, const std::vector<VectorField>& vs) {
    std::ostringstream os;
    os << "span{";
    for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? ", " : "") << frame.str(vs[i]);
    os << "}";
    return os.str();
}

}  // namespace

AlgebraProps algebra_props(const Frame& frame) {
    require_constant(frame);
    AlgebraProps p;
    int n = frame.dim();
    Bracket c(u(n), std::vector<VectorField>(u(n), VectorField(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) c[u(i)][u(j)] = frame_bracket(frame, i, j);

    p.unimodular = true;
    for (int i = 0; i < n; ++i) {
        Scalar tr(0);
        for (int j = 0; j < n; ++j) tr += c[u(i)][u(j)].c[u(j)];
        p.ad_traces.push_back(tr);
        if (!tr.is_zero()) p.unimodular = false;
    }

    std::vector<VectorField> g;
    for (int i = 0; i < n; ++i) g.push_back(VectorField::basis(n, i));

    std::vector<VectorField> D = g;
    p.derived_dims.push_back(n);
    for (int step = 0; step <= n; ++step) {
        auto next = bracket_span(c, D, D, n);
        if (step == 0) p.derived = next;
        if (static_cast<int>(next.size()) == static_cast<int>(D.size())) break;
        D = next;
        p.derived_dims.push_back(static_cast<int>(D.size()));
        if (D.empty()) break;
    }
    p.solvable = p.derived_dims.back() == 0;
    p.solvable_step = p.solvable ? static_cast<int>(p.derived_dims.size()) - 1 : 0;
    p.derived_abelian = bracket_span(c, p.derived, p.derived, n).empty();

    std::vector<VectorField> C = g;
    p.lower_central_dims.push_back(n);
    for (int step = 0; step <= n; ++step) {
        auto next = bracket_span(c, g, C, n);
        if (next.size() == C.size()) break;
        C = next;
        p.lower_central_dims.push_back(static_cast<int>(C.size()));
        if (C.empty()) break;
    }
    p.nilpotent = p.lower_central_dims.back() == 0;
    p.nilpotent_step = p.nilpotent ? static_cast<int>(p.lower_central_dims.size()) - 1 : 0;

    // Center: x with [x, e_j] = 0 for all j.
    Matrix Z(n * n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) Z(j * n + k, i) = c[u(i)][u(j)].c[u(k)];
    for (const auto& v : Z.nullspace()) {
        VectorField x(n);
        x.c = v;
        p.center.push_back(x);
    }

    Report& r = p.report;
    std::ostringstream tr;
    for (int i = 0; i < n; ++i) tr << (i ? ", " : "") << "tr ad_" << frame.names()[u(i)] << " = " << p.ad_traces[u(i)].str();
    r.add_flag("lie.unimodular", p.unimodular, tr.str()).informational = true;
    auto dims = [](const std::vector<int>& v) {
        std::ostringstream os;
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " > " : "") << v[i];
        return os.str();
    };
    Check& s = r.add_flag("lie.solvable", p.solvable, "derived series " + dims(p.derived_dims));
    s.informational = true;
    s.notes.push_back("derived series dimensions " + dims(p.derived_dims));
    if (p.solvable) s.notes.push_back(std::to_string(p.solvable_step) + "-step solvable");
    Check& nl = r.add_flag("lie.nilpotent", p.nilpotent, "lower central series " + dims(p.lower_central_dims));
    nl.informational = true;
    nl.notes.push_back("lower central series dimensions " + dims(p.lower_central_dims));
    if (p.nilpotent) nl.notes.push_back(std::to_string(p.nilpotent_step) + "-step nilpotent");
    Check& da = r.add_flag("lie.derived_abelian", p.derived_abelian);
    da.informational = true;
    da.notes.push_back("[g,g] = " + span_str(frame, p.derived));
    Check& ce = r.add_flag("lie.center_trivial", p.center.empty(), "center = " + span_str(frame, p.center));
    ce.informational = true;
    return p;
}

}  // namespace skt
