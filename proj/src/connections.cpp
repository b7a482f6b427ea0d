#include "skt/connections.hpp"

#include <sstream>

namespace skt {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

Scalar triple(const Form& T, int n, int i, int j, int k) {
    return evaluate(T, {VectorField::basis(n, i), VectorField::basis(n, j), VectorField::basis(n, k)});
}

// Degree-0 derivation of the exterior algebra extended from covector images.
Form derivation(const Form& a, const std::vector<Form>& images) {
    Form r(a.degree());
    for (const auto& [m, c] : a.terms()) {
        auto idx = mask_indices(m);
        for (std::size_t l = 0; l < idx.size(); ++l) {
            Form p = Form::scalar(c);
            for (std::size_t q = 0; q < idx.size(); ++q) p = wedge(p, q == l ? images[u(idx[q])] : Form::covector(idx[q]));
            r += p;
        }
    }
    return r;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

bool is_skew(const Matrix& m) { return (m + m.transpose()).is_zero(); }

}  // namespace

Form ConnectionForms::form(int k, int j) const {
    Form w(1);
    for (int i = 0; i < dim(); ++i) w.add_term(Mask{1} << i, Gamma[u(i)](k, j));
    return w;
}

Matrix CurvatureForms::endo(int a, int b) const {
    int n = static_cast<int>(R.size());
    Matrix m(n, n);
    VectorField X = VectorField::basis(n, a), Y = VectorField::basis(n, b);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) m(k, j) = evaluate(at(k, j), {X, Y});
    return m;
}

std::vector<std::vector<VectorField>> structure_constants(const Frame& frame) {
    int n = frame.dim();
    std::vector<std::vector<VectorField>> c(u(n), std::vector<VectorField>(u(n), VectorField(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) c[u(i)][u(j)] = frame_bracket(frame, i, j);
    return c;
}

ConnectionForms levi_civita(const Frame& frame, const Matrix& metric) {
    int n = frame.dim();
    if (metric != Matrix::identity(n)) throw ModelError("connections need an orthonormal coframe");
    if (!frame.constant_coefficients()) throw ModelError("connections need constant structure coefficients");
    auto c = structure_constants(frame);
    ConnectionForms lc;
    lc.Gamma.assign(u(n), Matrix(n, n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                lc.Gamma[u(i)](k, j) =
                    (c[u(i)][u(j)].c[u(k)] - c[u(j)][u(k)].c[u(i)] + c[u(k)][u(i)].c[u(j)]) / Scalar(2);
    return lc;
}

ConnectionForms add_skew_torsion(const ConnectionForms& lc, const Form& T, const Scalar& s) {
    ConnectionForms r = lc;
    int n = lc.dim();
    Scalar half = s / Scalar(2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) r.Gamma[u(i)](k, j) += half * triple(T, n, i, j, k);
    return r;
}

Form torsion_form(const ConnectionForms& c, const Frame& frame, Report* report) {
    int n = frame.dim();
    auto sc = structure_constants(frame);
    auto tor = [&](int i, int j, int k) {
        return c.Gamma[u(i)](k, j) - c.Gamma[u(j)](k, i) - sc[u(i)][u(j)].c[u(k)];
    };
    Form T(3);
    bool skew = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Scalar v = tor(i, j, k);
                if (i < j && j < k) T.add_term(mask_of({i, j, k}), v);
                if (v != -tor(i, k, j)) skew = false;
            }
    if (report) report->add_flag("torsion.totally_skew", skew, "torsion is not totally skew-symmetric");
    return T;
}

std::vector<Form> structure_residual(const ConnectionForms& c, const Frame& frame) {
    std::vector<Form> res;
    for (int k = 0; k < frame.dim(); ++k) {
        Form r = frame.d_of(k);
        for (int j = 0; j < frame.dim(); ++j) r += wedge(c.form(k, j), Form::covector(j));
        res.push_back(r);
    }
    return res;
}

namespace {

void metric_checks(Report& r, const ConnectionForms& c, const std::string& prefix) {
    std::ostringstream obs;
    bool ok = true;
    for (int i = 0; i < c.dim(); ++i)
        if (!is_skew(c.Gamma[u(i)])) {
            ok = false;
            obs << "direction " << i + 1 << " not skew; ";
        }
    r.add_flag(prefix + "metric", ok, obs.str());
}

bool commutes_with(const ConnectionForms& c, const Matrix& A, std::string* obs) {
    bool ok = true;
    for (int i = 0; i < c.dim(); ++i) {
        Matrix m = commutator(c.Gamma[u(i)], A);
        if (!m.is_zero()) {
            ok = false;
            if (obs) *obs += "direction " + std::to_string(i + 1) + ": " + m.str() + "; ";
        }
    }
    return ok;
}

}  // namespace

BismutResult bismut(const Hermitian& her, const Frame& frame) {
    BismutResult out;
    Report pre = check_skt(her, frame);
    if (!pre.holds("hermitian.metric_compatible")) throw ModelError("not a Hermitian structure");
    if (!pre.holds("integrable")) throw ModelError("J is not integrable");
    ConnectionForms lc = levi_civita(frame, her.h);
    Form JdF = torsion_form(her, frame);
    // The sign relating the torsion to J dF depends on the form action of J;
    // keep the one for which J is parallel.
    for (int s : {1, -1}) {
        ConnectionForms b = add_skew_torsion(lc, JdF, Scalar(s));
        if (commutes_with(b, her.J.matrix(), nullptr)) {
            out.conn = b;
            out.sign = s;
            break;
        }
    }
    Report& r = out.report;
    if (out.sign == 0) {
        out.conn = add_skew_torsion(lc, JdF, Scalar(1));
        out.sign = 1;
    }
    std::string obs;
    r.add_flag("bismut.J_parallel", commutes_with(out.conn, her.J.matrix(), &obs), obs);
    metric_checks(r, out.conn, "bismut.");
    out.torsion = torsion_form(out.conn, frame, &r);
    Check& t = r.add_equal("bismut.torsion_matches", frame, out.torsion, Scalar(out.sign) * JdF);
    t.notes.push_back(std::string("sign convention: torsion = ") + (out.sign > 0 ? "+" : "-") +
                      "J dF with (J a)(X, ...) = a(J X, ...)");
    return out;
}

ContactConnectionResult contact_connection(const AlmostContactMetric& acm, const Frame& frame) {
    ContactConnectionResult out;
    Report& r = out.report;
    ContactClass cc = classify_contact(acm, frame);
    r.add_flag("contact.quasi_sasakian", cc.quasi_sasakian(), "base is not quasi-Sasakian");
    ConnectionForms lc = levi_civita(frame, acm.g);
    Form T = wedge(frame.d(acm.eta), acm.eta);
    out.conn = add_skew_torsion(lc, T, Scalar(1));
    std::string obs;
    r.add_flag("contact.I_parallel", commutes_with(out.conn, acm.I.matrix(), &obs), obs);
    metric_checks(r, out.conn, "contact.");
    std::ostringstream eo;
    bool eta_par = true;
    for (int i = 0; i < frame.dim(); ++i) {
        Form d = covariant_derivative(out.conn, frame, i, acm.eta);
        if (!d.is_zero()) {
            eta_par = false;
            eo << "nabla_" << frame.names()[u(i)] << " eta = " << frame.str(d) << "; ";
        }
    }
    r.add_flag("contact.eta_parallel", eta_par, eo.str());
    out.torsion = torsion_form(out.conn, frame, &r);
    r.add_equal("contact.torsion_matches", frame, out.torsion, T);
    return out;
}

CurvatureForms curvature(const ConnectionForms& c, const Frame& frame) {
    int n = c.dim();
    CurvatureForms cf;
    cf.R.assign(u(n), std::vector<Form>(u(n), Form(2)));
    std::vector<std::vector<Form>> w(u(n), std::vector<Form>(u(n)));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) w[u(k)][u(j)] = c.form(k, j);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            Form f = frame.d(w[u(k)][u(j)]);
            for (int m = 0; m < n; ++m) f += wedge(w[u(k)][u(m)], w[u(m)][u(j)]);
            cf.R[u(k)][u(j)] = f;
        }
    return cf;
}

Matrix curvature_bruteforce(const ConnectionForms& c, const Frame& frame, int a, int b) {
    int n = c.dim();
    Matrix m = commutator(c.Gamma[u(a)], c.Gamma[u(b)]);
    VectorField br = frame_bracket(frame, a, b);
    for (int k = 0; k < n; ++k)
        if (!br.c[u(k)].is_zero()) m = m - br.c[u(k)] * c.Gamma[u(k)];
    return m;
}

Form covariant_derivative(const ConnectionForms& c, const Frame& frame, int i, const Form& a) {
    int n = c.dim();
    std::vector<Form> images;
    for (int k = 0; k < n; ++k) {
        Form img(1);
        for (int j = 0; j < n; ++j) img.add_term(Mask{1} << j, -c.Gamma[u(i)](k, j));
        images.push_back(img);
    }
    VectorField X = VectorField::basis(n, i);
    Form r = a.map_coeffs([&](const Scalar& s) { return directional(frame, X, s); });
    return r + derivation(a, images);
}

Matrix covariant_derivative(const ConnectionForms& c, int i, const Endo& T) {
    return commutator(c.Gamma[u(i)], T.matrix());
}

Check parallel_check(const ConnectionForms& c, const Frame& frame, const std::string& name, const Form& a) {
    Check ch;
    ch.name = name;
    std::ostringstream obs;
    for (int i = 0; i < c.dim(); ++i) {
        Form d = covariant_derivative(c, frame, i, a);
        if (!d.is_zero()) {
            ch.holds = false;
            obs << "nabla_" << frame.names()[u(i)] << " = " << frame.str(d) << "; ";
        }
    }
    if (!ch.holds) ch.obstruction = obs.str();
    return ch;
}

Check parallel_check(const ConnectionForms& c, const Frame& frame, const std::string& name, const Endo& T) {
    Check ch;
    ch.name = name;
    std::ostringstream obs;
    for (int i = 0; i < c.dim(); ++i) {
        Matrix d = covariant_derivative(c, i, T);
        if (!d.is_zero()) {
            ch.holds = false;
            obs << "nabla_" << frame.names()[u(i)] << " = " << d.str() << "; ";
        }
    }
    if (!ch.holds) ch.obstruction = obs.str();
    return ch;
}

CurvatureSpan curvature_span(const ConnectionForms& c, const CurvatureForms& curv, const Frame& frame) {
    CurvatureSpan out;
    int n = c.dim();
    std::vector<std::vector<Matrix>> R(u(n), std::vector<Matrix>(u(n), Matrix(n, n)));
    std::vector<Matrix> all;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            R[u(a)][u(b)] = curv.endo(a, b);
            R[u(b)][u(a)] = -R[u(a)][u(b)];
            all.push_back(R[u(a)][u(b)]);
        }
    Matrix rows(static_cast<int>(all.size()), n * n);
    for (int r = 0; r < rows.rows(); ++r)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) rows(r, k * n + j) = all[u(r)](k, j);
    auto piv = rref(rows);
    out.dimension = static_cast<int>(piv.size());
    for (int r = 0; r < out.dimension; ++r) {
        Matrix m(n, n);
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) m(k, j) = rows(r, k * n + j);
        out.basis.push_back(m);
    }
    for (std::size_t p = 0; p < out.basis.size(); ++p)
        for (std::size_t q = p + 1; q < out.basis.size(); ++q)
            if (!commutator(out.basis[p], out.basis[q]).is_zero()) out.commuting = false;
    for (int i = 0; i < n && out.curvature_parallel; ++i)
        for (int a = 0; a < n && out.curvature_parallel; ++a)
            for (int b = a + 1; b < n; ++b) {
                Matrix d = commutator(c.Gamma[u(i)], R[u(a)][u(b)]);
                for (int m = 0; m < n; ++m) {
                    d = d - c.Gamma[u(i)](m, a) * R[u(m)][u(b)];
                    d = d - c.Gamma[u(i)](m, b) * R[u(a)][u(m)];
                }
                if (!d.is_zero()) {
                    out.curvature_parallel = false;
                    break;
                }
            }
    Report& r = out.report;
    Check& dim = r.add_flag("holonomy.span_dimension", true);
    dim.notes.push_back("dimension " + std::to_string(out.dimension));
    if (!out.curvature_parallel) dim.notes.push_back("lower bound: curvature is not parallel");
    r.add_flag("holonomy.commuting", out.commuting, "curvature endomorphisms do not commute").informational = true;
    r.add_flag("holonomy.curvature_parallel", out.curvature_parallel, "nabla R != 0").informational = true;
    (void)frame;
    return out;
}

}  // namespace skt
