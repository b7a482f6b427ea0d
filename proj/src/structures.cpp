#include "skt/structures.hpp"

#include <sstream>

namespace skt {

ComplexForm wedge(const ComplexForm& a, const ComplexForm& b) {
    return {wedge(a.re, b.re) - wedge(a.im, b.im), wedge(a.re, b.im) + wedge(a.im, b.re)};
}

namespace {

Matrix column_outer(const VectorField& x, const Form& alpha) { return outer(alpha, x).matrix(); }

std::vector<Scalar> covector_coeffs(const Form& alpha, int n) {
    std::vector<Scalar> c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = alpha.coeff(Mask{1} << i);
    return c;
}

std::string pair_label(const Frame& frame, int i, int j) {
    return "(" + frame.names()[static_cast<std::size_t>(i)] + "," + frame.names()[static_cast<std::size_t>(j)] + ")";
}

}  // namespace

Form two_form_of(const Matrix& g, const Endo& T) {
    Matrix W = g * T.matrix();
    Form w(2);
    for (int i = 0; i < W.rows(); ++i)
        for (int j = i + 1; j < W.cols(); ++j) w.add_term((Mask{1} << i) | (Mask{1} << j), W(i, j));
    return w;
}

Endo endo_of(const Matrix& g, const Form& w) {
    int n = g.rows();
    Matrix W(n, n);
    for (const auto& [m, c] : w.terms()) {
        auto idx = mask_indices(m);
        W(idx[0], idx[1]) = c;
        W(idx[1], idx[0]) = -c;
    }
    return Endo(g.inverse() * W);
}

VectorField metric_dual(const Matrix& g, const Form& alpha) {
    int n = g.rows();
    VectorField a(n);
    a.c = covector_coeffs(alpha, n);
    return g.inverse() * a;
}

Report validate_acm(const AlmostContactMetric& acm, const Frame& frame) {
    Report r;
    int n = frame.dim();
    const Matrix& A = acm.I.matrix();
    Matrix lhs = A * A;
    Matrix rhs = -Matrix::identity(n) + column_outer(acm.xi, acm.eta);
    r.add_flag("acm.I_squared", lhs == rhs, "I^2 + Id - eta(x)xi = " + (lhs - rhs).str());
    Scalar ex = pair(acm.eta, acm.xi);
    r.add_flag("acm.eta_xi", ex.is_one(), "eta(xi) = " + ex.str());
    Matrix etaeta(n, n);
    auto ec = covector_coeffs(acm.eta, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) etaeta(i, j) = ec[static_cast<std::size_t>(i)] * ec[static_cast<std::size_t>(j)];
    Matrix defect = A.transpose() * acm.g * A - (acm.g - etaeta);
    r.add_flag("acm.metric_compatible", defect.is_zero(), "g(I.,I.) - g + eta^2 = " + defect.str());
    Matrix W = acm.g * A;
    r.add_flag("acm.omega_antisymmetric", (W + W.transpose()).is_zero(), "g(.,I.) symmetric part = " +
                                                                             (W + W.transpose()).str());
    return r;
}

Form fundamental_form(const AlmostContactMetric& acm) {
    Matrix W = acm.g * acm.I.matrix();
    if (!(W + W.transpose()).is_zero())
        throw ModelError("metric and I are incompatible: g(., I.) is not antisymmetric");
    return two_form_of(acm.g, acm.I);
}

VectorField nijenhuis(const Endo& I, const Frame& frame, const VectorField& X, const VectorField& Y) {
    VectorField IX = I.apply(X), IY = I.apply(Y);
    VectorField r = I.apply(I.apply(bracket(frame, X, Y)));
    r += bracket(frame, IX, IY);
    r -= I.apply(bracket(frame, IX, Y));
    r -= I.apply(bracket(frame, X, IY));
    return r;
}

std::map<std::pair<int, int>, VectorField> nijenhuis_table(const Endo& I, const Frame& frame) {
    std::map<std::pair<int, int>, VectorField> out;
    for (int i = 0; i < frame.dim(); ++i)
        for (int j = i + 1; j < frame.dim(); ++j)
            out[{i, j}] = nijenhuis(I, frame, frame.basis_vector(i), frame.basis_vector(j));
    return out;
}

Report check_normal(const AlmostContactMetric& acm, const Frame& frame) {
    Report r;
    Form deta = frame.d(acm.eta);
    std::ostringstream obs;
    bool ok = true;
    for (int i = 0; i < frame.dim(); ++i)
        for (int j = i + 1; j < frame.dim(); ++j) {
            VectorField X = frame.basis_vector(i), Y = frame.basis_vector(j);
            VectorField v = nijenhuis(acm.I, frame, X, Y) + evaluate(deta, {X, Y}) * acm.xi;
            if (!v.is_zero()) {
                obs << (ok ? "" : "; ") << pair_label(frame, i, j) << ": " << frame.str(v);
                ok = false;
            }
        }
    Check& c = r.add_flag("normal", ok, obs.str());
    c.notes.push_back("tensor [I,I](X,Y) + d eta(X,Y) xi with determinant-convention d eta");
    r.add_zero("normal.i_xi_deta", frame, contract(acm.xi, deta));
    r.add_equal("normal.I_deta", frame, acm.I.apply(deta), deta);
    return r;
}

ContactClass classify_contact(const AlmostContactMetric& acm, const Frame& frame) {
    ContactClass cc;
    Report nr = check_normal(acm, frame);
    cc.normal = nr.holds("normal");
    cc.report.merge(nr);
    Form omega = fundamental_form(acm);
    Form domega = frame.d(omega);
    cc.omega_closed = domega.is_zero();
    cc.report.add_zero("omega_closed", frame, domega);
    Form deta = frame.d(acm.eta);
    if (!omega.is_zero()) {
        const auto& [m, c] = *omega.terms().begin();
        Scalar a = deta.coeff(m) / c;
        if (deta == a * omega) cc.alpha = a;
    }
    Check& prop = cc.report.add_flag("deta_proportional_to_omega", cc.alpha.has_value(),
                                     frame.str(deta) + " is not a multiple of " + frame.str(omega));
    prop.informational = true;
    if (cc.alpha) prop.notes.push_back("alpha = " + cc.alpha->str());
    if (cc.quasi_sasakian()) {
        if (cc.alpha && !cc.alpha->is_zero())
            cc.label = *cc.alpha == Scalar(-2) ? "Sasakian" : "alpha-Sasakian";
        else
            cc.label = "quasi-Sasakian";
    } else {
        cc.label = "none";
    }
    Check& q = cc.report.add_flag("quasi_sasakian", cc.quasi_sasakian());
    q.notes.push_back("label: " + cc.label + (cc.alpha ? " (alpha = " + cc.alpha->str() + ")" : ""));
    return cc;
}

Report validate_hermitian(const Hermitian& her, const Frame& frame) {
    Report r;
    int n = frame.dim();
    const Matrix& A = her.J.matrix();
    r.add_flag("hermitian.J_squared", A * A == -Matrix::identity(n), "J^2 + Id = " + (A * A + Matrix::identity(n)).str());
    Matrix defect = A.transpose() * her.h * A - her.h;
    r.add_flag("hermitian.metric_compatible", defect.is_zero(), "h(J.,J.) - h = " + defect.str());
    return r;
}

Form fundamental_form(const Hermitian& her) { return two_form_of(her.h, her.J); }

Form torsion_form(const Hermitian& her, const Frame& frame) {
    return her.J.apply(frame.d(fundamental_form(her)));
}

Report check_skt(const Hermitian& her, const Frame& frame) {
    Report r = validate_hermitian(her, frame);
    if (!r.holds("hermitian.J_squared")) throw ModelError("J^2 is not -Id");
    std::ostringstream obs;
    bool integrable = true;
    for (const auto& [ij, v] : nijenhuis_table(her.J, frame))
        if (!v.is_zero()) {
            obs << (integrable ? "" : "; ") << pair_label(frame, ij.first, ij.second) << ": " << frame.str(v);
            integrable = false;
        }
    r.add_flag("integrable", integrable, obs.str());
    Form F = fundamental_form(her);
    Form dF = frame.d(F);
    Form JdF = her.J.apply(dF);
    Check& k = r.add_zero("kahler", frame, dF);
    k.informational = true;
    r.add_zero("skt", frame, frame.d(JdF)).notes.push_back("JdF = " + frame.str(JdF));
    return r;
}

Report check_balanced(const Form& F, const Frame& frame, int n) {
    Report r;
    Form p = Form::scalar(Scalar(1));
    for (int k = 0; k < n - 1; ++k) p = wedge(p, F);
    r.add_zero("balanced", frame, frame.d(p));
    return r;
}

AlmostContactMetric su2_contact(const SU2Structure& s) {
    AlmostContactMetric acm;
    acm.g = s.g;
    acm.eta = s.eta;
    acm.I = endo_of(s.g, s.w1);
    acm.xi = metric_dual(s.g, s.eta);
    return acm;
}

Report validate_su2(const SU2Structure& s, const Frame& frame, const std::vector<SamplePoint>& samples) {
    Report r;
    const Form* w[3] = {&s.w1, &s.w2, &s.w3};
    Form v = wedge(s.w1, s.w1);
    std::ostringstream obs;
    bool ok = true;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            Form p = wedge(*w[i], *w[j]);
            Form expect = i == j ? v : Form(4);
            if (p != expect) {
                obs << (ok ? "" : "; ") << "w" << i + 1 << "^w" << j + 1 << " - delta v = " << frame.str(p - expect);
                ok = false;
            }
        }
    r.add_flag("su2.wi_wj", ok, obs.str());
    Form vol = wedge(v, s.eta);
    r.add_flag("su2.v_eta_nonzero", !vol.is_zero(), "v^eta = 0");
    r.add_zero("su2.Phi_Phi.re", frame, wedge(s.w2, s.w2) - wedge(s.w3, s.w3));
    r.add_zero("su2.Phi_Phi.im", frame, wedge(s.w2, s.w3));
    r.add_zero("su2.w1_Phi.re", frame, wedge(s.w1, s.w2));
    r.add_zero("su2.w1_Phi.im", frame, wedge(s.w1, s.w3));
    r.add_equal("su2.Phi_Phibar", frame, wedge(s.w2, s.w2) + wedge(s.w3, s.w3), 2 * v);

    // Orientation: i_X w3 = i_Y w1 implies w2(X, Y) >= 0, tested on frame vectors.
    std::vector<SamplePoint> points = samples;
    bool has_symbols = false;
    for (const Form* f : {&s.w1, &s.w2, &s.w3})
        for (const auto& [m, c] : f->terms())
            if (!c.is_constant()) has_symbols = true;
    if (!has_symbols) points = {SamplePoint{}};
    Check oc;
    oc.name = "su2.orientation";
    oc.informational = true;
    oc.notes.push_back("sampled");
    oc.notes.push_back("handedness of (w1, w2, w3); not part of the SU(2) conditions");
    if (points.empty()) {
        oc.notes.push_back("no sample points supplied; not evaluated");
    }
    int n = frame.dim();
    for (const auto& pt : points) {
        auto at = [&](const Form& f) { return f.map_coeffs([&](const Scalar& c) { return c.substitute(pt); }); };
        Form a1 = at(s.w1), a2 = at(s.w2), a3 = at(s.w3);
        Matrix WT(n, n + 1);
        for (int a = 0; a < n; ++a) {
            Form col = contract(frame.basis_vector(a), a1);
            for (int b = 0; b < n; ++b) WT(b, a) = col.coeff(Mask{1} << b);
        }
        for (int i = 0; i < n; ++i) {
            VectorField X = frame.basis_vector(i);
            Form beta = contract(X, a3);
            if (beta.is_zero()) continue;
            Matrix aug = WT;
            for (int b = 0; b < n; ++b) aug(b, n) = beta.coeff(Mask{1} << b);
            auto piv = rref(aug);
            if (!piv.empty() && piv.back() == n) continue;
            VectorField Y(n);
            for (std::size_t k = 0; k < piv.size(); ++k) Y.c[static_cast<std::size_t>(piv[k])] = aug(static_cast<int>(k), n);
            Scalar val = evaluate(a2, {X, Y});
            if (!val.is_constant() || val.constant_value() < 0) {
                oc.holds = false;
                oc.obstruction = "w2(" + frame.names()[static_cast<std::size_t>(i)] + ", Y) = " + val.str() +
                                 " with i_X w3 = i_Y w1";
            }
        }
    }
    r.add(oc);
    return r;
}

Endo su3_complex_structure(const SU3Structure& s) { return endo_of(s.h, s.F); }

Hermitian su3_hermitian(const SU3Structure& s) { return {su3_complex_structure(s), s.h}; }

Su3Normalization flat_su3_normalization() {
    Frame flat({"e1", "e2", "e3", "e4", "e5", "e6"});
    Form F = Form::basis(0b11) + Form::basis(0b1100) + Form::basis(0b110000);
    ComplexForm psi(Form::scalar(Scalar(1)), Form(0));
    for (int k = 0; k < 3; ++k) psi = wedge(psi, ComplexForm(Form::covector(2 * k), Form::covector(2 * k + 1)));
    SU3Structure s{F, psi.re, psi.im, Matrix::identity(6)};
    Endo J = su3_complex_structure(s);
    int sign = J.apply(psi.re) == psi.im ? 1 : -1;
    Form F3 = wedge(wedge(F, F), F);
    Form pp = wedge(psi.re, psi.im);
    Scalar c = pp.coeff(0b111111) / (F3.coeff(0b111111) / Scalar(6));
    return {sign, c};
}

Report validate_su3(const SU3Structure& s, const Frame& frame) {
    Report r;
    if (frame.dim() != 6) throw ModelError("SU(3) structures need a 6-dimensional coframe");
    Form F3 = wedge(wedge(s.F, s.F), s.F);
    if (F3.is_zero()) throw ModelError("degenerate F: F^3 = 0");
    Hermitian her = su3_hermitian(s);
    r.merge(validate_hermitian(her, frame));
    const Endo& J = her.J;
    int eps = 0;
    if (J.apply(s.psi_plus) == s.psi_minus && J.apply(s.psi_minus) == -s.psi_plus)
        eps = 1;
    else if (J.apply(s.psi_plus) == -s.psi_minus && J.apply(s.psi_minus) == s.psi_plus)
        eps = -1;
    Check& t = r.add_flag("su3.type", eps != 0, "J Psi+ = " + frame.str(J.apply(s.psi_plus)));
    Su3Normalization flat = flat_su3_normalization();
    if (eps != 0)
        t.notes.push_back(eps == flat.type_sign ? "same type as the flat model" : "conjugate type of the flat model");
    r.add_zero("su3.F_psi_plus", frame, wedge(s.F, s.psi_plus));
    r.add_zero("su3.F_psi_minus", frame, wedge(s.F, s.psi_minus));
    Scalar c = eps == 0 ? flat.c : Scalar(eps * flat.type_sign) * flat.c;
    Form rhs = (c / Scalar(6)) * F3;
    Check& nc = r.add_equal("su3.normalization", frame, wedge(s.psi_plus, s.psi_minus), rhs);
    nc.notes.push_back("Psi+ ^ Psi- = " + c.str() + " F^3/3!, constant from the flat model");
    return r;
}

Report check_skt_su3(const SU3Structure& s, const Frame& frame) {
    Report r = validate_su3(s, frame);
    r.add_zero("su3.d_psi_plus", frame, frame.d(s.psi_plus));
    r.add_zero("su3.d_psi_minus", frame, frame.d(s.psi_minus));
    Report skt = check_skt(su3_hermitian(s), frame);
    for (const auto& c : skt.checks)
        if (c.name == "integrable" || c.name == "skt" || c.name == "kahler") r.add(c);
    return r;
}

}  // namespace skt
