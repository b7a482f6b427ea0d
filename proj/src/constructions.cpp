#include "skt/constructions.hpp"

namespace skt {

VectorField pad_vector(const VectorField& X, int n) {
    VectorField r(n);
    for (int i = 0; i < X.dim(); ++i) r.c[static_cast<std::size_t>(i)] = X.c[static_cast<std::size_t>(i)];
    return r;
}

Endo pad_endo(const Endo& T, int n) {
    Matrix m(n, n);
    for (int i = 0; i < T.dim(); ++i)
        for (int j = 0; j < T.dim(); ++j) m(i, j) = T.matrix()(i, j);
    return Endo(m);
}

namespace {

Matrix pad_metric(const Matrix& g, int n, const Scalar& scale, const Scalar& last) {
    Matrix h(n, n);
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) h(i, j) = scale * g(i, j);
    h(n - 1, n - 1) = last;
    return h;
}

// J alpha = I alpha + alpha(xi) s nu, J nu = -(1/s) eta, with nu the new slot.
Endo lift_complex_structure(const AlmostContactMetric& acm, int n, const Scalar& s) {
    Matrix m = pad_endo(acm.I, n).matrix();
    int nu = n - 1;
    for (int j = 0; j < acm.xi.dim(); ++j) m(j, nu) = acm.xi.c[static_cast<std::size_t>(j)] * s;
    Scalar inv = Scalar(-1) / s;
    for (const auto& [mk, c] : acm.eta.terms()) m(nu, mask_indices(mk)[0]) = inv * c;
    return Endo(m);
}

// Equality check whose comparison is only meaningful under some hypotheses;
// it becomes informational when they fail.
void add_conditional_equal(Report& r, const std::string& name, const Frame& frame, const Form& lhs, const Form& rhs,
                           bool hypotheses, const std::string& note) {
    Check& c = r.add_equal(name, frame, lhs, rhs);
    c.assumptions.push_back(note);
    if (!hypotheses) {
        c.informational = true;
        c.notes.push_back("hypotheses fail; comparison not applicable");
    } else if (!c.holds) {
        r.mismatch = true;
    }
}

void add_crossval(Report& r, const std::string& name, bool hypotheses, bool reduced, bool direct) {
    Check c;
    c.name = name;
    if (!hypotheses) {
        c.holds = true;
        c.informational = true;
        c.notes.push_back("hypotheses fail; comparison not applicable");
    } else {
        c.holds = reduced == direct;
        c.notes.push_back(std::string("reduced ") + (reduced ? "holds" : "fails") + ", direct " +
                          (direct ? "holds" : "fails"));
        if (!c.holds) {
            c.obstruction = "reduced and direct verdicts differ";
            r.mismatch = true;
        }
    }
    r.add(std::move(c));
}

struct BaseData {
    Form omega{2}, domega{3}, deta{2}, iI{2};  // iI = I(i_xi d omega)
    ContactClass cls;
};

BaseData base_data(const AlmostContactMetric& acm, const Frame& base) {
    BaseData b;
    b.omega = fundamental_form(acm);
    b.domega = base.d(b.omega);
    b.deta = base.d(acm.eta);
    b.iI = acm.I.apply(contract(acm.xi, b.domega));
    b.cls = classify_contact(acm, base);
    return b;
}

void copy_checks(Report& dst, const Report& src, const std::string& prefix, std::initializer_list<const char*> names) {
    for (const char* n : names)
        if (const Check* c = src.find(n)) {
            Check k = *c;
            k.name = prefix + k.name;
            dst.add(std::move(k));
        }
}

}  // namespace

Extension extend_s1_bundle(const AlmostContactMetric& acm, const Frame& base, const Form& Omega, const std::string& name) {
    if (Omega.degree() != 2) throw ModelError("Omega must be a 2-form");
    Form dO = base.d(Omega);
    if (!dO.is_zero()) throw ModelError("Omega is not closed: d Omega = " + base.str(dO));
    Extension e;
    e.frame = base.extend(name, Omega);
    e.slot = e.frame.dim() - 1;
    e.frame.theta_index = e.slot;
    int n = e.frame.dim();
    e.her.J = lift_complex_structure(acm, n, Scalar(1));
    e.her.h = pad_metric(acm.g, n, Scalar(1), Scalar(1));
    e.F = fundamental_form(e.her);
    return e;
}

Report check_skt_bundle(const AlmostContactMetric& acm, const Frame& base, const Form& Omega) {
    Report r;
    BaseData b = base_data(acm, base);
    Extension e = extend_s1_bundle(acm, base, Omega);
    const Frame& E = e.frame;
    Form theta = Form::covector(e.slot);

    r.add_equal("bundle.F_formula", E, e.F, b.omega + wedge(acm.eta, theta));
    Report nr = check_normal(acm, base);
    r.add_flag("bundle.normal", nr.holds("normal"), nr.find("normal")->obstruction);
    r.add_equal("bundle.I_Omega", base, acm.I.apply(Omega), Omega);
    r.add_zero("bundle.i_xi_Omega", base, contract(acm.xi, Omega));
    bool hyp = r.holds("bundle.normal") && r.holds("bundle.I_Omega") && r.holds("bundle.i_xi_Omega");

    r.add_zero("bundle.reduced.d_I_ixi_domega", base, base.d(b.iI));
    Form lhs = base.d(acm.I.apply(b.domega) - wedge(b.deta, acm.eta));
    Form rhs = wedge(-b.iI + Omega, Omega);
    r.add_equal("bundle.reduced.second", base, lhs, rhs);
    bool reduced = hyp && r.holds("bundle.reduced.d_I_ixi_domega") && r.holds("bundle.reduced.second");
    Check& rv = r.add_flag("skt.bundle.reduced", reduced, hyp ? std::optional<std::string>{"reduced conditions fail"}
                                                             : std::optional<std::string>{"hypotheses fail"});
    rv.assumptions = {"normal", "I(Omega) = Omega", "i_xi Omega = 0"};
    rv.notes.push_back("integral class of Omega assumed");

    if (b.cls.quasi_sasakian()) {
        Check& q = r.add_equal("skt.bundle.quasi_sasakian", base, wedge(b.deta, b.deta), -wedge(Omega, Omega));
        q.assumptions.push_back("quasi-Sasakian base");
        q.notes.push_back("d eta ^ d eta = " + base.str(wedge(b.deta, b.deta)) + ", Omega ^ Omega = " +
                          base.str(wedge(Omega, Omega)));
        if (b.cls.alpha && !b.cls.alpha->is_zero()) {
            Scalar a = *b.cls.alpha;
            Check& s = r.add_equal("skt.bundle.alpha_sasakian", base, wedge(Omega, Omega), -(a * a) * wedge(b.omega, b.omega));
            s.assumptions.push_back("alpha-Sasakian base, alpha = " + a.str());
        }
        add_crossval(r, "bundle.crossval.quasi_sasakian", hyp, r.holds("skt.bundle.quasi_sasakian"), reduced);
    }

    Report direct = check_skt(e.her, E);
    copy_checks(r, direct, "bundle.direct.", {"integrable", "skt"});
    bool dv = direct.holds("integrable") && direct.holds("skt");
    r.add_flag("skt.bundle.direct", dv, direct.find("skt")->obstruction);

    Form JdF = e.her.J.apply(E.d(e.F));
    Form expr = acm.I.apply(b.domega) + wedge(b.iI, theta) - wedge(b.deta, acm.eta) - wedge(theta, Omega);
    add_conditional_equal(r, "bundle.JdF_formula", E, JdF, expr, hyp, "normal, I-invariant Omega");
    add_crossval(r, "bundle.crossval", hyp, reduced, dv);
    return r;
}

Extension product_with_line(const AlmostContactMetric& acm, const Frame& base, const std::string& name) {
    Extension e;
    e.frame = base.extend(name, Form(2));
    e.slot = e.frame.dim() - 1;
    e.frame.dt_index = e.slot;
    int n = e.frame.dim();
    e.her.J = lift_complex_structure(acm, n, Scalar(1));
    e.her.h = pad_metric(acm.g, n, Scalar(1), Scalar(1));
    e.F = fundamental_form(e.her);
    return e;
}

Report check_skt_product(const AlmostContactMetric& acm, const Frame& base) {
    Report r;
    BaseData b = base_data(acm, base);
    Extension e = product_with_line(acm, base);
    const Frame& E = e.frame;
    Form dt = Form::covector(e.slot);

    r.add_equal("product.F_formula", E, e.F, b.omega + wedge(acm.eta, dt));
    Report nr = check_normal(acm, base);
    r.add_flag("product.normal", nr.holds("normal"), nr.find("normal")->obstruction);
    bool hyp = r.holds("product.normal");

    r.add_equal("product.reduced.first", base, base.d(acm.I.apply(b.domega)), base.d(wedge(b.deta, acm.eta)));
    r.add_zero("product.reduced.d_I_ixi_domega", base, base.d(b.iI));
    bool reduced = hyp && r.holds("product.reduced.first") && r.holds("product.reduced.d_I_ixi_domega");
    r.add_flag("skt.product.reduced", reduced, hyp ? "reduced conditions fail" : "base is not normal")
        .assumptions.push_back("normal");

    Form dd = wedge(b.deta, b.deta);
    Check& c1 = r.add_zero("product.deta_deta", base, dd);
    c1.informational = true;
    Check& c2 = r.add_zero("product.d_deta_eta", base, base.d(wedge(b.deta, acm.eta)));
    c2.informational = true;
    if (b.cls.quasi_sasakian()) {
        Check& q = r.add_zero("skt.product.quasi_sasakian", base, dd);
        q.assumptions.push_back("quasi-Sasakian base");
        add_crossval(r, "product.crossval.quasi_sasakian", hyp, q.holds, reduced);
    }

    Report direct = check_skt(e.her, E);
    copy_checks(r, direct, "product.direct.", {"integrable", "skt"});
    bool dv = direct.holds("integrable") && direct.holds("skt");
    r.add_flag("skt.product.direct", dv, direct.find("skt")->obstruction);

    Form JdF = e.her.J.apply(E.d(e.F));
    Form expr = acm.I.apply(b.domega) + wedge(b.iI, dt) - wedge(b.deta, acm.eta);
    add_conditional_equal(r, "product.JdF_formula", E, JdF, expr, hyp, "normal");
    add_crossval(r, "product.crossval", hyp, reduced, dv);
    return r;
}

Extension riemannian_cone(const AlmostContactMetric& acm, const Frame& base) {
    Extension e;
    e.frame = base.extend("dt", Form(2));
    e.slot = e.frame.dim() - 1;
    e.frame.dt_index = e.slot;
    std::string tname = "t";
    while (base.symbol(tname)) tname += "_";
    e.t_var = Symbols::intern(tname);
    SymbolInfo info;
    info.var = e.t_var;
    info.name = tname;
    info.d = Form::covector(e.slot);
    info.ddt = Scalar(1);
    info.parameter = false;
    e.frame.declare_symbol(info);
    Scalar t = Scalar::symbol(e.t_var);
    int n = e.frame.dim();
    e.her.J = lift_complex_structure(acm, n, t.inverse());
    e.her.h = pad_metric(acm.g, n, t * t, Scalar(1));
    e.F = fundamental_form(e.her);
    return e;
}

Report check_skt_cone(const AlmostContactMetric& acm, const Frame& base) {
    Report r;
    BaseData b = base_data(acm, base);
    Extension e = riemannian_cone(acm, base);
    const Frame& E = e.frame;
    Form dt = Form::covector(e.slot);
    Scalar t = Scalar::symbol(e.t_var);

    r.add_equal("cone.F_formula", E, e.F, t * t * b.omega + t * wedge(acm.eta, dt));
    Report nr = check_normal(acm, base);
    r.add_flag("cone.normal", nr.holds("normal"), nr.find("normal")->obstruction);
    bool hyp = r.holds("cone.normal");

    Form lhs = Scalar(-4) * wedge(acm.eta, b.omega) + Scalar(2) * acm.I.apply(b.domega) - Scalar(2) * wedge(b.deta, acm.eta);
    r.add_equal("cone.reduced.equation", base, lhs, base.d(b.iI));
    bool reduced = hyp && r.holds("cone.reduced.equation");
    r.add_flag("skt.cone.reduced", reduced, hyp ? "reduced condition fails" : "base is not normal")
        .assumptions.push_back("normal");

    Report direct = check_skt(e.her, E);
    copy_checks(r, direct, "cone.direct.", {"integrable", "skt", "kahler"});
    bool dv = direct.holds("integrable") && direct.holds("skt");
    r.add_flag("skt.cone.direct", dv, direct.find("skt")->obstruction);

    Form JdF = e.her.J.apply(E.d(e.F));
    Form expr = Scalar(-2) * (t * t) * wedge(acm.eta, b.omega) + (t * t) * acm.I.apply(b.domega) +
                t * wedge(dt, b.iI) - (t * t) * wedge(b.deta, acm.eta);
    add_conditional_equal(r, "cone.JdF_formula", E, JdF, expr, hyp, "normal");
    add_crossval(r, "cone.crossval", hyp, reduced, dv);

    // Special cases: a 3-dimensional base must be Sasakian, a quasi-Sasakian
    // base of higher dimension must satisfy d eta = -2 omega.
    if (base.dim() == 3) {
        bool sas = b.cls.label == "Sasakian";
        add_crossval(r, "cone.crossval.low_dimension_sasakian", hyp, sas, reduced);
    } else if (b.cls.quasi_sasakian()) {
        add_crossval(r, "cone.crossval.quasi_sasakian", hyp, b.deta == Scalar(-2) * b.omega, reduced);
    }
    return r;
}

namespace {

SU3Assembly assemble(const SU2Structure& s, const Extension& e, const Scalar& a, const Scalar& bb, const Scalar& c) {
    // F = a w1 + b eta^nu, Psi+ = c (t w2^eta) + a (w3^nu), Psi- = c (t w3^eta) - a (w2^nu)
    // with (a, b, c) = (1, 1, 1) on the product and (t^2, t, t^3) on the cone.
    SU3Assembly out;
    out.frame = e.frame;
    out.t_var = e.t_var;
    Form nu = Form::covector(e.slot);
    out.su3.F = a * s.w1 + bb * wedge(s.eta, nu);
    out.su3.psi_plus = c * wedge(s.w2, s.eta) + a * wedge(s.w3, nu);
    out.su3.psi_minus = c * wedge(s.w3, s.eta) - a * wedge(s.w2, nu);
    out.su3.h = e.her.h;
    return out;
}

}  // namespace

SU3Assembly su3_product_from_su2(const SU2Structure& s, const Frame& base) {
    AlmostContactMetric acm = su2_contact(s);
    Extension e = product_with_line(acm, base);
    SU3Assembly out = assemble(s, e, Scalar(1), Scalar(1), Scalar(1));
    Report& r = out.report;
    const Frame& E = out.frame;
    r.merge(validate_su2(s, base), "base.");
    r.add_flag("su3.product.J_matches_lift", su3_complex_structure(out.su3) == e.her.J);

    Report nr = check_normal(acm, base);
    r.add_flag("su3.product.normal", nr.holds("normal"), nr.find("normal")->obstruction);
    bool hyp = r.holds("su3.product.normal");

    Form dw1 = base.d(s.w1), dw2 = base.d(s.w2), dw3 = base.d(s.w3), deta = base.d(s.eta);
    AlmostContactMetric a = acm;
    Form iI = a.I.apply(contract(a.xi, dw1));
    r.add_equal("su3.product.printed.first", base, base.d(a.I.apply(dw1)), base.d(wedge(deta, s.eta)));
    r.add_zero("su3.product.printed.d_I_ixi_domega", base, base.d(iI));
    r.add_equal("su3.product.printed.dw2", base, dw2, Scalar(-3) * wedge(s.w3, s.eta));
    r.add_equal("su3.product.printed.dw3", base, dw3, Scalar(3) * wedge(s.w2, s.eta));
    bool printed = hyp && r.holds("su3.product.printed.first") && r.holds("su3.product.printed.d_I_ixi_domega") &&
                   r.holds("su3.product.printed.dw2") && r.holds("su3.product.printed.dw3");
    r.add_flag("skt_su3.product.printed", printed, "printed conditions fail").assumptions.push_back("normal");

    // Closure of Psi on the product splits into the dt and non-dt parts.
    r.add_zero("su3.product.closure.dw2", base, dw2);
    r.add_zero("su3.product.closure.dw3", base, dw3);
    r.add_zero("su3.product.closure.d_w2_eta", base, base.d(wedge(s.w2, s.eta)));
    r.add_zero("su3.product.closure.d_w3_eta", base, base.d(wedge(s.w3, s.eta)));
    bool derived = hyp && r.holds("su3.product.printed.first") && r.holds("su3.product.printed.d_I_ixi_domega") &&
                   r.holds("su3.product.closure.dw2") && r.holds("su3.product.closure.dw3") &&
                   r.holds("su3.product.closure.d_w2_eta") && r.holds("su3.product.closure.d_w3_eta");
    r.add_flag("skt_su3.product.reduced", derived, "reduced conditions fail").assumptions.push_back("normal");

    Report direct = check_skt_su3(out.su3, E);
    r.merge(direct, "su3.product.direct.");
    bool dv = direct.holds("integrable") && direct.holds("skt") && direct.holds("su3.d_psi_plus") &&
              direct.holds("su3.d_psi_minus");
    r.add_flag("skt_su3.product.direct", dv, "direct check fails");
    add_crossval(r, "su3.product.crossval", hyp, derived, dv);
    Check& pc = r.add_flag("su3.product.printed_agrees_with_direct", !hyp || printed == dv,
                           "printed conditions and direct verdict differ");
    pc.informational = true;
    pc.notes.push_back("printed conditions: d w2 = -3 w3^eta, d w3 = 3 w2^eta");
    return out;
}

SU3Assembly su3_cone_from_su2(const SU2Structure& s, const Frame& base) {
    AlmostContactMetric acm = su2_contact(s);
    Extension e = riemannian_cone(acm, base);
    Scalar t = Scalar::symbol(e.t_var);
    SU3Assembly out = assemble(s, e, t * t, t, t * t * t);
    Report& r = out.report;
    const Frame& E = out.frame;
    r.merge(validate_su2(s, base), "base.");
    r.add_flag("su3.cone.J_matches_lift", su3_complex_structure(out.su3) == e.her.J);

    Report cone = check_skt_cone(acm, base);
    r.add_flag("su3.cone.normal", cone.holds("cone.normal"), cone.find("cone.normal")->obstruction);
    bool hyp = r.holds("su3.cone.normal");
    Check eq = *cone.find("cone.reduced.equation");
    eq.name = "su3.cone.reduced.cone_equation";
    r.add(eq);

    Form dw2 = base.d(s.w2), dw3 = base.d(s.w3);
    Form w3e = wedge(s.w3, s.eta), w2e = wedge(s.w2, s.eta);
    r.add_equal("su3.cone.printed.dw2", base, dw2, Scalar(3) * w3e);
    r.add_equal("su3.cone.printed.dw3", base, dw3, Scalar(-3) * w2e);
    r.add_equal("su3.cone.closure.dw2", base, dw2, Scalar(-3) * w3e);
    r.add_equal("su3.cone.closure.dw3", base, dw3, Scalar(3) * w2e);
    bool base_ok = hyp && eq.holds;
    bool printed = base_ok && r.holds("su3.cone.printed.dw2") && r.holds("su3.cone.printed.dw3");
    bool derived = base_ok && r.holds("su3.cone.closure.dw2") && r.holds("su3.cone.closure.dw3");
    r.add_flag("skt_su3.cone.printed_sign", printed, "conditions with d w2 = 3 w3^eta fail")
        .assumptions.push_back("normal");
    r.add_flag("skt_su3.cone.closure_sign", derived, "conditions with d w2 = -3 w3^eta fail")
        .assumptions.push_back("normal");
    Form deta = base.d(s.eta);
    Check& se = r.add_flag("su3.cone.sasaki_einstein",
                           deta == Scalar(-2) * s.w1 && r.holds("su3.cone.closure.dw2") && r.holds("su3.cone.closure.dw3"),
                           "d eta + 2 w1 = " + base.str(deta + Scalar(2) * s.w1));
    se.informational = true;

    Report direct = check_skt_su3(out.su3, E);
    r.merge(direct, "su3.cone.direct.");
    bool dv = direct.holds("integrable") && direct.holds("skt") && direct.holds("su3.d_psi_plus") &&
              direct.holds("su3.d_psi_minus");
    r.add_flag("skt_su3.cone.direct", dv, "direct check fails");
    add_crossval(r, "su3.cone.crossval", hyp, derived, dv);
    return out;
}

namespace {

Induced induce_common(const Hermitian& amb, const Frame& frame, int normal, int sign) {
    int n = frame.dim();
    if (normal < 0 || normal >= n) throw ModelError("normal covector out of range");
    Induced out;
    Report& r = out.report;
    Form nu = Form::covector(normal, Scalar(sign));
    VectorField U = metric_dual(amb.h, nu);
    Scalar len = pair(nu, U);
    if (!len.is_one()) throw ModelError("normal covector is not of unit length: |nu|^2 = " + len.str());
    Form leaf = pullback_hypersurface(frame.d(nu), normal);
    if (!leaf.is_zero())
        throw ModelError("the hyperplane annihilated by the normal is not a subalgebra: obstruction " +
                         hypersurface_frame(frame, normal).str(leaf));
    r.add_flag("hypersurface.unit_normal", true);
    out.frame = hypersurface_frame(frame, normal);
    const Frame& H = out.frame;

    Form F = fundamental_form(amb);
    out.omega = pullback_hypersurface(F, normal);
    out.acm.eta = -pullback_hypersurface(contract(U, F), normal);
    int m = n - 1;
    Matrix A(m, m), g(m, m);
    for (int i = 0, a = 0; i < n; ++i) {
        if (i == normal) continue;
        Form img = pullback_hypersurface(amb.J.image_of_covector(i), normal);
        for (const auto& [mk, c] : img.terms()) A(a, mask_indices(mk)[0]) = c;
        for (int j = 0, b = 0; j < n; ++j) {
            if (j == normal) continue;
            g(a, b++) = amb.h(i, j);
        }
        ++a;
    }
    out.acm.I = Endo(A);
    out.acm.g = g;
    out.acm.xi = metric_dual(g, out.acm.eta);
    r.merge(validate_acm(out.acm, H), "hypersurface.");
    Check& wf = r.add_equal("hypersurface.omega_matches", H, two_form_of(g, out.acm.I), out.omega);
    wf.informational = true;

    Form dF = frame.d(F);
    Form fdF = pullback_hypersurface(contract(U, dF), normal);
    Form fL = pullback_hypersurface(lie_derivative(frame, U, F), normal);
    Form domega = H.d(out.omega);
    Form deta = H.d(out.acm.eta);
    const Endo& I = out.acm.I;
    Form A1 = I.apply(domega) - wedge(I.apply(fdF), out.acm.eta);
    Form A2 = I.apply(domega) - wedge(I.apply(fL + deta), out.acm.eta);
    r.add_zero("hypersurface.skt_condition", H, H.d(A1));
    r.add_zero("hypersurface.skt_condition_lie", H, H.d(A2));
    Check& eq = r.add_equal("hypersurface.reformulation_agrees", H, fdF, fL + deta);
    if (!eq.holds) r.mismatch = true;
    Check& lie = r.add_zero("hypersurface.lie_U_F", H, fL);
    lie.informational = true;

    Form JdF = amb.J.apply(dF);
    Check& pb = r.add_equal("hypersurface.pullback_JdF", H, pullback_hypersurface(JdF, normal), A1);
    pb.informational = true;
    bool pulled = pb.holds;
    Report amb_skt = check_skt(amb, frame);
    bool ambient = amb_skt.holds("skt") && amb_skt.holds("integrable");
    Check& as = r.add_flag("hypersurface.ambient_skt", ambient, amb_skt.find("skt")->obstruction);
    as.informational = true;
    if (ambient && pulled && !r.holds("hypersurface.skt_condition")) {
        r.mismatch = true;
        r.add_flag("hypersurface.crossval", false, "ambient SKT but the induced condition fails");
    }
    return out;
}

}  // namespace

Induced induce_hypersurface(const Hermitian& ambient, const Frame& frame, int normal) {
    int sign = normal < 0 ? -1 : 1;
    return induce_common(ambient, frame, sign < 0 ? -normal - 1 : normal, sign);
}

Induced induce_hypersurface(const SU3Structure& ambient, const Frame& frame, int normal) {
    int sign = normal < 0 ? -1 : 1;
    int slot = sign < 0 ? -normal - 1 : normal;
    Hermitian her = su3_hermitian(ambient);
    Induced out = induce_common(her, frame, slot, sign);
    Report& r = out.report;
    const Frame& H = out.frame;
    r.merge(validate_su3(ambient, frame), "ambient.");
    VectorField U = metric_dual(ambient.h, Form::covector(slot, Scalar(sign)));
    out.has_su2 = true;
    out.su2.eta = out.acm.eta;
    out.su2.w1 = out.omega;
    out.su2.w2 = -pullback_hypersurface(contract(U, ambient.psi_minus), slot);
    out.su2.w3 = pullback_hypersurface(contract(U, ambient.psi_plus), slot);
    out.su2.g = out.acm.g;
    r.merge(validate_su2(out.su2, H), "hypersurface.");
    r.add_zero("hypersurface.d_w2_eta", H, H.d(wedge(out.su2.w2, out.su2.eta)));
    r.add_zero("hypersurface.d_w3_eta", H, H.d(wedge(out.su2.w3, out.su2.eta)));
    Check& p1 = r.add_equal("hypersurface.w2_eta_pullback", H, wedge(out.su2.w2, out.su2.eta),
                            pullback_hypersurface(ambient.psi_plus, slot));
    p1.informational = true;
    Check& p2 = r.add_equal("hypersurface.w3_eta_pullback", H, wedge(out.su2.w3, out.su2.eta),
                            pullback_hypersurface(ambient.psi_minus, slot));
    p2.informational = true;
    bool pulled = r.holds("hypersurface.w2_eta_pullback") && p2.holds;
    bool closed = frame.d(ambient.psi_plus).is_zero() && frame.d(ambient.psi_minus).is_zero();
    if (closed && pulled &&
        !(r.holds("hypersurface.d_w2_eta") && r.holds("hypersurface.d_w3_eta"))) {
        r.mismatch = true;
        r.add_flag("hypersurface.crossval.closure", false, "ambient Psi closed but an induced condition fails");
    }
    return out;
}

namespace {

struct EvolutionTerms {
    AlmostContactMetric acm;
    // A - I(P) ^ eta and B as displayed, for a given P
    struct Skt {
        Form A{3}, B{2}, stat{4}, flow{3};
    } printed, oriented;
    Form hypo2{4}, hypo3{4}, e3{3}, e4{3};
};

EvolutionTerms evolution_terms(const SU2Structure& s, const Frame& N) {
    EvolutionTerms t;
    t.acm = su2_contact(s);
    const Endo& I = t.acm.I;
    const VectorField& xi = t.acm.xi;
    Form dw1 = N.d(s.w1);
    auto skt = [&](const Form& P) {
        EvolutionTerms::Skt k;
        k.A = I.apply(dw1) - wedge(I.apply(P), s.eta);
        k.B = I.apply(contract(xi, dw1)) - wedge(I.apply(contract(xi, P)), s.eta);
        k.stat = N.d(k.A);
        k.flow = partial_t(N, k.A) + N.d(k.B);
        return k;
    };
    Form dtw1 = partial_t(N, s.w1);
    t.printed = skt(dtw1 + N.d(s.eta));
    // For the assembled structure dF = dw1 - dt ^ (d eta - dt w1), so the time derivative enters with a minus.
    t.oriented = skt(N.d(s.eta) - dtw1);
    t.hypo2 = N.d(wedge(s.w2, s.eta));
    t.hypo3 = N.d(wedge(s.w3, s.eta));
    t.e3 = partial_t(N, wedge(s.w2, s.eta)) + N.d(s.w3);
    t.e4 = partial_t(N, wedge(s.w3, s.eta)) - N.d(s.w2);
    return t;
}

}  // namespace

Report check_evolution(const SU2Structure& family, const Frame& base) {
    Report r;
    r.merge(validate_su2(family, base), "family.");
    EvolutionTerms t = evolution_terms(family, base);
    r.add_zero("evolution.hypo.w2_eta", base, t.hypo2);
    r.add_zero("evolution.hypo.w3_eta", base, t.hypo3);
    r.add_zero("evolution.skt_static", base, t.printed.stat);
    r.add_zero("evolution.skt_flow", base, t.printed.flow);
    r.add_zero("evolution.oriented.skt_static", base, t.oriented.stat);
    r.add_zero("evolution.oriented.skt_flow", base, t.oriented.flow);
    r.add_zero("evolution.flow_w2_eta", base, t.e3);
    r.add_zero("evolution.flow_w3_eta", base, t.e4);
    Form dw1 = base.d(family.w1);
    auto info = [&](const std::string& name, const Form& f) { r.add_zero(name, base, f).informational = true; };
    info("evolution.side.dt_w1", partial_t(base, family.w1));
    info("evolution.side.d_eta", base.d(family.eta));
    info("evolution.side.i_xi_dw1", contract(t.acm.xi, dw1));
    info("evolution.side.dt_I_dw1", partial_t(base, t.acm.I.apply(dw1)));
    return r;
}

SU3Assembly assemble_su3_from_family(const SU2Structure& family, const Frame& base) {
    SU3Assembly out;
    Frame M = base.extend("dt", Form(2));
    int slot = M.dim() - 1;
    M.dt_index = slot;
    Form dt = Form::covector(slot);
    for (SymbolInfo s : base.symbols()) {
        if (s.ddt && !s.ddt->is_zero()) {
            Form d = s.d ? *s.d : Form(1);
            s.d = d + *s.ddt * dt;
            M.declare_symbol(std::move(s));
        }
    }
    out.frame = M;
    // Time runs along -dt relative to eta: F = w1 + dt ^ eta, Psi = (w2 + i w3) ^ (eta + i dt).
    // With this orientation the evolution equations are exactly closure of Psi and of JdF.
    out.su3.F = family.w1 + wedge(dt, family.eta);
    out.su3.psi_plus = wedge(family.w2, family.eta) - wedge(family.w3, dt);
    out.su3.psi_minus = wedge(family.w3, family.eta) + wedge(family.w2, dt);
    out.su3.h = pad_metric(family.g, M.dim(), Scalar(1), Scalar(1));

    Report& r = out.report;
    Report ev = check_evolution(family, base);
    r.merge(ev);
    EvolutionTerms t = evolution_terms(family, base);
    Report direct = check_skt_su3(out.su3, M);
    r.merge(direct, "family.direct.");
    Hermitian her = su3_hermitian(out.su3);
    Form JdF = her.J.apply(M.d(out.su3.F));
    r.add_equal("family.JdF_formula", M, JdF, t.oriented.A - wedge(t.oriented.B, dt)).notes.push_back("JdF = A - B ^ dt");
    if (!r.holds("family.JdF_formula")) r.mismatch = true;

    bool closure_reduced = ev.holds("evolution.hypo.w2_eta") && ev.holds("evolution.hypo.w3_eta") &&
                           ev.holds("evolution.flow_w2_eta") && ev.holds("evolution.flow_w3_eta");
    bool closure_direct = direct.holds("su3.d_psi_plus") && direct.holds("su3.d_psi_minus");
    add_crossval(r, "family.crossval.closure", true, closure_reduced, closure_direct);
    bool skt_reduced = ev.holds("evolution.oriented.skt_static") && ev.holds("evolution.oriented.skt_flow");
    add_crossval(r, "family.crossval.skt", direct.holds("integrable"), skt_reduced, direct.holds("skt"));
    r.add_flag("skt_su3.family.direct",
               closure_direct && direct.holds("skt") && direct.holds("integrable"), "direct check fails");
    return out;
}

}  // namespace skt
