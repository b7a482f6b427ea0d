#include "skt/hkt.hpp"

#include <sstream>
#include <tuple>

namespace skt {

namespace {

constexpr std::array<std::array<int, 3>, 3> kCyclic{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};

std::string idx(int i) { return std::to_string(i + 1); }

struct BaseTerms {
    Form first{3};   // I(d omega) - d eta ^ eta
    Form second{2};  // I(i_xi d omega)
    Form domega{3}, deta_eta{3}, Idomega{3};
};

BaseTerms base_terms(const AlmostContactMetric& a, const Frame& base) {
    BaseTerms b;
    b.domega = base.d(fundamental_form(a));
    b.Idomega = a.I.apply(b.domega);
    b.deta_eta = wedge(base.d(a.eta), a.eta);
    b.first = b.Idomega - b.deta_eta;
    b.second = a.I.apply(contract(a.xi, b.domega));
    return b;
}

bool all_equal(Report& r, const std::string& name, const Frame& frame, const std::array<Form, 3>& f) {
    Check& c = r.add_zero(name, frame, f[0] - f[1]);
    if (c.holds && f[1] != f[2]) {
        c.holds = false;
        c.obstruction = "(2) - (3): " + frame.str(f[1] - f[2]);
    } else if (!c.holds) {
        c.obstruction = "(1) - (2): " + *c.obstruction;
    }
    return c.holds;
}

}  // namespace

Report validate_triple(const ContactTriple& t, const Frame& frame) {
    Report r;
    for (int q = 0; q < 3; ++q) {
        if (t.s[static_cast<std::size_t>(q)].g != t.s[0].g) throw ModelError("triple structures must share one metric");
        Report v = validate_acm(t.s[static_cast<std::size_t>(q)], frame);
        Report n = check_normal(t.s[static_cast<std::size_t>(q)], frame);
        r.merge(v, "triple." + idx(q) + ".");
        r.add_flag("triple." + idx(q) + ".normal", n.holds("normal"), n.find("normal")->obstruction);
    }
    for (auto [i, j, k] : kCyclic) {
        const auto& si = t.s[static_cast<std::size_t>(i)];
        const auto& sj = t.s[static_cast<std::size_t>(j)];
        const auto& sk = t.s[static_cast<std::size_t>(k)];
        std::string tag = idx(i) + idx(j) + idx(k);
        Endo lhs = si.I * sj.I - outer(sj.eta, si.xi);
        r.add_flag("triple.I" + tag, lhs == sk.I, "I_i I_j - eta_j (x) xi_i - I_k = " + (lhs - sk.I).matrix().str());
        Endo alt = -(sj.I * si.I) + outer(si.eta, sj.xi);
        r.add_flag("triple.I_alt" + tag, alt == sk.I, "-I_j I_i + eta_i (x) xi_j - I_k = " + (alt - sk.I).matrix().str());
        VectorField x1 = si.I.apply(sj.xi), x2 = -Scalar(1) * sj.I.apply(si.xi);
        r.add_flag("triple.xi" + tag, x1 == sk.xi && x2 == sk.xi,
                   "I_i xi_j = " + frame.str(x1) + ", -I_j xi_i = " + frame.str(x2));
        Form e1 = compose(si.eta, sj.I), e2 = -compose(sj.eta, si.I);
        r.add_flag("triple.eta" + tag, e1 == sk.eta && e2 == sk.eta,
                   "eta_i I_j = " + frame.str(e1) + ", -eta_j I_i = " + frame.str(e2));
    }
    return r;
}

namespace {

HyperHermitian assemble_hyper(const ContactTriple& t, const Frame& base, const Form* Omega) {
    HyperHermitian hh;
    for (int q = 0; q < 3; ++q) {
        const auto& s = t.s[static_cast<std::size_t>(q)];
        Extension e = Omega ? extend_s1_bundle(s, base, *Omega) : product_with_line(s, base);
        if (q == 0) {
            hh.frame = e.frame;
            hh.h = e.her.h;
        }
        hh.J[static_cast<std::size_t>(q)] = e.her.J;
        hh.F[static_cast<std::size_t>(q)] = e.F;
    }
    return hh;
}

}  // namespace

HyperHermitian hyper_product(const ContactTriple& t, const Frame& base) { return assemble_hyper(t, base, nullptr); }

HyperHermitian hyper_bundle(const ContactTriple& t, const Frame& base, const Form& Omega) {
    return assemble_hyper(t, base, &Omega);
}

Report check_hyper_direct(const HyperHermitian& hh) {
    Report r;
    const Frame& M = hh.frame;
    const auto& J = hh.J;
    r.add_flag("hyper.J1J2_eq_J3", J[0] * J[1] == J[2], (J[0] * J[1] - J[2]).matrix().str());
    r.add_flag("hyper.J2J1_eq_minus_J3", J[1] * J[0] == -J[2], (J[1] * J[0] + J[2]).matrix().str());
    std::array<Form, 3> T;
    for (int q = 0; q < 3; ++q) {
        Report s = check_skt(Hermitian{J[static_cast<std::size_t>(q)], hh.h}, M);
        Check c = *s.find("integrable");
        c.name = "hyper.J" + idx(q) + ".integrable";
        r.add(c);
        r.merge(validate_hermitian(Hermitian{J[static_cast<std::size_t>(q)], hh.h}, M), "hyper.J" + idx(q) + ".");
        T[static_cast<std::size_t>(q)] = J[static_cast<std::size_t>(q)].apply(M.d(hh.F[static_cast<std::size_t>(q)]));
    }
    bool eq = all_equal(r, "hkt.direct", M, T);
    r.checks.back().notes.push_back("J1 dF1 = " + M.str(T[0]));
    Check& s = r.add_zero("hkt.direct.strong", M, M.d(T[0]));
    if (!eq) {
        s.informational = true;
        s.notes.push_back("torsion forms differ; closedness of J1 dF1 only");
    }
    return r;
}

Report check_hkt_product(const ContactTriple& t, const Frame& base, const std::vector<SamplePoint>& samples) {
    Report r = validate_triple(t, base);
    bool hyp = true;
    for (int q = 0; q < 3; ++q) hyp = hyp && r.holds("triple." + idx(q) + ".normal");
    std::array<BaseTerms, 3> b;
    for (int q = 0; q < 3; ++q) b[static_cast<std::size_t>(q)] = base_terms(t.s[static_cast<std::size_t>(q)], base);
    auto pick = [&](auto member) {
        std::array<Form, 3> out;
        for (std::size_t q = 0; q < 3; ++q) out[q] = b[q].*member;
        return out;
    };
    bool e1 = all_equal(r, "hkt.product.reduced.first", base, pick(&BaseTerms::first));
    bool e2 = all_equal(r, "hkt.product.reduced.second", base, pick(&BaseTerms::second));
    bool reduced = hyp && e1 && e2;
    r.add_flag("hkt.product.reduced", reduced, "reduced conditions fail").assumptions.push_back("three normal structures");
    bool strong = true;
    for (int q = 0; q < 3; ++q) {
        const auto& bq = b[static_cast<std::size_t>(q)];
        bool a = r.add_zero("hkt.product.strong." + idx(q) + ".d_second", base, base.d(bq.second)).holds;
        bool c = r.add_zero("hkt.product.strong." + idx(q) + ".d_first", base, base.d(bq.first)).holds;
        strong = strong && a && c;
    }
    r.add_flag("hkt.product.reduced.strong", reduced && strong, "strongness conditions fail");

    bool eta_eq = all_equal(r, "hkt.product.case.deta_eta_equal", base, pick(&BaseTerms::deta_eta));
    r.checks.back().informational = true;
    bool closed = true;
    for (int q = 0; q < 3; ++q) closed = closed && b[static_cast<std::size_t>(q)].domega.is_zero();
    r.add_flag("hkt.product.case_a.domega_zero", closed, "some d omega_r != 0").informational = true;
    bool case_a = eta_eq && closed;
    r.add_flag("hkt.product.case_a", case_a, "case (a) hypotheses fail").informational = true;

    // Case (b): some d omega_i ^ eta_j ^ eta_k nonzero, with I_r d omega_r and
    // I_r(i_xi d omega_r) independent of r.
    bool nonzero = false;
    std::string witness;
    for (int i = 0; i < 3 && !nonzero; ++i) {
        int j = (i + 1) % 3, k = (i + 2) % 3;
        Form f = wedge(wedge(b[static_cast<std::size_t>(i)].domega, t.s[static_cast<std::size_t>(j)].eta),
                       t.s[static_cast<std::size_t>(k)].eta);
        if (f.is_zero()) continue;
        bool at_samples = true;
        for (const auto& pt : samples) {
            Form v = f.map_coeffs([&](const Scalar& c) { return c.substitute(pt); });
            if (v.is_zero()) at_samples = false;
        }
        if (at_samples) {
            nonzero = true;
            witness = "d omega_" + idx(i) + " ^ eta_" + idx(j) + " ^ eta_" + idx(k) + " = " + base.str(f);
        }
    }
    bool Ieq = all_equal(r, "hkt.product.case_b.I_domega_equal", base, pick(&BaseTerms::Idomega));
    r.checks.back().informational = true;
    bool case_b = eta_eq && nonzero && Ieq && e2;
    Check& cb = r.add_flag("hkt.product.case_b", case_b, "case (b) hypotheses fail");
    cb.informational = true;
    cb.notes.push_back("nonvanishing tested as a form and at sample points only");
    if (nonzero) cb.notes.push_back(witness);
    if (case_b) {
        Form d1 = base.d(b[0].Idomega), d2 = base.d(b[0].second);
        r.add_flag("hkt.product.case_b.strong", d1.is_zero() && d2.is_zero(), base.str(d1) + "; " + base.str(d2))
            .informational = true;
    }

    HyperHermitian hh = hyper_product(t, base);
    Report direct = check_hyper_direct(hh);
    r.merge(direct, "product.");
    bool dv = direct.holds("hkt.direct");
    bool ds = dv && direct.holds("hkt.direct.strong");
    for (int q = 0; q < 3; ++q) dv = dv && direct.holds("hyper.J" + idx(q) + ".integrable");
    ds = ds && dv;

    auto crossval = [&](const std::string& name, bool red, bool dir) {
        Check c;
        c.name = name;
        if (!hyp) {
            c.informational = true;
            c.notes.push_back("hypotheses fail; comparison not applicable");
        } else {
            c.holds = red == dir;
            if (!c.holds) {
                c.obstruction = "reduced and direct verdicts differ";
                r.mismatch = true;
            }
        }
        r.add(std::move(c));
    };
    crossval("hkt.product.crossval", reduced, dv);
    crossval("hkt.product.crossval.strong", reduced && strong, ds);
    if (hyp && case_a && !(reduced && strong)) {
        r.mismatch = true;
        r.add_flag("hkt.product.crossval.case_a", false, "case (a) holds but the structure is not strong HKT");
    }
    return r;
}

Report check_hkt_bundle(const ContactTriple& t, const Frame& base, const Form& Omega) {
    Report r = validate_triple(t, base);
    bool hyp = true;
    for (int q = 0; q < 3; ++q) {
        const auto& s = t.s[static_cast<std::size_t>(q)];
        hyp = hyp && r.holds("triple." + idx(q) + ".normal");
        bool inv = r.add_equal("hkt.bundle.I" + idx(q) + "_Omega", base, s.I.apply(Omega), Omega).holds;
        hyp = hyp && inv;
    }
    std::array<BaseTerms, 3> b;
    for (int q = 0; q < 3; ++q) b[static_cast<std::size_t>(q)] = base_terms(t.s[static_cast<std::size_t>(q)], base);
    std::array<Form, 3> first, second;
    for (std::size_t q = 0; q < 3; ++q) {
        first[q] = b[q].first;
        second[q] = b[q].second;
    }
    bool e1 = all_equal(r, "hkt.bundle.reduced.first", base, first);
    bool e2 = all_equal(r, "hkt.bundle.reduced.second", base, second);
    bool reduced = hyp && e1 && e2;
    r.add_flag("hkt.bundle.reduced", reduced, "reduced conditions fail");
    bool strong = true;
    for (int q = 0; q < 3; ++q) {
        const auto& bq = b[static_cast<std::size_t>(q)];
        bool a = r.add_zero("hkt.bundle.strong." + idx(q) + ".d_second", base, base.d(bq.second)).holds;
        bool c = r.add_equal("hkt.bundle.strong." + idx(q) + ".d_first", base, base.d(bq.first),
                             wedge(-bq.second + Omega, Omega)).holds;
        strong = strong && a && c;
    }
    r.add_flag("hkt.bundle.reduced.strong", reduced && strong, "strongness conditions fail");

    HyperHermitian hh = hyper_bundle(t, base, Omega);
    Report direct = check_hyper_direct(hh);
    r.merge(direct, "bundle.");
    bool dv = direct.holds("hkt.direct");
    for (int q = 0; q < 3; ++q) dv = dv && direct.holds("hyper.J" + idx(q) + ".integrable");
    bool ds = dv && direct.holds("hkt.direct.strong");
    Form theta = Form::covector(hh.frame.dim() - 1);
    for (int q = 0; q < 3; ++q) {
        const auto& bq = b[static_cast<std::size_t>(q)];
        Form JdF = hh.J[static_cast<std::size_t>(q)].apply(hh.frame.d(hh.F[static_cast<std::size_t>(q)]));
        Form expr = bq.first + wedge(bq.second, theta) - wedge(theta, Omega);
        Check& c = r.add_equal("hkt.bundle.JdF_formula." + idx(q), hh.frame, JdF, expr);
        if (!hyp) c.informational = true;
        else if (!c.holds) r.mismatch = true;
    }
    for (auto [name, red, dir] : {std::tuple{"hkt.bundle.crossval", reduced, dv},
                                  std::tuple{"hkt.bundle.crossval.strong", reduced && strong, ds}}) {
        Check c;
        c.name = name;
        if (!hyp) {
            c.informational = true;
            c.notes.push_back("hypotheses fail; comparison not applicable");
        } else {
            c.holds = red == dir;
            if (!c.holds) {
                c.obstruction = "reduced and direct verdicts differ";
                r.mismatch = true;
            }
        }
        r.add(std::move(c));
    }
    return r;
}

}  // namespace skt
