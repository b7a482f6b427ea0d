#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skt/fixtures.hpp"

using namespace skt;

TEST_CASE("circle bundle over the Heisenberg algebra is SKT") {
    Model m = load_fixture("ex2_9_heisenberg");
    const auto& acm = lookup(m.contact, "qs");
    Form Omega = lookup(m.forms, "Omega");
    Form deta = m.frame.d(acm.eta);
    CHECK(wedge(deta, deta) == -wedge(Omega, Omega));
    CHECK(wedge(deta, deta) == m.parse_form("2*e1^e2^e3^e4"));

    Extension ext = extend_s1_bundle(acm, m.frame, Omega);
    CHECK(ext.frame.dim() == 6);
    CHECK(ext.frame.d_of(ext.slot) == Omega);
    CHECK(ext.frame.names().back() == "theta");
    Form JdF = ext.her.J.apply(ext.frame.d(ext.F));
    CHECK(ext.frame.d(JdF).is_zero());
    CHECK_FALSE(ext.frame.d(ext.F).is_zero());

    Report r = check_skt_bundle(acm, m.frame, Omega);
    CHECK_FALSE(r.mismatch);
    CHECK(r.holds("skt.bundle.reduced"));
    CHECK(r.holds("skt.bundle.direct"));
}

TEST_CASE("bundle curvature must be closed") {
    Model m = load_fixture("ex2_9_heisenberg");
    CHECK_THROWS_AS(extend_s1_bundle(lookup(m.contact, "qs"), m.frame, m.parse_form("e1^e5")), ModelError);
}

TEST_CASE("product and bundle over s_a") {
    Model m = load_fixture("ex2_7_sa");
    const auto& acm = lookup(m.contact, "qs");
    Report p = check_skt_product(acm, m.frame);
    CHECK_FALSE(p.mismatch);
    CHECK(p.holds("skt.product.reduced"));
    CHECK(p.holds("skt.product.direct"));
    Extension ext = product_with_line(acm, m.frame);
    CHECK(ext.frame.d_of(ext.slot).is_zero());
    Form cross = ext.F - fundamental_form(acm);
    bool pairs_eta_dt = cross == wedge(acm.eta, Form::covector(ext.slot)) || cross == wedge(Form::covector(ext.slot), acm.eta);
    CHECK(pairs_eta_dt);
    Report b = check_skt_bundle(acm, m.frame, lookup(m.forms, "Omega"));
    CHECK_FALSE(b.mismatch);
    CHECK(b.holds("skt.bundle.direct"));
}

TEST_CASE("cone over a non-Sasakian quasi-Sasakian structure is not SKT") {
    Model m = load_fixture("ex2_7_sa");
    Report r = check_skt_cone(lookup(m.contact, "qs"), m.frame);
    CHECK_FALSE(r.mismatch);
    CHECK_FALSE(r.holds("skt.cone.direct"));
    CHECK_FALSE(r.holds("skt.cone.reduced"));
    REQUIRE(r.find("skt.cone.direct")->obstruction.has_value());
    CHECK(r.find("skt.cone.direct")->obstruction->find("e1^e2") != std::string::npos);
}

TEST_CASE("cone over a Sasakian structure is Kaehler") {
    Model m = load_fixture("ext_h5_sasakian");
    const auto& acm = lookup(m.contact, "s");
    Extension cone = riemannian_cone(acm, m.frame);
    CHECK(cone.t_var >= 0);
    CHECK(cone.frame.dim() == 6);
    CHECK(cone.frame.d(cone.F).is_zero());
    Report r = check_skt_cone(acm, m.frame);
    CHECK(r.holds("skt.cone.reduced"));
    CHECK(r.holds("skt.cone.direct"));
}

TEST_CASE("three-parameter family has an SKT cone symbolically") {
    Model m = load_fixture("ex3_4_gabc");
    const auto& acm = lookup(m.contact, "n");
    CHECK(check_normal(acm, m.frame).holds("normal"));
    Report r = check_skt_cone(acm, m.frame);
    CHECK_FALSE(r.mismatch);
    CHECK(r.holds("cone.reduced.equation"));
    CHECK(r.holds("skt.cone.reduced"));
    CHECK(r.holds("skt.cone.direct"));
    CHECK(r.holds("cone.crossval"));
}

TEST_CASE("SU(3) product from the SU(2) structure on s") {
    Model m = load_fixture("ex2_6_s");
    const auto& s = lookup(m.su2, "s");
    Form eta = s.eta;
    CHECK(m.frame.d(s.w2) == Scalar(-2) * wedge(s.w3, eta) - Scalar(4) * m.parse_form("e1^e2^e4 - e1^e3^e4"));
    CHECK(m.frame.d(s.w3) == Scalar(2) * wedge(s.w2, eta) + Scalar(4) * m.parse_form("e1^e2^e3 + e2^e3^e4"));
    SU3Assembly a = su3_product_from_su2(s, m.frame);
    CHECK_FALSE(a.report.mismatch);
    CHECK_FALSE(a.report.holds("su3.product.printed.dw2"));
}

TEST_CASE("SU(3) product and cone from s_a and g_b") {
    for (const char* name : {"ex2_7_sa", "ex2_8_gb"}) {
        CAPTURE(name);
        Model m = load_fixture(name);
        const auto& s = lookup(m.su2, "s");
        CHECK(m.frame.d(s.w2) == Scalar(-3) * wedge(s.w3, s.eta));
        CHECK(m.frame.d(s.w3) == Scalar(3) * wedge(s.w2, s.eta));
        SU3Assembly p = su3_product_from_su2(s, m.frame);
        CHECK_FALSE(p.report.mismatch);
        CHECK(p.report.holds("skt_su3.product.printed"));
        CHECK(p.frame.dim() == 6);
        CHECK(validate_su3(p.su3, p.frame).holds("su3.type"));
        SU3Assembly c = su3_cone_from_su2(s, m.frame);
        CHECK_FALSE(c.report.mismatch);
        CHECK(c.t_var >= 0);
    }
}

TEST_CASE("induced SU(2) structure on the hypersurface of the six-dimensional nilmanifold") {
    Model m6 = load_fixture("sec5_1_m6");
    Model n5 = load_fixture("sec5_1_n5");
    Induced ind = induce_hypersurface(lookup(m6.su3, "s"), m6.frame, -6);
    CHECK_FALSE(ind.report.mismatch);
    REQUIRE(ind.has_su2);
    const auto& want = lookup(n5.su2, "s");
    CHECK(ind.su2.eta == want.eta);
    CHECK(ind.su2.w1 == want.w1);
    CHECK(ind.su2.w2 == want.w2);
    CHECK(ind.su2.w3 == want.w3);
    for (int i = 0; i < 5; ++i) CHECK(ind.frame.d_of(i) == n5.frame.d_of(i));
    CHECK(ind.report.holds("hypersurface.skt_condition"));
    CHECK(ind.report.holds("hypersurface.d_w2_eta"));
    CHECK(ind.report.holds("hypersurface.d_w3_eta"));

    // With the printed Psi only w2 comes out with the opposite sign.
    Induced printed = induce_hypersurface(lookup(m6.su3, "printed"), m6.frame, -6);
    REQUIRE(printed.has_su2);
    CHECK(printed.su2.w2 == -want.w2);
    CHECK(printed.su2.w3 == want.w3);
}

TEST_CASE("SU(2) family evolution equations") {
    Model m = load_fixture("ex6_4_family");
    const auto& f = lookup(m.family, "f");
    Report r = check_evolution(f, m.frame);
    CHECK_FALSE(r.mismatch);
    for (const char* c : {"evolution.hypo.w2_eta", "evolution.hypo.w3_eta", "evolution.skt_static", "evolution.skt_flow",
                          "evolution.flow_w2_eta", "evolution.flow_w3_eta", "evolution.oriented.skt_static",
                          "evolution.oriented.skt_flow"}) {
        CAPTURE(c);
        CHECK(r.holds(c));
    }
    SU3Assembly a = assemble_su3_from_family(f, m.frame);
    CHECK_FALSE(a.report.mismatch);
    CHECK(a.frame.dim() == 6);
    CHECK(a.report.holds("family.JdF_formula"));
    CHECK(a.frame.d(a.su3.psi_plus).is_zero());
    CHECK(a.frame.d(a.su3.psi_minus).is_zero());
    Hermitian H = su3_hermitian(a.su3);
    CHECK(a.frame.d(H.J.apply(a.frame.d(a.su3.F))).is_zero());
    CHECK(check_skt(H, a.frame).holds("integrable"));
}

TEST_CASE("perturbed family violates the flow") {
    Model m = load_fixture("ex6_4_perturbed");
    const auto& f = lookup(m.family, "f");
    Report r = check_evolution(f, m.frame);
    CHECK_FALSE(r.mismatch);
    CHECK(r.holds("evolution.hypo.w2_eta"));
    CHECK_FALSE(r.holds("evolution.flow_w2_eta"));
    SU3Assembly a = assemble_su3_from_family(f, m.frame);
    CHECK_FALSE(a.frame.d(a.su3.psi_plus).is_zero());
}

TEST_CASE("emitted extension reparses to the same total space") {
    Model m = load_fixture("ex2_9_heisenberg");
    Command cmd = parse_command("bundle --omega Omega --check skt");
    std::string text = emit_extension(m, cmd);
    Model ext = parse_model(text);
    CHECK(ext.frame.dim() == 6);
    CHECK(parse_model(print_model(ext)).hash() == ext.hash());
    REQUIRE_FALSE(ext.hermitian.empty());
    CHECK(check_skt(ext.hermitian.front().second, ext.frame).holds("skt"));
}
