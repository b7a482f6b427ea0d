#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skt/connections.hpp"
#include "skt/fixtures.hpp"

using namespace skt;

namespace {

std::vector<int> standard_orientation(int n) {
    std::vector<int> o;
    for (int i = 0; i < n; ++i) o.push_back(i);
    return o;
}

}  // namespace

TEST_CASE("Levi-Civita connection of a flat torus vanishes") {
    Frame f({"e1", "e2", "e3"});
    ConnectionForms lc = levi_civita(f, Matrix::identity(3));
    for (const auto& G : lc.Gamma) CHECK(G.is_zero());
    CurvatureForms R = curvature(lc, f);
    for (const auto& row : R.R)
        for (const auto& form : row) CHECK(form.is_zero());
}

TEST_CASE("Levi-Civita is torsion-free and metric on nonabelian algebras") {
    for (const char* name : {"ex2_6_s", "ex2_9_heisenberg", "ex7_3_su2_r4"}) {
        CAPTURE(name);
        Model m = load_fixture(name);
        int n = m.frame.dim();
        ConnectionForms lc = levi_civita(m.frame, Matrix::identity(n));
        CHECK(torsion_form(lc, m.frame).is_zero());
        for (const auto& r : structure_residual(lc, m.frame)) CHECK(r.is_zero());
        for (const auto& G : lc.Gamma) CHECK(G.transpose() == -G);
    }
}

TEST_CASE("Levi-Civita rejects non-orthonormal or varying frames") {
    Model m = load_fixture("ex6_4_beta");
    CHECK_THROWS_AS(levi_civita(m.frame, Matrix::identity(6)), ModelError);
    Frame f({"e1", "e2"});
    CHECK_THROWS_AS(levi_civita(f, Matrix::diag({Scalar(1), Scalar(2)})), ModelError);
}

TEST_CASE("curvature forms agree with the brute-force curvature operator") {
    for (const char* name : {"ex2_9_heisenberg", "ex2_8_gb", "ex2_10_alpha"}) {
        CAPTURE(name);
        Model m = load_fixture(name);
        int n = m.frame.dim();
        ConnectionForms lc = levi_civita(m.frame, Matrix::identity(n));
        CurvatureForms R = curvature(lc, m.frame);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) CHECK(R.endo(a, b) == curvature_bruteforce(lc, m.frame, a, b));
    }
}

TEST_CASE("Bismut connection equals Levi-Civita on a Kaehler algebra") {
    // aff(R) x aff(R): d e2 = e1^e2, d e4 = e3^e4 with J e1 = e2, J e3 = e4.
    Model m = parse_model(
        "frame e1 e2 e3 e4\nd e2 = e1^e2\nd e4 = e3^e4\n"
        "endo J vector: e1 -> e2, e2 -> -e1, e3 -> e4, e4 -> -e3\nmetric h = orthonormal\nhermitian H: J=J h=h\n");
    const auto& H = lookup(m.hermitian, "H");
    CHECK(m.frame.d(fundamental_form(H)).is_zero());
    BismutResult b = bismut(H, m.frame);
    CHECK(b.torsion.is_zero());
    ConnectionForms lc = levi_civita(m.frame, Matrix::identity(4));
    for (int i = 0; i < 4; ++i) CHECK(b.conn.Gamma[static_cast<std::size_t>(i)] == lc.Gamma[static_cast<std::size_t>(i)]);
}

TEST_CASE("Bismut connection of the SKT structure over k3") {
    Model m = load_fixture("ex2_10_alpha");
    const auto& H = lookup(m.hermitian, "H");
    BismutResult b = bismut(H, m.frame);
    CHECK(b.report.all_hold());
    CHECK(b.torsion == m.parse_form("lambda*a1^a2^(a5 + a6) + mu*a3^a4^(a5 - a6)"));
    CHECK(b.torsion == Scalar(b.sign) * torsion_form(H, m.frame));
    CHECK(m.frame.d(b.torsion).is_zero());
    Form starT = hodge_star(b.torsion, Matrix::identity(6), standard_orientation(6));
    CHECK(starT == m.parse_form("mu*a1^a2^(a5 + a6) - lambda*a3^a4^(a5 - a6)"));
    CHECK(m.frame.d(starT).is_zero());

    CurvatureForms R = curvature(b.conn, m.frame);
    CHECK(R.at(0, 1) == m.parse_form("-2*lambda^2*a1^a2"));
    CHECK(R.at(2, 3) == m.parse_form("-2*mu^2*a3^a4"));
    for (int a = 0; a < 6; ++a)
        for (int c = a + 1; c < 6; ++c) CHECK(R.endo(a, c) == curvature_bruteforce(b.conn, m.frame, a, c));

    for (const char* p : {"a5", "a6", "a1^a2", "a3^a4"}) {
        CAPTURE(p);
        CHECK(parallel_check(b.conn, m.frame, p, m.parse_form(p)).holds);
    }
    CHECK(parallel_check(b.conn, m.frame, "T", b.torsion).holds);
    CHECK(parallel_check(b.conn, m.frame, "J", H.J).holds);
    for (const char* p : {"a1", "a2", "a3", "a4"}) {
        CAPTURE(p);
        Check c = parallel_check(b.conn, m.frame, p, m.parse_form(p));
        CHECK_FALSE(c.holds);
        CHECK(c.obstruction.has_value());
    }

    CurvatureSpan span = curvature_span(b.conn, R, m.frame);
    CHECK(span.dimension == 2);
    CHECK(span.commuting);
    CHECK(span.curvature_parallel);
}

TEST_CASE("contact connection on a Sasakian structure") {
    Model m = load_fixture("ext_h5_sasakian");
    ContactConnectionResult c = contact_connection(lookup(m.contact, "s"), m.frame);
    CHECK(c.report.holds("contact.I_parallel"));
    CHECK(c.report.holds("contact.eta_parallel"));
    // For a Sasakian structure the torsion is eta ^ d eta.
    Form eta = m.parse_form("e5");
    CHECK(c.torsion == wedge(eta, m.frame.d(eta)));
}
