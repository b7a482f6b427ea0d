#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skt/fixtures.hpp"

using namespace skt;

TEST_CASE("corrected triple on su(2) x R^4 satisfies the quaternion relations") {
    Model m = load_fixture("ex7_3_su2_r4");
    const auto& t = lookup(m.triple, "t");
    Report r = validate_triple(t, m.frame);
    CHECK(r.all_hold());
    for (const auto& s : t.s) CHECK(check_normal(s, m.frame).holds("normal"));
    // I1 I2 = I3 on the horizontal part, checked on covectors: (I1 I2)* = I2* I1*.
    const Endo& I1 = t.s[0].I;
    const Endo& I2 = t.s[1].I;
    const Endo& I3 = t.s[2].I;
    for (int j = 0; j < 4; ++j) CHECK((I1 * I2).apply(Form::covector(j)) == I3.apply(Form::covector(j)));
}

TEST_CASE("printed triple breaks the quaternion relation") {
    Model m = load_fixture("ex7_3_su2_r4");
    Report r = validate_triple(lookup(m.triple, "printed"), m.frame);
    CHECK_FALSE(r.all_hold());
    HyperHermitian hh = hyper_product(lookup(m.triple, "printed"), m.frame);
    CHECK_FALSE(check_hyper_direct(hh).holds("hyper.J1J2_eq_J3"));
}

TEST_CASE("product of the corrected triple is strong HKT by both paths") {
    Model m = load_fixture("ex7_3_su2_r4");
    const auto& t = lookup(m.triple, "t");
    Report r = check_hkt_product(t, m.frame);
    CHECK_FALSE(r.mismatch);
    CHECK(r.holds("hkt.product.case_a"));
    CHECK(r.holds("hkt.product.reduced"));
    CHECK(r.holds("hkt.product.reduced.strong"));

    HyperHermitian hh = hyper_product(t, m.frame);
    CHECK(hh.frame.dim() == 8);
    Report d = check_hyper_direct(hh);
    CHECK(d.holds("hyper.J1J2_eq_J3"));
    CHECK(d.holds("hkt.direct"));
    CHECK(d.holds("hkt.direct.strong"));
    Form T1 = hh.J[0].apply(hh.frame.d(hh.F[0]));
    for (int r2 = 1; r2 < 3; ++r2)
        CHECK(hh.J[static_cast<std::size_t>(r2)].apply(hh.frame.d(hh.F[static_cast<std::size_t>(r2)])) == T1);
    CHECK(hh.frame.d(T1).is_zero());
    CHECK_FALSE(T1.is_zero());
    for (int k = 0; k < 3; ++k) {
        const Endo& J = hh.J[static_cast<std::size_t>(k)];
        CHECK(J * J == -Endo::identity(8));
        for (const auto& [ij, N] : nijenhuis_table(J, hh.frame)) CHECK(N.is_zero());
    }
}

TEST_CASE("hyper-Hermitian bundle with a flat connection agrees with the reduced criterion") {
    Model m = load_fixture("ex7_3_su2_r4");
    const auto& t = lookup(m.triple, "t");
    Report r = check_hkt_bundle(t, m.frame, Form(2));
    CHECK_FALSE(r.mismatch);
    CHECK(r.holds("hkt.bundle.crossval"));
}
