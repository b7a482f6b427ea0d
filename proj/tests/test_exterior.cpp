#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skt/fixtures.hpp"

using namespace skt;

namespace {

Form e(std::initializer_list<int> slots) {
    Form f = Form::scalar(Scalar(1));
    for (int s : slots) f = wedge(f, Form::covector(s - 1));
    return f;
}

}  // namespace

TEST_CASE("wedge signs and printing") {
    Frame f({"e1", "e2", "e3", "e4"});
    CHECK(wedge(e({2}), e({1})) == -e({1, 2}));
    CHECK(wedge(e({1}), e({1})).is_zero());
    CHECK(wedge(e({3, 4}), e({1, 2})) == e({1, 2, 3, 4}));
    CHECK(wedge(e({2, 4}), e({1, 3})) == -e({1, 2, 3, 4}));
    CHECK(f.str(e({1, 3}) - Scalar::rational(1, 2) * e({2, 4})) == "e1^e3 - 1/2*e2^e4");
    CHECK(f.str(Form(2)) == "0");
    CHECK(wedge_sign(0b0010, 0b0001) == -1);
    CHECK(wedge_sign(0b0011, 0b0010) == 0);
}

TEST_CASE("d on the Heisenberg algebra") {
    Model m = parse_model("frame e1 e2 e3 e4 e5\nd e5 = e1^e2 + e3^e4\n");
    const Frame& f = m.frame;
    CHECK(f.d(e({5})) == e({1, 2}) + e({3, 4}));
    CHECK(f.d(e({1, 5})) == -e({1, 3, 4}));
    CHECK(f.d(e({5}) + e({1})) == f.d(e({5})));
    CHECK(f.d(f.d(e({5}))).is_zero());
    CHECK(wedge(f.d(e({5})), f.d(e({5}))) == Scalar(2) * e({1, 2, 3, 4}));
}

TEST_CASE("d with a function coefficient") {
    Model m = load_fixture("ex6_4_beta");
    Form wb1 = m.parse_form("w*b1");
    // d w = 1/2 w^-2 b6 and d b1 = -1/2 w^-3 b1^b6.
    CHECK(m.frame.d(wb1) == m.parse_form("-w^-2*b1^b6"));
    CHECK(m.frame.scalar_d(Scalar::symbol("w").pow(3)) == m.parse_form("3/2*b6"));
    CHECK(d_squared_defects(m.frame).empty());
}

TEST_CASE("d^2 defects name the failing covector") {
    Frame f({"e1", "e2", "e3", "e4"});
    f.set_d(3, e({1, 2}));
    f.set_d(0, e({3, 4}));
    auto defects = d_squared_defects(f);
    // d(d e1) = -e3^e1^e2 and d(d e4) = e3^e4^e2.
    REQUIRE(defects.size() == 2);
    CHECK(defects[0].first == "e1");
    CHECK(defects[0].second == -e({1, 2, 3}));
    CHECK(defects[1].first == "e4");
    CHECK(defects[1].second == e({2, 3, 4}));
    CHECK_THROWS_AS(parse_model("frame e1 e2 e3 e4\nd e4 = e1^e2\nd e1 = e3^e4\n"), ModelError);
}

TEST_CASE("contraction and evaluation") {
    VectorField X1 = VectorField::basis(3, 0), X2 = VectorField::basis(3, 1);
    CHECK(contract(X1, e({1, 2})) == e({2}));
    CHECK(contract(X2, e({1, 2})) == -e({1}));
    CHECK(contract(X1, e({2, 3})).is_zero());
    CHECK(evaluate(e({1, 2}), {X1, X2}) == Scalar(1));
    CHECK(evaluate(e({1, 2}), {X2, X1}) == Scalar(-1));
    CHECK(pair(Scalar(3) * e({2}), Scalar(2) * X2) == Scalar(6));
}

TEST_CASE("Hodge star on orthonormal coframes") {
    Matrix g4 = Matrix::identity(4), g3 = Matrix::identity(3);
    CHECK(hodge_star(e({1, 2}), g4, {0, 1, 2, 3}) == e({3, 4}));
    CHECK(hodge_star(e({1, 3}), g4, {0, 1, 2, 3}) == -e({2, 4}));
    CHECK(hodge_star(e({1}), g3, {0, 1, 2}) == e({2, 3}));
    CHECK(hodge_star(e({2}), g3, {0, 1, 2}) == -e({1, 3}));
    CHECK(hodge_star(Form::scalar(Scalar(1)), g3, {0, 1, 2}) == e({1, 2, 3}));
    // Reversing the orientation flips the sign.
    CHECK(hodge_star(e({1}), g3, {1, 0, 2}) == -e({2, 3}));
}

TEST_CASE("pullback to a coordinate hypersurface renumbers slots") {
    CHECK(pullback_hypersurface(e({1, 2}) + e({3, 6}), 5) == e({1, 2}));
    CHECK(pullback_hypersurface(e({4, 6}) + e({1, 5}), 2) == e({3, 5}) + e({1, 4}));
    CHECK(lift_from_hypersurface(e({1, 4}), 2) == e({1, 5}));
    Model m = load_fixture("sec5_1_m6");
    Frame h = hypersurface_frame(m.frame, 5);
    CHECK(h.dim() == 5);
    CHECK(h.d(e({5})) == e({1, 4}));
}

TEST_CASE("linear change of coframe") {
    Model m = parse_model("frame e1 e2 e3\nd e3 = e1^e2\n");
    Matrix M(3, 3);
    M(0, 0) = Scalar(1);
    M(1, 0) = Scalar(1);
    M(1, 1) = Scalar(1);
    M(2, 2) = Scalar(2);
    CoframeChange c = change_coframe(m.frame, M, {"f1", "f2", "f3"});
    CHECK(c.frame.d(e({3})) == Scalar(2) * e({1, 2}));
    CHECK(c.frame.d(e({1})).is_zero());
    CHECK(c.to_new(e({2})) == e({2}) - e({1}));
    CHECK(c.to_old(c.to_new(e({1, 3}))) == e({1, 3}));
    CHECK(c.vector_to_old(c.vector_to_new(VectorField::basis(3, 1))) == VectorField::basis(3, 1));
}

TEST_CASE("Lie derivative and brackets on the Heisenberg algebra") {
    Model m = parse_model("frame e1 e2 e3\nd e3 = e1^e2\n");
    const Frame& f = m.frame;
    CHECK(frame_bracket(f, 0, 1) == Scalar(-1) * VectorField::basis(3, 2));
    CHECK(lie_derivative(f, VectorField::basis(3, 0), e({3})) == e({2}));
    CHECK(lie_derivative(f, VectorField::basis(3, 2), e({3})).is_zero());
}

TEST_CASE("endomorphism covector and vector actions") {
    Model m = load_fixture("ex2_9_heisenberg");
    const Endo& I = lookup(m.endos, "I");
    CHECK(I.apply(e({1})) == -e({2}));
    CHECK(I.apply(e({1, 2})) == e({1, 2}));
    CHECK(I.apply(e({1, 3})) == e({2, 4}));
    CHECK(I.apply(e({5})).is_zero());
    // The vector action is the transpose reading of the same matrix.
    CHECK(I.apply(VectorField::basis(5, 1)) == Scalar(-1) * VectorField::basis(5, 0));
    CHECK(compose(e({2}), I) == I.apply(e({2})));
}
