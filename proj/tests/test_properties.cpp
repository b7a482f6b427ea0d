// Seeded algebraic property suites. Each case count is at least 100.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace testsupport;

namespace {

constexpr int kCases = 120;

}  // namespace

TEST_CASE("scalar field axioms on random rational functions") {
    Rng r(20240601);
    for (int k = 0; k < kCases; ++k) {
        Scalar a = random_scalar(r, true), b = random_scalar(r, true), c = random_scalar(r, true);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Scalar(0));
        CHECK(a + Scalar(0) == a);
        CHECK(a * Scalar(1) == a);
        if (!b.is_zero()) {
            CHECK((a / b) * b == a);
            CHECK(b * b.inverse() == Scalar(1));
        }
        // Normal form is canonical: the same value built two ways prints identically.
        CHECK((a * b + a * c).str() == (a * (c + b)).str());
    }
}

TEST_CASE("polynomial gcd divides both arguments") {
    Rng r(77);
    for (int k = 0; k < kCases; ++k) {
        Scalar f = random_poly(r, true), g = random_poly(r, true), h = random_poly(r, true);
        if (h.is_zero()) continue;
        Poly a = (f * h).num(), b = (g * h).num();
        if (a.is_zero() || b.is_zero()) continue;
        Poly d = gcd(a, b);
        CHECK_NOTHROW(a.exact_div(d));
        CHECK_NOTHROW(b.exact_div(d));
        CHECK_NOTHROW(d.exact_div(gcd(h.num(), h.num())));
    }
}

TEST_CASE("wedge agrees with the shuffle formula, is associative and graded commutative") {
    Rng r(31337);
    for (int k = 0; k < kCases; ++k) {
        int n = r.range(3, 7);
        int p = r.range(0, 3), q = r.range(0, std::min(3, n - p)), s = r.range(0, std::max(0, std::min(2, n - p - q)));
        Form a = random_form(r, n, p, true), b = random_form(r, n, q, true), c = random_form(r, n, s, true);
        CAPTURE(k);
        CHECK(wedge(a, b) == oracle_wedge(n, a, b));
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
        Scalar sign((p * q) % 2 == 0 ? 1 : -1);
        CHECK(wedge(a, b) == sign * wedge(b, a));
        Form b2 = random_form(r, n, q, true);
        CHECK(wedge(a, b + b2) == wedge(a, b) + wedge(a, b2));
        if (p % 2 == 1) CHECK(wedge(a, a).is_zero());
    }
}

TEST_CASE("d is an antiderivation with d^2 = 0 and matches the invariant formula") {
    Rng r(4242);
    for (int k = 0; k < kCases; ++k) {
        int n = r.range(3, 6);
        bool functions = k % 2 == 0;
        Frame f = random_frame(r, n, true, functions);
        int p = r.range(0, 2), q = r.range(0, std::min(2, n - p - 1));
        Form a = functions ? random_function_form(r, n, p) : random_form(r, n, p, true);
        Form b = functions ? random_function_form(r, n, q) : random_form(r, n, q, true);
        CAPTURE(k);
        CHECK(d_squared_defects(f).empty());
        CHECK(f.d(a) == oracle_d(f, a));
        Scalar sign(p % 2 == 0 ? 1 : -1);
        CHECK(f.d(wedge(a, b)) == wedge(f.d(a), b) + sign * wedge(a, f.d(b)));
        CHECK(f.d(f.d(a)).is_zero());
        Scalar g = functions ? random_function_coeff(r) : random_scalar(r, true);
        CHECK(f.d(g * a) == wedge(f.scalar_d(g), a) + g * f.d(a));
    }
}

TEST_CASE("endomorphism action is an algebra morphism compatible with composition") {
    Rng r(99);
    for (int k = 0; k < kCases; ++k) {
        int n = r.range(2, 6);
        Endo S = random_endo(r, n), T = random_endo(r, n);
        int p = r.range(0, std::min(3, n)), q = r.range(0, std::min(2, n - p));
        Form a = random_form(r, n, p, true), b = random_form(r, n, q, true);
        CAPTURE(k);
        CHECK(T.apply(wedge(a, b)) == wedge(T.apply(a), T.apply(b)));
        // Covector action is pullback: (S T)^* = T^* S^* in matrix form.
        CHECK((S * T).apply(a) == T.apply(S.apply(a)));
        VectorField X = random_vector(r, n, false);
        CHECK((S * T).apply(X) == S.apply(T.apply(X)));
        Form alpha = random_form(r, n, 1, true);
        CHECK(pair(T.apply(alpha), X) == pair(alpha, T.apply(X)));
    }
}

TEST_CASE("Hodge star squares to a sign and reproduces the inner product") {
    Rng r(2718);
    for (int k = 0; k < kCases; ++k) {
        int n = r.range(2, 7);
        int p = r.range(0, n);
        Form a = random_form(r, n, p, true), b = random_form(r, n, p, true);
        std::vector<int> orient;
        for (int i = 0; i < n; ++i) orient.push_back(i);
        Matrix g = Matrix::identity(n);
        Form sa = hodge_star(a, g, orient);
        Scalar sign((p * (n - p)) % 2 == 0 ? 1 : -1);
        CAPTURE(k);
        CHECK(hodge_star(sa, g, orient) == sign * a);
        Scalar inner(0);
        for (const auto& [m, c] : a.terms()) inner += c * b.coeff(m);
        CHECK(wedge(b, sa) == Form::basis((Mask{1} << n) - 1, inner));
    }
}

TEST_CASE("Cartan formula agrees with the invariant Lie derivative") {
    Rng r(161803);
    for (int k = 0; k < kCases; ++k) {
        int n = r.range(3, 5);
        Frame f = random_frame(r, n, k % 3 == 0, true);
        int p = r.range(1, 3);
        Form a = random_function_form(r, n, p);
        VectorField X = random_vector(r, n, k % 2 == 0);
        Form expected = oracle_lie(f, X, a);
        CAPTURE(k);
        CHECK(lie_derivative(f, X, a) == expected);
        CHECK(lie_derivative(f, X, f.d(a)) == f.d(lie_derivative(f, X, a)));
    }
}
