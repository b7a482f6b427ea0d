#include "skt/random_models.hpp"

#include "skt/fixtures.hpp"

#include <algorithm>
#include <random>

namespace skt {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    int coef() { return std::uniform_int_distribution<int>(-2, 2)(rng); }
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
    bool coin() { return pick(2) == 1; }
};

Form e(int i, int j) { return Form::basis((Mask{1} << i) | (Mask{1} << j)); }

std::vector<std::string> names(int n) {
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back("e" + std::to_string(i));
    return v;
}

// Random 2-form on the given closed slots.
Form random_two_form(Gen& g, const std::vector<int>& slots) {
    Form f(2);
    for (std::size_t a = 0; a < slots.size(); ++a)
        for (std::size_t b = a + 1; b < slots.size(); ++b) f += Scalar(g.coef()) * e(slots[a], slots[b]);
    return f;
}

AlmostContactMetric standard_acm(int n) {
    AlmostContactMetric acm;
    Matrix A(n, n);
    for (int i = 0; i + 1 < n; i += 2) {
        A(i, i + 1) = Scalar(-1);
        A(i + 1, i) = Scalar(1);
    }
    acm.I = Endo(A);
    acm.eta = Form::covector(n - 1);
    acm.g = Matrix::identity(n);
    acm.xi = VectorField::basis(n, n - 1);
    return acm;
}

SU2Structure standard_su2() {
    SU2Structure s;
    s.eta = Form::covector(4);
    s.w1 = -e(0, 1) - e(2, 3);
    s.w2 = -e(0, 2) + e(1, 3);
    s.w3 = -e(0, 3) - e(1, 2);
    s.g = Matrix::identity(5);
    return s;
}

RandomCase three_dim(Gen& g, int k) {
    RandomCase c;
    c.label = std::to_string(k) + ".dim3";
    c.frame = Frame(names(3));
    c.frame.set_d(2, Scalar(g.coef()) * e(0, 1));
    c.acm = standard_acm(3);
    c.Omega = Scalar(g.coef()) * e(0, 1);
    return c;
}

RandomCase heisenberg_type(Gen& g, int k) {
    RandomCase c;
    c.label = std::to_string(k) + ".contact_type";
    c.frame = Frame(names(5));
    // I-invariant 2-forms on span(e1..e4) keep the structure normal.
    Form d5 = Scalar(g.coef()) * e(0, 1) + Scalar(g.coef()) * e(2, 3) + Scalar(g.coef()) * (e(0, 2) + e(1, 3)) +
              Scalar(g.coef()) * (e(0, 3) - e(1, 2));
    if (g.coin()) d5 += Scalar(g.coef()) * e(g.pick(2), 2 + g.pick(2));
    c.frame.set_d(4, d5);
    c.acm = standard_acm(5);
    c.Omega = random_two_form(g, {0, 1, 2, 3});
    c.su2 = standard_su2();
    return c;
}

RandomCase two_step(Gen& g, int k) {
    RandomCase c;
    c.label = std::to_string(k) + ".two_step";
    c.frame = Frame(names(5));
    c.frame.set_d(3, random_two_form(g, {0, 1, 2}));
    c.frame.set_d(4, random_two_form(g, {0, 1, 2}));
    c.acm = standard_acm(5);
    c.Omega = random_two_form(g, {0, 1, 2}) + Scalar(g.coef()) * c.frame.d_of(3);
    c.su2 = standard_su2();
    return c;
}

RandomCase hypersurface(Gen& g, int k) {
    RandomCase c;
    c.label = std::to_string(k) + ".hypersurface";
    c.frame = Frame(names(6));
    c.frame.set_d(3, random_two_form(g, {0, 1, 2, 5}));
    c.frame.set_d(4, random_two_form(g, {0, 1, 2, 5}));
    SU3Structure s;
    s.F = e(0, 1) + e(2, 3) + e(4, 5);
    // (e1 + i e2)(e3 + i e4)(e5 + i e6)
    auto w3 = [](int a, int b, int c) { return Form::basis((Mask{1} << a) | (Mask{1} << b) | (Mask{1} << c)); };
    s.psi_plus = w3(0, 2, 4) - w3(1, 3, 4) - w3(0, 3, 5) - w3(1, 2, 5);
    s.psi_minus = w3(1, 2, 4) + w3(0, 3, 4) + w3(0, 2, 5) - w3(1, 3, 5);
    s.h = Matrix::identity(6);
    c.su3 = s;
    c.normal = g.coin() ? 5 : -6;
    return c;
}

SamplePoint integer_point(Gen& g, const Frame& f, const std::vector<std::string>& nonzero) {
    SamplePoint p;
    for (const auto& s : f.symbols()) {
        int v = g.coef();
        bool must = std::find(nonzero.begin(), nonzero.end(), s.name) != nonzero.end();
        if (s.name == "lambda" || s.name == "mu") v = -1 - g.pick(2);
        else if (must && v == 0) v = 1;
        p[s.var] = v;
    }
    return p;
}

RandomCase from_fixture(Gen& g, int k) {
    static const std::vector<std::pair<std::string, std::string>> pool = {
        {"ex2_6_s", "qs"},           {"ex2_7_sa", "qs"},  {"ex2_8_gb", "qs"},       {"ex2_9_heisenberg", "qs"},
        {"ex2_10_k3", "sasakian"},   {"ex3_4_gabc", "n"}, {"ext_h5_sasakian", "s"}, {"ext_flat_r5", "s"},
    };
    const auto& [fname, sname] = pool[u(g.pick(static_cast<int>(pool.size())))];
    Model m = load_fixture(fname);
    SamplePoint p = integer_point(g, m.frame, {"a", "b"});
    auto sub = [&](const Form& f) { return f.map_coeffs([&](const Scalar& s) { return s.substitute(p); }); };
    auto subm = [&](const Matrix& a) {
        Matrix r = a;
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).substitute(p);
        return r;
    };
    RandomCase c;
    c.label = std::to_string(k) + "." + fname;
    c.frame = Frame(m.frame.names());
    for (int i = 0; i < m.frame.dim(); ++i) c.frame.set_d(i, sub(m.frame.d_of(i)));
    AlmostContactMetric acm = lookup(m.contact, sname);
    acm.I = Endo(subm(acm.I.matrix()));
    acm.g = subm(acm.g);
    acm.eta = sub(acm.eta);
    for (auto& x : acm.xi.c) x = x.substitute(p);
    c.acm = acm;
    for (const auto& [n, f] : m.forms)
        if (n == "Omega") c.Omega = sub(f);
    if (c.frame.dim() == 5 && acm.g == Matrix::identity(5) && acm.I == standard_acm(5).I) c.su2 = standard_su2();
    return c;
}

}  // namespace

std::vector<RandomCase> random_crossval_cases(std::uint64_t seed, int count) {
    Gen g(seed);
    std::vector<RandomCase> out;
    for (int k = 0; k < count; ++k) {
        switch (k % 5) {
            case 0: out.push_back(k % 10 == 0 ? three_dim(g, k) : from_fixture(g, k)); break;
            case 1: out.push_back(heisenberg_type(g, k)); break;
            case 2: out.push_back(two_step(g, k)); break;
            case 3: out.push_back(hypersurface(g, k)); break;
            default: out.push_back(from_fixture(g, k)); break;
        }
    }
    return out;
}

Report crossval_report(const RandomCase& c) {
    Report r;
    r.command = "crossval " + c.label;
    if (c.acm) {
        r.merge(check_skt_product(*c.acm, c.frame), "product.");
        r.merge(check_skt_cone(*c.acm, c.frame), "cone.");
        if (c.frame.d(c.Omega).is_zero()) r.merge(check_skt_bundle(*c.acm, c.frame, c.Omega), "bundle.");
    }
    if (c.su2) {
        r.merge(su3_product_from_su2(*c.su2, c.frame).report, "su3_product.");
        r.merge(su3_cone_from_su2(*c.su2, c.frame).report, "su3_cone.");
        r.merge(assemble_su3_from_family(*c.su2, c.frame).report, "family.");
    }
    if (c.su3) {
        Induced ind = induce_hypersurface(*c.su3, c.frame, c.normal);
        r.merge(ind.report, "induce.");
    }
    return r;
}

}  // namespace skt
