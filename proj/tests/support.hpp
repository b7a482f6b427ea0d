// Seeded generators and test-side oracles that do not go through the
// library's own wedge, d or contraction code.
#pragma once

#include "skt/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using namespace skt;

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}
    int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }
    int pick(int n) { return range(0, n - 1); }
    bool coin() { return pick(2) == 1; }
    mpq_class rational() {
        mpq_class v(range(-4, 4), range(1, 3));
        v.canonicalize();
        return v;
    }
};

inline std::vector<std::string> coframe_names(int n, const std::string& stem = "e") {
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back(stem + std::to_string(i));
    return v;
}

// Parameters used by the generators; interned once.
inline Scalar sym_p() { return Scalar::symbol("p"); }
inline Scalar sym_q() { return Scalar::symbol("q"); }
// A non-constant function with d w = w^2 e1 (e1 closed in every generated frame).
inline Scalar sym_w() { return Scalar::symbol("w"); }

inline Scalar random_poly(Rng& r, bool symbolic) {
    Scalar s(r.rational());
    if (!symbolic) return s;
    if (r.coin()) s += Scalar(r.range(-2, 2)) * sym_p();
    if (r.coin()) s += Scalar(r.range(-2, 2)) * sym_q() * sym_p();
    if (r.pick(3) == 0) s += Scalar(r.range(-1, 1)) * sym_q().pow(2);
    return s;
}

inline Scalar random_scalar(Rng& r, bool symbolic) {
    Scalar n = random_poly(r, symbolic);
    if (!symbolic || r.coin()) return n;
    Scalar d = random_poly(r, true);
    if (d.is_zero()) return n;
    return n / d;
}

inline Form random_form(Rng& r, int n, int deg, bool symbolic, int density = 3) {
    Form f(deg);
    std::vector<int> slots(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) slots[static_cast<std::size_t>(i)] = i;
    for (int t = 0; t < density; ++t) {
        std::shuffle(slots.begin(), slots.end(), r.g);
        Mask m = 0;
        for (int k = 0; k < deg; ++k) m |= Mask{1} << slots[static_cast<std::size_t>(k)];
        f += Form::basis(m, random_scalar(r, symbolic));
    }
    return f;
}

// Two-step frame: the first `closed` covectors are closed, the others have
// differentials in the span of wedges of closed covectors, so d^2 = 0. With
// `with_function`, the symbol w has d w = w^2 e1.
inline Frame random_frame(Rng& r, int n, bool symbolic, bool with_function) {
    Frame f(coframe_names(n));
    int closed = std::max(2, n / 2 + r.pick(2));
    closed = std::min(closed, n);
    for (int k = closed; k < n; ++k) {
        Form d(2);
        for (int i = 0; i < closed; ++i)
            for (int j = i + 1; j < closed; ++j)
                if (r.pick(3) == 0) d += Form::basis((Mask{1} << i) | (Mask{1} << j), random_poly(r, symbolic));
        f.set_d(k, d);
    }
    for (const char* name : {"p", "q"}) {
        SymbolInfo s;
        s.var = Symbols::intern(name);
        s.name = name;
        f.declare_symbol(s);
    }
    if (with_function) {
        SymbolInfo s;
        s.var = Symbols::intern("w");
        s.name = "w";
        s.parameter = false;
        s.d = Form::covector(0, sym_w().pow(2));
        f.declare_symbol(s);
    }
    return f;
}

// Component a(e_{i1}, ..., e_{ik}) for an arbitrary index list.
inline Scalar component(const Form& a, std::vector<int> idx) {
    int sign = 1;
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            if (idx[i] == idx[j]) return Scalar(0);
            if (idx[i] > idx[j]) sign = -sign;
        }
    std::sort(idx.begin(), idx.end());
    Mask m = 0;
    for (int i : idx) m |= Mask{1} << i;
    return Scalar(sign) * a.coeff(m);
}

inline Form from_components(int n, int deg, const std::function<Scalar(const std::vector<int>&)>& comp) {
    Form out(deg);
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
        if (popcount(m) != deg) continue;
        std::vector<int> idx;
        for (int i = 0; i < n; ++i)
            if (m & (Mask{1} << i)) idx.push_back(i);
        out.add_term(m, comp(idx));
    }
    return out;
}

// Wedge through the shuffle formula on components.
inline Form oracle_wedge(int n, const Form& a, const Form& b) {
    int p = a.degree(), q = b.degree();
    return from_components(n, p + q, [&](const std::vector<int>& idx) {
        Scalar s(0);
        int k = p + q;
        for (Mask sub = 0; sub < (Mask{1} << k); ++sub) {
            if (popcount(sub) != p) continue;
            std::vector<int> first, second, perm;
            for (int i = 0; i < k; ++i) (sub & (Mask{1} << i) ? first : second).push_back(idx[static_cast<std::size_t>(i)]);
            for (int i = 0; i < k; ++i)
                if (sub & (Mask{1} << i)) perm.push_back(i);
            for (int i = 0; i < k; ++i)
                if (!(sub & (Mask{1} << i))) perm.push_back(i);
            int sign = 1;
            for (std::size_t i = 0; i < perm.size(); ++i)
                for (std::size_t j = i + 1; j < perm.size(); ++j)
                    if (perm[i] > perm[j]) sign = -sign;
            s += Scalar(sign) * component(a, first) * component(b, second);
        }
        return s;
    });
}

// Structure constants read directly from the declared differentials:
// [e_i, e_j] = -sum_k de^k(e_i, e_j) e_k.
inline Scalar bracket_coeff(const Frame& f, int i, int j, int k) { return -component(f.d_of(k), {i, j}); }

// e_a(s) through partial derivatives and the declared symbol differentials.
inline Scalar derive_along(const Frame& f, int a, const Scalar& s) {
    Scalar out(0);
    for (int v : s.vars()) {
        const SymbolInfo* info = f.symbol(v);
        if (!info || !info->d) continue;
        out += s.derivative(v) * component(*info->d, {a});
    }
    return out;
}

// Invariant formula for d on basis vectors.
inline Form oracle_d(const Frame& f, const Form& a) {
    int n = f.dim(), k = a.degree();
    return from_components(n, k + 1, [&](const std::vector<int>& idx) {
        Scalar s(0);
        for (int i = 0; i <= k; ++i) {
            std::vector<int> rest;
            for (int j = 0; j <= k; ++j)
                if (j != i) rest.push_back(idx[static_cast<std::size_t>(j)]);
            Scalar sign(i % 2 == 0 ? 1 : -1);
            s += sign * derive_along(f, idx[static_cast<std::size_t>(i)], component(a, rest));
        }
        for (int i = 0; i <= k; ++i)
            for (int j = i + 1; j <= k; ++j) {
                std::vector<int> rest;
                for (int l = 0; l <= k; ++l)
                    if (l != i && l != j) rest.push_back(idx[static_cast<std::size_t>(l)]);
                Scalar sign((i + j) % 2 == 0 ? 1 : -1);
                for (int m = 0; m < n; ++m) {
                    Scalar c = bracket_coeff(f, idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)], m);
                    if (c.is_zero()) continue;
                    std::vector<int> args{m};
                    args.insert(args.end(), rest.begin(), rest.end());
                    s += sign * c * component(a, args);
                }
            }
        return s;
    });
}

// Invariant formula: (L_X a)(Y..) = X(a(Y..)) - sum_i a(.., [X, Y_i], ..).
inline Form oracle_lie(const Frame& f, const VectorField& X, const Form& a) {
    int n = f.dim();
    auto x = [&](int c) -> const Scalar& { return X.c[static_cast<std::size_t>(c)]; };
    return from_components(n, a.degree(), [&](const std::vector<int>& idx) {
        Scalar s(0);
        for (int c = 0; c < n; ++c)
            if (!x(c).is_zero()) s += x(c) * derive_along(f, c, component(a, idx));
        for (std::size_t i = 0; i < idx.size(); ++i) {
            int b = idx[i];
            for (int m = 0; m < n; ++m) {
                // [X, e_b]^m = sum_c x^c [e_c, e_b]^m - e_b(x^m)
                Scalar br = -derive_along(f, b, x(m));
                for (int c = 0; c < n; ++c)
                    if (!x(c).is_zero()) br += x(c) * bracket_coeff(f, c, b, m);
                if (br.is_zero()) continue;
                std::vector<int> args = idx;
                args[i] = m;
                s -= br * component(a, args);
            }
        }
        return s;
    });
}

inline Scalar random_function_coeff(Rng& r) {
    Scalar s = random_poly(r, true);
    if (r.coin()) s += Scalar(r.range(-2, 2)) * sym_w();
    if (r.coin()) s = s * sym_w().pow(r.range(-1, 2));
    return s;
}

// Random form with at least one coefficient involving the function w.
inline Form random_function_form(Rng& r, int n, int deg) {
    Form f = random_form(r, n, deg, true, 2);
    std::vector<int> slots;
    for (int i = 0; i < n; ++i) slots.push_back(i);
    std::shuffle(slots.begin(), slots.end(), r.g);
    Mask m = 0;
    for (int k = 0; k < deg; ++k) m |= Mask{1} << slots[static_cast<std::size_t>(k)];
    f += Form::basis(m, random_function_coeff(r));
    return f;
}

inline Endo random_endo(Rng& r, int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (r.pick(3) == 0) m(i, j) = Scalar(r.range(-2, 2));
    return Endo(m);
}

inline VectorField random_vector(Rng& r, int n, bool functions) {
    VectorField X(n);
    for (int i = 0; i < n; ++i)
        if (r.coin()) X.c[static_cast<std::size_t>(i)] = functions ? random_function_coeff(r) : Scalar(r.range(-2, 2));
    return X;
}

}  // namespace testsupport
