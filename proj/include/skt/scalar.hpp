// Exact coefficient field: multivariate polynomials over Q and normalized
// rational functions in a global, ordered set of symbols.
#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skt {

inline constexpr int kMaxSymbols = 16;

// Symbol names are interned process-wide; the index is the position in the
// monomial order (lex, first interned first).
class Symbols {
public:
    static int intern(const std::string& name);
    static std::optional<int> find(const std::string& name);
    static std::string name(int index);
    static int count();
};

using Exponents = std::array<std::uint16_t, kMaxSymbols>;

class Poly {
public:
    struct Term {
        Exponents exps{};
        mpq_class coeff;
    };

    Poly() = default;
    Poly(long v);  // NOLINT(google-explicit-constructor)
    explicit Poly(const mpq_class& v);
    static Poly variable(int index, int power = 1);
    static Poly monomial(const Exponents& e, const mpq_class& c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    mpq_class constant_value() const;
    const std::vector<Term>& terms() const { return terms_; }
    const Term& leading() const { return terms_.front(); }
    mpq_class leading_coeff() const { return terms_.front().coeff; }

    int degree_in(int var) const;
    bool has_var(int var) const { return degree_in(var) > 0; }
    int lowest_var() const;  // -1 for constants

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const mpq_class& c) const;
    Poly pow(unsigned n) const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly derivative(int var) const;
    Poly monic() const;
    Poly substitute(const std::map<int, mpq_class>& values) const;

    // Coefficients with respect to var: degree -> coefficient (var-free).
    std::map<int, Poly> coefficients_in(int var) const;
    static Poly from_coefficients(int var, const std::map<int, Poly>& coeffs);

    // Exact quotient; throws std::domain_error when the division is not exact.
    Poly exact_div(const Poly& d) const;

    std::string str() const;
    std::vector<int> vars() const;

private:
    void normalize();
    std::vector<Term> terms_;  // strictly decreasing in lex order, no zeros
};

Poly gcd(const Poly& a, const Poly& b);

class Scalar {
public:
    Scalar() : den_(1) {}
    Scalar(long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
    explicit Scalar(const mpq_class& v) : num_(v), den_(1) {}
    Scalar(Poly num, Poly den);
    static Scalar symbol(int index) { return Scalar(Poly::variable(index), Poly(1)); }
    static Scalar symbol(const std::string& name) { return symbol(Symbols::intern(name)); }
    static Scalar rational(long p, long q) { return Scalar(mpq_class(p, q)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_.is_constant() && num_ == den_; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    bool is_polynomial() const { return den_.is_constant(); }
    mpq_class constant_value() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar pow(int n) const;
    Scalar inverse() const;

    bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    Scalar derivative(int var) const;
    std::vector<int> vars() const;
    Scalar substitute(const std::map<int, mpq_class>& values) const;
    // Value at a full rational point; nullopt when the denominator vanishes.
    std::optional<mpq_class> evaluate(const std::map<int, mpq_class>& values) const;

    std::string str() const;
    // True when str() needs parentheses as a factor in a product.
    bool needs_parens() const;

private:
    void normalize();
    Poly num_;
    Poly den_;
};

std::string rational_str(const mpq_class& q);

}  // namespace skt
