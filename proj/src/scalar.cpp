#include "skt/scalar.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace skt {

namespace {

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::vector<std::string>& registry() {
    static std::vector<std::string> names;
    return names;
}

using TermMap = std::map<Exponents, mpq_class, std::greater<>>;

}  // namespace

int Symbols::intern(const std::string& name) {
    std::lock_guard lock(registry_mutex());
    auto& names = registry();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    if (names.size() >= static_cast<std::size_t>(kMaxSymbols))
        throw std::length_error("too many symbols (limit " + std::to_string(kMaxSymbols) + ")");
    names.push_back(name);
    return static_cast<int>(names.size() - 1);
}

std::optional<int> Symbols::find(const std::string& name) {
    std::lock_guard lock(registry_mutex());
    const auto& names = registry();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

std::string Symbols::name(int index) {
    std::lock_guard lock(registry_mutex());
    return registry().at(static_cast<std::size_t>(index));
}

int Symbols::count() {
    std::lock_guard lock(registry_mutex());
    return static_cast<int>(registry().size());
}

std::string rational_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// ---------------------------------------------------------------- Poly

Poly::Poly(long v) {
    if (v != 0) terms_.push_back({Exponents{}, mpq_class(v)});
}

Poly::Poly(const mpq_class& v) {
    if (v != 0) terms_.push_back({Exponents{}, v});
    if (!terms_.empty()) terms_.back().coeff.canonicalize();
}

Poly Poly::variable(int index, int power) {
    Exponents e{};
    e.at(static_cast<std::size_t>(index)) = static_cast<std::uint16_t>(power);
    return monomial(e, mpq_class(1));
}

Poly Poly::monomial(const Exponents& e, const mpq_class& c) {
    Poly p;
    if (c != 0) {
        p.terms_.push_back({e, c});
        p.terms_.back().coeff.canonicalize();
    }
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exps == Exponents{});
}

mpq_class Poly::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::domain_error("polynomial is not constant");
    return terms_[0].coeff;
}

int Poly::degree_in(int var) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.exps[static_cast<std::size_t>(var)]));
    return d;
}

int Poly::lowest_var() const {
    int best = -1;
    for (const auto& t : terms_)
        for (int v = 0; v < kMaxSymbols; ++v)
            if (t.exps[static_cast<std::size_t>(v)] != 0) {
                if (best < 0 || v < best) best = v;
                break;
            }
    return best;
}

std::vector<int> Poly::vars() const {
    std::vector<int> out;
    for (int v = 0; v < kMaxSymbols; ++v)
        if (has_var(v)) out.push_back(v);
    return out;
}

void Poly::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.exps > b.exps; });
    std::vector<Term> merged;
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().exps == t.exps)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Term& t) { return t.coeff == 0; }),
                 merged.end());
    terms_ = std::move(merged);
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].exps > o.terms_[j].exps)) {
            out.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].exps > terms_[i].exps) {
            out.push_back(o.terms_[j++]);
        } else {
            mpq_class c = terms_[i].coeff + o.terms_[j].coeff;
            if (c != 0) out.push_back({terms_[i].exps, c});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    TermMap acc;
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) {
            Exponents e;
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = static_cast<std::uint16_t>(x.exps[k] + y.exps[k]);
            acc[e] += x.coeff * y.coeff;
        }
    Poly r;
    for (auto& [e, c] : acc)
        if (c != 0) r.terms_.push_back({e, c});
    return r;
}

Poly Poly::scaled(const mpq_class& c) const {
    if (c == 0) return Poly();
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Poly Poly::pow(unsigned n) const {
    Poly result(1), base = *this;
    while (n) {
        if (n & 1u) result = result * base;
        n >>= 1u;
        if (n) base = base * base;
    }
    return result;
}

bool Poly::operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].exps != o.terms_[i].exps || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
}

Poly Poly::derivative(int var) const {
    Poly r;
    auto v = static_cast<std::size_t>(var);
    for (const auto& t : terms_) {
        if (t.exps[v] == 0) continue;
        Term n = t;
        n.coeff *= t.exps[v];
        n.exps[v] = static_cast<std::uint16_t>(t.exps[v] - 1);
        r.terms_.push_back(n);
    }
    r.normalize();
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(1 / leading_coeff());
}

Poly Poly::substitute(const std::map<int, mpq_class>& values) const {
    Poly r;
    for (const auto& t : terms_) {
        Term n = t;
        for (const auto& [var, val] : values) {
            auto v = static_cast<std::size_t>(var);
            for (int k = 0; k < t.exps[v]; ++k) n.coeff *= val;
            n.exps[v] = 0;
        }
        r.terms_.push_back(n);
    }
    r.normalize();
    return r;
}

std::map<int, Poly> Poly::coefficients_in(int var) const {
    std::map<int, Poly> out;
    auto v = static_cast<std::size_t>(var);
    for (const auto& t : terms_) {
        Term n = t;
        int d = n.exps[v];
        n.exps[v] = 0;
        out[d].terms_.push_back(n);
    }
    for (auto& [d, p] : out) p.normalize();
    return out;
}

Poly Poly::from_coefficients(int var, const std::map<int, Poly>& coeffs) {
    Poly r;
    for (const auto& [d, p] : coeffs) r += p * variable(var, d);
    return r;
}

Poly Poly::exact_div(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    if (d.is_constant()) return scaled(1 / d.constant_value());
    Poly q, r = *this;
    const Term& lt = d.leading();
    while (!r.is_zero()) {
        const Term& rt = r.leading();
        Exponents e;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (rt.exps[k] < lt.exps[k]) throw std::domain_error("inexact polynomial division");
            e[k] = static_cast<std::uint16_t>(rt.exps[k] - lt.exps[k]);
        }
        Poly m = monomial(e, rt.coeff / lt.coeff);
        q += m;
        r -= m * d;
    }
    return q;
}

namespace {

// Printing uses lex order on symbol names so output does not depend on the
// order in which symbols were interned.
std::vector<const Poly::Term*> name_ordered(const Poly& p) {
    std::vector<int> by_name;
    for (int v = 0; v < Symbols::count(); ++v) by_name.push_back(v);
    std::sort(by_name.begin(), by_name.end(), [](int a, int b) { return Symbols::name(a) < Symbols::name(b); });
    std::vector<const Poly::Term*> out;
    for (const auto& t : p.terms()) out.push_back(&t);
    std::sort(out.begin(), out.end(), [&](const Poly::Term* a, const Poly::Term* b) {
        for (int v : by_name) {
            auto ea = a->exps[static_cast<std::size_t>(v)], eb = b->exps[static_cast<std::size_t>(v)];
            if (ea != eb) return ea > eb;
        }
        return false;
    });
    return out;
}

}  // namespace

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    std::vector<int> by_name;
    for (int v = 0; v < Symbols::count(); ++v) by_name.push_back(v);
    std::sort(by_name.begin(), by_name.end(), [](int a, int b) { return Symbols::name(a) < Symbols::name(b); });
    for (const Term* tp : name_ordered(*this)) {
        const Term& t = *tp;
        mpq_class c = t.coeff;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        std::string mono;
        for (int v : by_name) {
            int e = t.exps[static_cast<std::size_t>(v)];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += Symbols::name(v);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty())
            os << rational_str(c);
        else if (c == 1)
            os << mono;
        else
            os << rational_str(c) << "*" << mono;
    }
    return os.str();
}

// ---------------------------------------------------------------- gcd

namespace {

Poly content_in(const Poly& p, int var) {
    Poly g;
    for (const auto& [d, c] : p.coefficients_in(var)) {
        g = gcd(g, c);
        if (g.is_constant()) return Poly(1);
    }
    return g;
}

// Scales to coprime integer coefficients so remainder sequences stay small.
Poly numeric_primitive(const Poly& p) {
    if (p.is_zero()) return p;
    mpz_class num = 0, den = 1;
    for (const auto& t : p.terms()) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    mpq_class f(den, num);
    f.canonicalize();
    return p.scaled(f);
}

Poly primitive_in(const Poly& p, int var) {
    if (p.is_zero()) return p;
    return numeric_primitive(p.exact_div(content_in(p, var)));
}

Poly pseudo_remainder(Poly a, const Poly& b, int var) {
    int db = b.degree_in(var);
    auto bc = b.coefficients_in(var);
    Poly lb = bc.rbegin()->second;
    while (!a.is_zero() && a.degree_in(var) >= db) {
        int da = a.degree_in(var);
        Poly la = a.coefficients_in(var).rbegin()->second;
        a = lb * a - la * Poly::variable(var, da - db) * b;
    }
    return a;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Poly(1);
    int va = a.lowest_var(), vb = b.lowest_var();
    int var = std::min(va, vb);
    if (!a.has_var(var)) return gcd(a, content_in(b, var));
    if (!b.has_var(var)) return gcd(content_in(a, var), b);
    Poly ca = content_in(a, var), cb = content_in(b, var);
    Poly c = gcd(ca, cb);
    Poly p = numeric_primitive(a.exact_div(ca)), q = numeric_primitive(b.exact_div(cb));
    if (p.degree_in(var) < q.degree_in(var)) std::swap(p, q);
    while (!q.is_zero() && q.degree_in(var) > 0) {
        Poly r = pseudo_remainder(p, q, var);
        p = std::move(q);
        q = primitive_in(r, var);
    }
    Poly g = q.is_zero() ? primitive_in(p, var) : Poly(1);
    return (c * g).monic();
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    normalize();
}

void Scalar::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    if (den_.is_constant()) {
        num_ = num_.scaled(1 / den_.constant_value());
        den_ = Poly(1);
        return;
    }
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
        num_ = num_.exact_div(g);
        den_ = den_.exact_div(g);
    }
    mpq_class lc = den_.leading_coeff();
    if (lc != 1) {
        num_ = num_.scaled(1 / lc);
        den_ = den_.scaled(1 / lc);
    }
}

mpq_class Scalar::constant_value() const {
    if (!is_constant()) throw std::domain_error("scalar is not constant: " + str());
    return num_.constant_value() / den_.constant_value();
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        num_ = num_ * o.den_ + o.num_ * den_;
        den_ = den_ * o.den_;
    }
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (is_zero() || o.is_zero()) return *this = Scalar();
    if (den_.is_constant() && o.den_.is_constant()) {
        num_ = num_ * o.num_;
        return *this;
    }
    Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
    Poly n = num_.exact_div(g1) * o.num_.exact_div(g2);
    Poly d = den_.exact_div(g2) * o.den_.exact_div(g1);
    num_ = std::move(n);
    den_ = std::move(d);
    mpq_class lc = den_.leading_coeff();
    if (den_.is_constant()) {
        num_ = num_.scaled(1 / lc);
        den_ = Poly(1);
    } else if (lc != 1) {
        num_ = num_.scaled(1 / lc);
        den_ = den_.scaled(1 / lc);
    }
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero scalar");
    return Scalar(den_, num_);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    Scalar r(1), base = *this;
    auto k = static_cast<unsigned>(n);
    while (k) {
        if (k & 1u) r *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return r;
}

Scalar Scalar::derivative(int var) const {
    if (!num_.has_var(var) && !den_.has_var(var)) return Scalar();
    if (den_.is_constant()) return Scalar(num_.derivative(var), den_);
    return Scalar(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

std::vector<int> Scalar::vars() const {
    std::vector<int> out;
    for (int v = 0; v < kMaxSymbols; ++v)
        if (num_.has_var(v) || den_.has_var(v)) out.push_back(v);
    return out;
}

Scalar Scalar::substitute(const std::map<int, mpq_class>& values) const {
    Poly d = den_.substitute(values);
    if (d.is_zero()) throw std::domain_error("denominator vanishes at substitution point");
    return Scalar(num_.substitute(values), d);
}

std::optional<mpq_class> Scalar::evaluate(const std::map<int, mpq_class>& values) const {
    Poly d = den_.substitute(values);
    if (d.is_zero()) return std::nullopt;
    Poly n = num_.substitute(values);
    if (!n.is_constant() || !d.is_constant()) throw std::domain_error("evaluation point misses symbols of " + str());
    return n.constant_value() / d.constant_value();
}

bool Scalar::needs_parens() const { return den_.is_constant() && num_.terms().size() > 1; }

std::string Scalar::str() const {
    if (den_.is_constant()) return num_.str();
    mpq_class lc = name_ordered(den_).front()->coeff;
    Poly num = num_.scaled(1 / lc), den = den_.scaled(1 / lc);
    std::string n = num.terms().size() > 1 ? "(" + num.str() + ")" : num.str();
    bool single_var = den.terms().size() == 1 && den.vars().size() == 1;
    std::string d = single_var ? den.str() : "(" + den.str() + ")";
    return n + "/" + d;
}

}  // namespace skt
