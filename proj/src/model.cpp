#include "skt/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace skt {

ParseError::ParseError(int l, int c, std::string tok, const std::string& message)
    : ModelError(std::to_string(l) + ":" + std::to_string(c) + ": " + message +
                 (tok.empty() ? std::string(" at end of statement") : " near '" + tok + "'")),
      line(l),
      column(c),
      token(std::move(tok)) {}

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

enum class Tok { Ident, Number, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 0, col = 0;
};

const std::set<std::string> kReserved = {"frame", "param",  "scalar",    "d",      "endo", "covector", "vector",
                                         "form",  "metric", "contact",   "hermitian", "su2", "su3",    "triple",
                                         "family", "sample", "assume",   "diag",   "orthonormal", "rows", "ddt"};

const std::vector<std::string> kTwoCharSyms = {"->", "!=", "<=", ">="};

std::vector<Token> tokenize_line(const std::string& line, int lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char ch = line[i];
        int col = static_cast<int>(i) + 1;
        if (ch == '#') break;
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t j = i;
            while (j < line.size() && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_')) ++j;
            out.push_back({Tok::Ident, line.substr(i, j - i), lineno, col});
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            out.push_back({Tok::Number, line.substr(i, j - i), lineno, col});
            i = j;
            continue;
        }
        std::string two = line.substr(i, 2);
        if (std::find(kTwoCharSyms.begin(), kTwoCharSyms.end(), two) != kTwoCharSyms.end()) {
            out.push_back({Tok::Sym, two, lineno, col});
            i += 2;
            continue;
        }
        if (std::string("+-*/^(),:=;<>").find(ch) != std::string::npos) {
            out.push_back({Tok::Sym, std::string(1, ch), lineno, col});
            ++i;
            continue;
        }
        throw ParseError(lineno, col, std::string(1, ch), "unexpected character");
    }
    return out;
}

// Statements are single lines; an indented line continues the previous one.
std::vector<std::vector<Token>> statements(const std::string& text) {
    std::vector<std::vector<Token>> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto toks = tokenize_line(line, lineno);
        if (toks.empty()) continue;
        bool indented = std::isspace(static_cast<unsigned char>(line[0]));
        if (indented && !out.empty())
            out.back().insert(out.back().end(), toks.begin(), toks.end());
        else
            out.push_back(std::move(toks));
    }
    return out;
}

Scalar scalar_of(const Form& f) { return f.coeff(0); }

Form coerce_degree(const Form& f, int degree) {
    if (f.is_zero()) return Form(degree);
    return f;
}

std::string pad_str(const Frame& frame, const Form& f) { return frame.str(f); }

// Form-shaped rendering of a vector field so that it reparses as a vector.
std::string vector_str(const Frame& frame, const VectorField& X) {
    Form f(1);
    for (int i = 0; i < X.dim(); ++i) f.add_term(Mask{1} << i, X.c[u(i)]);
    return frame.str(f);
}

std::string metric_str(const Matrix& g) {
    int n = g.rows();
    if (g == Matrix::identity(n)) return "orthonormal";
    bool diagonal = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && !g(i, j).is_zero()) diagonal = false;
    std::ostringstream os;
    auto entry = [](const Scalar& s) { return s.str(); };
    if (diagonal) {
        os << "diag(";
        for (int i = 0; i < n; ++i) os << (i ? ", " : "") << entry(g(i, i));
        os << ")";
        return os.str();
    }
    os << "rows(";
    for (int i = 0; i < n; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < n; ++j) os << (j ? ", " : "") << entry(g(i, j));
    }
    os << ")";
    return os.str();
}

std::string endo_str(const Frame& frame, const Endo& T) {
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j < T.dim(); ++j) {
        Form img = T.image_of_covector(j);
        if (img.is_zero()) continue;
        os << (first ? " " : ", ") << frame.names()[u(j)] << " -> " << frame.str(img);
        first = false;
    }
    return os.str();
}

const std::map<std::string, std::vector<std::string>> kBindingKeys = {
    {"contact", {"I", "omega", "xi", "eta", "g"}},
    {"hermitian", {"J", "F", "h"}},
    {"su2", {"eta", "w1", "w2", "w3", "g"}},
    {"family", {"eta", "w1", "w2", "w3", "g"}},
    {"su3", {"F", "psi_plus", "psi_minus", "h"}},
    {"triple", {"s1", "s2", "s3"}},
};

// Keys whose value is a declared name rather than an expression.
bool is_name_key(const std::string& kind, const std::string& key) {
    if (kind == "triple") return true;
    return key == "I" || key == "J" || key == "g" || key == "h";
}

int binding_degree(const std::string& key) {
    if (key == "eta" || key == "xi") return 1;
    if (key == "psi_plus" || key == "psi_minus") return 3;
    return 2;
}

class Parser {
public:
    Parser(Model& m, std::vector<Token> toks, bool have_frame, std::set<std::string>& names)
        : m_(m), t_(std::move(toks)), have_frame_(have_frame), names_(names) {
        if (!t_.empty()) {
            end_.line = t_.back().line;
            end_.col = t_.back().col + static_cast<int>(t_.back().text.size());
        }
    }

    const Token& peek(std::size_t k = 0) const { return pos_ + k < t_.size() ? t_[pos_ + k] : end_; }
    bool at_end() const { return pos_ >= t_.size(); }
    bool is_sym(const std::string& s, std::size_t k = 0) const {
        return peek(k).kind == Tok::Sym && peek(k).text == s;
    }
    bool is_ident(const std::string& s, std::size_t k = 0) const {
        return peek(k).kind == Tok::Ident && peek(k).text == s;
    }
    [[noreturn]] void fail(const std::string& msg, const Token& at) const {
        throw ParseError(at.line, at.col, at.text, msg);
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, peek()); }
    Token next() {
        if (at_end()) fail("unexpected end of statement");
        return t_[pos_++];
    }
    void expect_sym(const std::string& s) {
        if (!is_sym(s)) fail("expected '" + s + "'");
        ++pos_;
    }
    Token expect_ident() {
        if (peek().kind != Tok::Ident) fail("expected a name");
        return next();
    }
    void expect_end() {
        if (!at_end()) fail("unexpected token");
    }

    // ------------------------------------------------------------ expressions

    Form expr() {
        Form a = term();
        while (is_sym("+") || is_sym("-")) {
            Token op = next();
            Form b = term();
            a = add(a, op.text == "+" ? b : -b, op);
        }
        return a;
    }

    Form add(const Form& a, const Form& b, const Token& op) const {
        if (a.is_zero() && (b.degree() >= a.degree() || !b.is_zero())) return b;
        if (b.is_zero()) return a;
        if (a.degree() != b.degree()) fail("sum of forms of different degrees", op);
        return a + b;
    }

    Form term() {
        Form a = unary();
        while (is_sym("*") || is_sym("/")) {
            Token op = next();
            Form b = unary();
            if (op.text == "*") {
                if (a.degree() == 0)
                    a = scalar_of(a) * b;
                else if (b.degree() == 0)
                    a = scalar_of(b) * a;
                else
                    fail("product of forms of positive degree; use ^", op);
            } else {
                if (b.degree() != 0) fail("division by a form", op);
                Scalar s = scalar_of(b);
                if (s.is_zero()) fail("division by zero", op);
                a = s.inverse() * a;
            }
        }
        return a;
    }

    Form unary() {
        if (is_sym("-")) {
            next();
            return -unary();
        }
        if (is_sym("+")) {
            next();
            return unary();
        }
        return power();
    }

    Form power() {
        Form a = atom();
        while (is_sym("^")) {
            Token op = next();
            bool int_exp = peek().kind == Tok::Number || (is_sym("-") && peek(1).kind == Tok::Number);
            if (a.degree() == 0 && int_exp) {
                bool neg = is_sym("-");
                if (neg) next();
                Token n = next();
                int e = std::stoi(n.text);
                Scalar base = scalar_of(a);
                if (neg && base.is_zero()) fail("zero to a negative power", n);
                a = Form::scalar(base.pow(neg ? -e : e));
            } else {
                Form b = unary();
                a = (a.degree() == 0) ? scalar_of(a) * b : (b.degree() == 0 ? scalar_of(b) * a : wedge(a, b));
            }
            (void)op;
        }
        return a;
    }

    Form atom() {
        if (is_sym("(")) {
            next();
            Form f = expr();
            expect_sym(")");
            return f;
        }
        if (peek().kind == Tok::Number) {
            Token n = next();
            return Form::scalar(Scalar(mpq_class(n.text)));
        }
        if (peek().kind == Tok::Ident) {
            Token id = next();
            return resolve(id);
        }
        fail("expected an expression");
    }

    Form resolve(const Token& id) const {
        const std::string& name = id.text;
        if (auto i = m_.frame.index_of(name)) return Form::covector(*i);
        for (const auto& [n, f] : m_.covectors)
            if (n == name) return f;
        for (const auto& [n, f] : m_.forms)
            if (n == name) return f;
        if (const SymbolInfo* s = m_.frame.symbol(name)) return Form::scalar(Scalar::symbol(s->var));
        fail("unresolved reference", id);
    }

    Form form_of_degree(int degree) {
        Token start = peek();
        Form f = coerce_degree(expr(), degree);
        if (f.degree() != degree) fail("expected a " + std::to_string(degree) + "-form", start);
        return f;
    }

    Scalar scalar_expr() {
        Token start = peek();
        Form f = expr();
        if (f.is_zero()) return Scalar();
        if (f.degree() != 0) fail("expected a scalar", start);
        return scalar_of(f);
    }

    mpq_class rational() {
        bool neg = false;
        if (is_sym("-")) {
            next();
            neg = true;
        }
        if (peek().kind != Tok::Number) fail("expected a rational number");
        mpq_class q(next().text);
        if (is_sym("/")) {
            next();
            if (peek().kind != Tok::Number) fail("expected a denominator");
            Token d = next();
            mpq_class den(d.text);
            if (den == 0) fail("zero denominator", d);
            q /= den;
        }
        q.canonicalize();
        return neg ? mpq_class(-q) : q;
    }

    // ------------------------------------------------------------ statements

    void declare_name(const Token& id) {
        if (kReserved.count(id.text)) fail("reserved word used as a name", id);
        if (m_.frame.index_of(id.text) || m_.frame.symbol(id.text) || names_.count(id.text))
            fail("duplicate name", id);
        names_.insert(id.text);
    }

    void statement(std::vector<int>& d_lines, std::map<int, int>& symbol_lines) {
        Token kw = expect_ident();
        const std::string& k = kw.text;
        if (k == "frame") return frame_decl(kw);
        if (!have_frame_) fail("the frame must be declared first", kw);
        if (k == "param") return param_decl();
        if (k == "scalar") return scalar_decl(symbol_lines);
        if (k == "d") return d_decl(d_lines);
        if (k == "endo") return endo_decl();
        if (k == "covector") return covector_decl();
        if (k == "vector") return vector_decl();
        if (k == "form") return form_decl();
        if (k == "metric") return metric_decl();
        if (kBindingKeys.count(k)) return structure_decl(k);
        if (k == "sample") return sample_decl();
        if (k == "assume") return assume_decl();
        fail("unknown statement", kw);
    }

    void frame_decl(const Token& kw) {
        if (have_frame_) fail("a model has a single frame", kw);
        std::vector<std::string> names;
        while (!at_end()) {
            Token id = expect_ident();
            declare_name(id);
            names.push_back(id.text);
        }
        if (names.empty()) fail("empty frame", kw);
        if (static_cast<int>(names.size()) > kMaxDim) fail("frame too large", kw);
        m_.frame = Frame(names);
        have_frame_ = true;
    }

    int new_symbol(const Token& id) {
        declare_name(id);
        if (Symbols::count() >= kMaxSymbols && !Symbols::find(id.text)) fail("too many symbols", id);
        return Symbols::intern(id.text);
    }

    void param_decl() {
        if (at_end()) fail("expected a name");
        while (!at_end()) {
            Token id = expect_ident();
            SymbolInfo s;
            s.var = new_symbol(id);
            s.name = id.text;
            m_.frame.declare_symbol(s);
        }
    }

    void scalar_decl(std::map<int, int>& symbol_lines) {
        Token id = expect_ident();
        SymbolInfo s;
        s.var = new_symbol(id);
        s.name = id.text;
        s.parameter = false;
        m_.frame.declare_symbol(s);
        symbol_lines[s.var] = id.line;
        while (!at_end()) {
            Token key = expect_ident();
            expect_sym("=");
            if (key.text == "ddt") {
                if (s.ddt) fail("duplicate ddt clause", key);
                s.ddt = scalar_expr();
            } else if (key.text == "d") {
                if (s.d) fail("duplicate d clause", key);
                s.d = form_of_degree(1);
            } else {
                fail("expected ddt or d", key);
            }
        }
        m_.frame.declare_symbol(s);
    }

    void d_decl(std::vector<int>& d_lines) {
        Token id = expect_ident();
        auto i = m_.frame.index_of(id.text);
        if (!i) fail("unresolved reference", id);
        if (d_lines[u(*i)]) fail("duplicate differential", id);
        d_lines[u(*i)] = id.line;
        expect_sym("=");
        m_.frame.set_d(*i, form_of_degree(2));
        expect_end();
    }

    void endo_decl() {
        Token id = expect_ident();
        declare_name(id);
        bool vector_action = false;
        if (is_ident("vector")) {
            next();
            vector_action = true;
        } else if (is_ident("covector")) {
            next();
        }
        expect_sym(":");
        int n = m_.frame.dim();
        Matrix A(n, n);
        std::vector<bool> seen(u(n));
        while (!at_end()) {
            Token src = expect_ident();
            auto j = m_.frame.index_of(src.text);
            if (!j) fail("unresolved reference", src);
            if (seen[u(*j)]) fail("duplicate image", src);
            seen[u(*j)] = true;
            expect_sym("->");
            Form img = form_of_degree(1);
            for (const auto& [mask, c] : img.terms()) {
                int k = mask_indices(mask)[0];
                if (vector_action)
                    A(k, *j) = c;
                else
                    A(*j, k) = c;
            }
            if (!at_end()) expect_sym(",");
        }
        m_.endos.emplace_back(id.text, Endo(A));
    }

    void covector_decl() {
        Token id = expect_ident();
        declare_name(id);
        expect_sym("=");
        m_.covectors.emplace_back(id.text, form_of_degree(1));
        expect_end();
    }

    VectorField vector_value() {
        Form f = form_of_degree(1);
        VectorField X(m_.frame.dim());
        for (const auto& [mask, c] : f.terms()) X.c[u(mask_indices(mask)[0])] = c;
        return X;
    }

    void vector_decl() {
        Token id = expect_ident();
        declare_name(id);
        expect_sym("=");
        m_.vectors.emplace_back(id.text, vector_value());
        expect_end();
    }

    void form_decl() {
        Token id = expect_ident();
        declare_name(id);
        expect_sym("=");
        m_.forms.emplace_back(id.text, expr());
        expect_end();
    }

    void metric_decl() {
        Token id = expect_ident();
        declare_name(id);
        expect_sym("=");
        int n = m_.frame.dim();
        Token kind = expect_ident();
        Matrix g(n, n);
        if (kind.text == "orthonormal") {
            g = Matrix::identity(n);
        } else if (kind.text == "diag") {
            expect_sym("(");
            for (int i = 0; i < n; ++i) {
                if (i) expect_sym(",");
                g(i, i) = scalar_expr();
            }
            expect_sym(")");
        } else if (kind.text == "rows") {
            expect_sym("(");
            for (int i = 0; i < n; ++i) {
                if (i) expect_sym(";");
                for (int j = 0; j < n; ++j) {
                    if (j) expect_sym(",");
                    g(i, j) = scalar_expr();
                }
            }
            expect_sym(")");
            if (g != g.transpose()) fail("metric is not symmetric", kind);
        } else {
            fail("expected diag, rows or orthonormal", kind);
        }
        expect_end();
        m_.metrics.emplace_back(id.text, g);
    }

    template <class T>
    const T& named(const Named<T>& list, const Token& id, const std::string& what) const {
        for (const auto& [n, v] : list)
            if (n == id.text) return v;
        fail("unresolved reference (expected " + what + ")", id);
    }

    void structure_decl(const std::string& kind) {
        Token id = expect_ident();
        declare_name(id);
        expect_sym(":");
        const auto& keys = kBindingKeys.at(kind);
        std::map<std::string, Token> name_vals;
        std::map<std::string, Form> form_vals;
        std::map<std::string, Token> key_tokens;
        while (!at_end()) {
            Token key = expect_ident();
            if (std::find(keys.begin(), keys.end(), key.text) == keys.end()) fail("unknown binding for " + kind, key);
            if (key_tokens.count(key.text)) fail("duplicate binding", key);
            key_tokens[key.text] = key;
            expect_sym("=");
            if (is_name_key(kind, key.text))
                name_vals[key.text] = expect_ident();
            else if (key.text == "xi" && peek().kind == Tok::Ident && has_vector(peek().text) &&
                     (peek(1).kind == Tok::End || is_sym(",", 1) || (peek(1).kind == Tok::Ident && is_sym("=", 2))))
                name_vals[key.text] = next();
            else
                form_vals[key.text] = form_of_degree(binding_degree(key.text));
            if (is_sym(",")) next();
        }
        Token where = t_.front();
        auto require = [&](const std::string& key) {
            if (!key_tokens.count(key)) fail("missing binding '" + key + "'", where);
        };

        StructureDecl decl{kind, id.text, {}};
        for (const auto& k : keys) {
            if (name_vals.count(k))
                decl.bindings.emplace_back(k, name_vals[k].text);
            else if (form_vals.count(k))
                decl.bindings.emplace_back(k, m_.frame.str(form_vals[k]));
        }
        int n = m_.frame.dim();
        auto metric_or_identity = [&](const std::string& key) {
            return name_vals.count(key) ? named(m_.metrics, name_vals[key], "a metric") : Matrix::identity(n);
        };

        if (kind == "contact") {
            require("eta");
            require("g");
            if (key_tokens.count("I") == key_tokens.count("omega")) fail("give exactly one of I and omega", where);
            AlmostContactMetric acm;
            acm.g = named(m_.metrics, name_vals["g"], "a metric");
            acm.eta = form_vals["eta"];
            acm.I = key_tokens.count("I") ? named(m_.endos, name_vals["I"], "an endomorphism")
                                          : endo_of(acm.g, form_vals["omega"]);
            if (name_vals.count("xi"))
                acm.xi = named(m_.vectors, name_vals["xi"], "a vector");
            else if (form_vals.count("xi"))
                acm.xi = to_vector(form_vals["xi"]);
            else
                acm.xi = metric_dual(acm.g, acm.eta);
            lint_contact(id.text, acm);
            m_.contact.emplace_back(id.text, acm);
        } else if (kind == "hermitian") {
            if (key_tokens.count("J") == key_tokens.count("F")) fail("give exactly one of J and F", where);
            Hermitian her;
            her.h = metric_or_identity("h");
            her.J = key_tokens.count("J") ? named(m_.endos, name_vals["J"], "an endomorphism")
                                          : endo_of(her.h, form_vals["F"]);
            lint_hermitian(id.text, her);
            m_.hermitian.emplace_back(id.text, her);
        } else if (kind == "su2" || kind == "family") {
            for (const char* k : {"eta", "w1", "w2", "w3"}) require(k);
            SU2Structure s{form_vals["eta"], form_vals["w1"], form_vals["w2"], form_vals["w3"], metric_or_identity("g")};
            (kind == "su2" ? m_.su2 : m_.family).emplace_back(id.text, s);
        } else if (kind == "su3") {
            for (const char* k : {"F", "psi_plus", "psi_minus"}) require(k);
            SU3Structure s{form_vals["F"], form_vals["psi_plus"], form_vals["psi_minus"], metric_or_identity("h")};
            m_.su3.emplace_back(id.text, s);
        } else if (kind == "triple") {
            ContactTriple t;
            for (int r = 0; r < 3; ++r) {
                std::string k = "s" + std::to_string(r + 1);
                require(k);
                t.s[u(r)] = named(m_.contact, name_vals[k], "a contact structure");
            }
            m_.triple.emplace_back(id.text, t);
        }
        m_.structures.push_back(std::move(decl));
    }

    bool has_vector(const std::string& name) const {
        return std::any_of(m_.vectors.begin(), m_.vectors.end(), [&](const auto& p) { return p.first == name; });
    }

    VectorField to_vector(const Form& f) const {
        VectorField X(m_.frame.dim());
        for (const auto& [mask, c] : f.terms()) X.c[u(mask_indices(mask)[0])] = c;
        return X;
    }

    void lint_contact(const std::string& name, const AlmostContactMetric& acm) {
        const Matrix& A = acm.I.matrix();
        int n = A.rows();
        Matrix ee(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ee(i, j) = acm.eta.coeff(Mask{1} << i) * acm.eta.coeff(Mask{1} << j);
        if (A.transpose() * acm.g * A != acm.g - ee)
            m_.warnings.push_back("contact " + name +
                                  ": the vector action of I is not compatible with the metric (g(IX,IY) != "
                                  "g(X,Y) - eta(X)eta(Y))");
    }

    void lint_hermitian(const std::string& name, const Hermitian& her) {
        const Matrix& A = her.J.matrix();
        if (A.transpose() * her.h * A != her.h)
            m_.warnings.push_back("hermitian " + name + ": the vector action of J is not compatible with the metric");
    }

    void sample_decl() {
        SamplePoint p;
        while (true) {
            Token id = expect_ident();
            const SymbolInfo* s = m_.frame.symbol(id.text);
            if (!s) fail("unresolved reference (expected a symbol)", id);
            if (p.count(s->var)) fail("duplicate sample value", id);
            expect_sym("=");
            p[s->var] = rational();
            if (at_end()) break;
            expect_sym(",");
        }
        m_.samples.push_back(std::move(p));
    }

    void assume_decl() {
        if (at_end()) fail("empty assumption");
        std::string text;
        for (std::size_t i = pos_; i < t_.size(); ++i) text += (text.empty() ? "" : " ") + t_[i].text;
        for (std::size_t i = pos_; i < t_.size(); ++i)
            if (t_[i].kind == Tok::Ident && !m_.frame.symbol(t_[i].text))
                fail("unresolved reference (expected a symbol)", t_[i]);
        pos_ = t_.size();
        m_.assumptions.push_back(text);
    }

    bool have_frame() const { return have_frame_; }

private:
    Model& m_;
    std::vector<Token> t_;
    std::size_t pos_ = 0;
    bool have_frame_;
    std::set<std::string>& names_;
    Token end_;
};

}  // namespace

Model parse_model(const std::string& text) {
    Model m;
    std::set<std::string> names;
    std::vector<int> d_lines;
    std::map<int, int> symbol_lines;
    bool have_frame = false;
    for (auto& st : statements(text)) {
        Parser p(m, std::move(st), have_frame, names);
        p.statement(d_lines, symbol_lines);
        if (!have_frame && p.have_frame()) d_lines.assign(u(m.frame.dim()), 0);
        have_frame = p.have_frame();
    }
    if (!have_frame) throw ParseError(1, 1, "", "missing frame declaration");
    for (const auto& [label, defect] : d_squared_defects(m.frame)) {
        int line = 1;
        if (auto i = m.frame.index_of(label)) {
            line = d_lines[u(*i)] ? d_lines[u(*i)] : 1;
        } else if (const SymbolInfo* s = m.frame.symbol(label)) {
            line = symbol_lines.count(s->var) ? symbol_lines[s->var] : 1;
        }
        throw ParseError(line, 1, label, "d^2 != 0 on " + label + ": " + m.frame.str(defect));
    }
    return m;
}

Form Model::parse_form(const std::string& expr) const {
    auto toks = tokenize_line(expr, 1);
    Model& self = const_cast<Model&>(*this);  // the expression parser only reads
    std::set<std::string> names;
    Parser p(self, toks, true, names);
    if (toks.empty()) throw ParseError(1, 1, "", "empty expression");
    Form f = p.expr();
    p.expect_end();
    return f;
}

std::string Model::pick(const std::string& kind, const std::string& name) const {
    for (const auto& s : structures)
        if (s.kind == kind && (name.empty() || s.name == name)) return s.name;
    if (name.empty()) throw ModelError("the model declares no " + kind + " structure");
    throw ModelError("no " + kind + " structure named '" + name + "'");
}

std::string print_model(const Model& m) {
    const Frame& f = m.frame;
    std::ostringstream os;
    os << "frame";
    for (const auto& n : f.names()) os << " " << n;
    os << "\n";
    std::vector<std::string> params;
    for (const auto& s : f.symbols())
        if (s.parameter && !s.d && !s.ddt) params.push_back(s.name);
    if (!params.empty()) {
        os << "param";
        for (const auto& p : params) os << " " << p;
        os << "\n";
    }
    for (const auto& s : f.symbols()) {
        if (s.parameter && !s.d && !s.ddt) continue;
        os << "scalar " << s.name;
        if (s.ddt) os << " ddt = " << Form::scalar(*s.ddt).str(f.names());
        if (s.d) os << " d = " << f.str(*s.d);
        os << "\n";
    }
    for (const auto& a : m.assumptions) os << "assume " << a << "\n";
    for (int i = 0; i < f.dim(); ++i)
        if (!f.d_of(i).is_zero()) os << "d " << f.names()[u(i)] << " = " << f.str(f.d_of(i)) << "\n";
    for (const auto& [n, T] : m.endos) os << "endo " << n << ":" << endo_str(f, T) << "\n";
    for (const auto& [n, c] : m.covectors) os << "covector " << n << " = " << pad_str(f, c) << "\n";
    for (const auto& [n, X] : m.vectors) os << "vector " << n << " = " << vector_str(f, X) << "\n";
    for (const auto& [n, g] : m.metrics) os << "metric " << n << " = " << metric_str(g) << "\n";
    for (const auto& [n, w] : m.forms) os << "form " << n << " = " << f.str(w) << "\n";
    for (const auto& s : m.structures) {
        os << s.kind << " " << s.name << ":";
        for (const auto& [k, v] : s.bindings) os << " " << k << "=" << v;
        os << "\n";
    }
    for (const auto& p : m.samples) {
        os << "sample";
        std::vector<std::pair<std::string, mpq_class>> vals;
        for (const auto& [var, q] : p) vals.emplace_back(Symbols::name(var), q);
        std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 0; i < vals.size(); ++i)
            os << (i ? ", " : " ") << vals[i].first << " = " << rational_str(vals[i].second);
        os << "\n";
    }
    return os.str();
}

std::string Model::canonical() const { return print_model(*this); }

Model hermitian_model(const Frame& frame, const Hermitian& her, const std::string& name) {
    Model m;
    m.frame = frame;
    m.endos.emplace_back("J", her.J);
    m.metrics.emplace_back("h", her.h);
    m.hermitian.emplace_back(name, her);
    m.structures.push_back({"hermitian", name, {{"J", "J"}, {"h", "h"}}});
    return m;
}

}  // namespace skt
