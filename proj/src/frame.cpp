#include "skt/frame.hpp"

#include <algorithm>

namespace skt {

Frame::Frame(std::vector<std::string> names) : names_(std::move(names)) {
    if (dim() > kMaxDim) throw ModelError("coframe too large");
    for (int i = 0; i < dim(); ++i) d_.emplace_back(2);
}

std::optional<int> Frame::index_of(const std::string& name) const {
    for (int i = 0; i < dim(); ++i)
        if (names_[static_cast<std::size_t>(i)] == name) return i;
    return std::nullopt;
}

int Frame::require_index(const std::string& name) const {
    auto i = index_of(name);
    if (!i) throw ModelError("unknown covector '" + name + "'");
    return *i;
}

void Frame::set_d(int i, Form f) {
    if (!f.is_zero() && f.degree() != 2) throw ModelError("differential of a covector must be a 2-form");
    if (f.is_zero()) f = Form(2);
    d_.at(static_cast<std::size_t>(i)) = std::move(f);
}

void Frame::declare_symbol(SymbolInfo s) {
    for (auto& existing : symbols_)
        if (existing.var == s.var) {
            existing = std::move(s);
            return;
        }
    symbols_.push_back(std::move(s));
}

const SymbolInfo* Frame::symbol(int var) const {
    for (const auto& s : symbols_)
        if (s.var == var) return &s;
    return nullptr;
}

const SymbolInfo* Frame::symbol(const std::string& name) const {
    for (const auto& s : symbols_)
        if (s.name == name) return &s;
    return nullptr;
}

Form Frame::scalar_d(const Scalar& s) const {
    Form r(1);
    for (int v : s.vars()) {
        const SymbolInfo* info = symbol(v);
        if (!info) throw ModelError("undeclared symbol '" + Symbols::name(v) + "'");
        if (!info->d || info->d->is_zero()) continue;
        r += s.derivative(v) * *info->d;
    }
    return r;
}

Scalar Frame::scalar_dt(const Scalar& s) const {
    Scalar r;
    for (int v : s.vars()) {
        const SymbolInfo* info = symbol(v);
        if (!info) throw ModelError("undeclared symbol '" + Symbols::name(v) + "'");
        if (!info->ddt || info->ddt->is_zero()) continue;
        r += s.derivative(v) * *info->ddt;
    }
    return r;
}

Form Frame::d(const Form& a) const { return exterior_d(*this, a); }

Frame Frame::extend(const std::string& name, const Form& dform) const {
    if (index_of(name)) throw ModelError("covector '" + name + "' already exists");
    Frame f = *this;
    f.names_.push_back(name);
    f.d_.emplace_back(2);
    f.set_d(f.dim() - 1, dform);
    return f;
}

bool Frame::constant_coefficients() const {
    for (const auto& f : d_)
        for (const auto& [m, c] : f.terms())
            for (int v : c.vars()) {
                const SymbolInfo* info = symbol(v);
                if (!info || (info->d && !info->d->is_zero())) return false;
            }
    return true;
}

Form exterior_d(const Frame& frame, const Form& a) {
    Form r(a.degree() + 1);
    for (const auto& [m, c] : a.terms()) {
        Form mono = Form::basis(m);
        Form dc = frame.scalar_d(c);
        if (!dc.is_zero()) r += wedge(dc, mono);
        auto idx = mask_indices(m);
        for (std::size_t pos = 0; pos < idx.size(); ++pos) {
            const Form& de = frame.d_of(idx[pos]);
            if (de.is_zero()) continue;
            Mask before = 0, after = 0;
            for (std::size_t q = 0; q < idx.size(); ++q) {
                if (q < pos) before |= Mask{1} << idx[q];
                if (q > pos) after |= Mask{1} << idx[q];
            }
            Form t = wedge(wedge(Form::basis(before), de), Form::basis(after));
            r += (pos % 2 ? -c : c) * t;
        }
    }
    return r;
}

std::vector<std::pair<std::string, Form>> d_squared_defects(const Frame& frame) {
    std::vector<std::pair<std::string, Form>> out;
    for (int i = 0; i < frame.dim(); ++i) {
        Form dd = exterior_d(frame, frame.d_of(i));
        if (!dd.is_zero()) out.emplace_back(frame.names()[static_cast<std::size_t>(i)], dd);
    }
    for (const auto& s : frame.symbols()) {
        if (!s.d) continue;
        Form dd = exterior_d(frame, *s.d);
        if (!dd.is_zero()) out.emplace_back(s.name, dd);
    }
    return out;
}

VectorField frame_bracket(const Frame& frame, int i, int j) {
    VectorField v(frame.dim());
    if (i == j) return v;
    Mask m = (Mask{1} << i) | (Mask{1} << j);
    for (int k = 0; k < frame.dim(); ++k) {
        Scalar c = frame.d_of(k).coeff(m);
        if (c.is_zero()) continue;
        // de^k(e_i, e_j) is +c when i < j
        v.c[static_cast<std::size_t>(k)] = i < j ? -c : c;
    }
    return v;
}

Scalar directional(const Frame& frame, const VectorField& X, const Scalar& f) {
    if (f.is_constant()) return Scalar();
    return pair(frame.scalar_d(f), X);
}

VectorField bracket(const Frame& frame, const VectorField& X, const VectorField& Y) {
    int n = frame.dim();
    VectorField r(n);
    for (int a = 0; a < n; ++a) {
        const Scalar& xa = X.c[static_cast<std::size_t>(a)];
        if (xa.is_zero()) continue;
        for (int b = 0; b < n; ++b) {
            const Scalar& yb = Y.c[static_cast<std::size_t>(b)];
            if (yb.is_zero() || a == b) continue;
            r += (xa * yb) * frame_bracket(frame, a, b);
        }
    }
    for (int a = 0; a < n; ++a) {
        auto k = static_cast<std::size_t>(a);
        r.c[k] += directional(frame, X, Y.c[k]) - directional(frame, Y, X.c[k]);
    }
    return r;
}

Form lie_derivative(const Frame& frame, const VectorField& X, const Form& a) {
    Form r = contract(X, exterior_d(frame, a));
    if (a.degree() > 0) r += exterior_d(frame, contract(X, a));
    return r;
}

Form partial_t(const Frame& frame, const Form& a) {
    return a.map_coeffs([&](const Scalar& s) { return frame.scalar_dt(s); });
}

namespace {

int permutation_sign(std::vector<int> p) {
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i)
        while (p[i] != static_cast<int>(i)) {
            std::swap(p[i], p[static_cast<std::size_t>(p[i])]);
            sign = -sign;
        }
    return sign;
}

}  // namespace

Form hodge_star(const Form& a, const Matrix& metric, const std::vector<int>& orientation) {
    int n = metric.rows();
    if (metric != Matrix::identity(n))
        throw ModelError("hodge star needs a coframe declared orthonormal");
    if (static_cast<int>(orientation.size()) != n) throw ModelError("orientation must list every covector");
    std::vector<int> sorted = orientation;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i)
        if (sorted[static_cast<std::size_t>(i)] != i) throw ModelError("orientation is not a permutation");
    int s0 = permutation_sign(orientation);
    Mask full = n == 32 ? ~Mask{0} : ((Mask{1} << n) - 1);
    Form r(n - a.degree());
    for (const auto& [m, c] : a.terms()) {
        Mask comp = full & ~m;
        int s = wedge_sign(m, comp) * s0;
        r.add_term(comp, s > 0 ? c : -c);
    }
    return r;
}

namespace {

Mask drop_slot(Mask m, int normal) {
    Mask low = m & ((Mask{1} << normal) - 1);
    Mask high = (m >> (normal + 1)) << normal;
    return low | high;
}

Mask insert_slot(Mask m, int normal) {
    Mask low = m & ((Mask{1} << normal) - 1);
    Mask high = (m >> normal) << (normal + 1);
    return low | high;
}

}  // namespace

Form pullback_hypersurface(const Form& a, int normal) {
    Form r(a.degree());
    for (const auto& [m, c] : a.terms()) {
        if (m & (Mask{1} << normal)) continue;
        r.add_term(drop_slot(m, normal), c);
    }
    return r;
}

Form lift_from_hypersurface(const Form& a, int normal) {
    Form r(a.degree());
    for (const auto& [m, c] : a.terms()) r.add_term(insert_slot(m, normal), c);
    return r;
}

Frame hypersurface_frame(const Frame& frame, int normal) {
    std::vector<std::string> names;
    for (int i = 0; i < frame.dim(); ++i)
        if (i != normal) names.push_back(frame.names()[static_cast<std::size_t>(i)]);
    Frame h(names);
    for (int i = 0, k = 0; i < frame.dim(); ++i) {
        if (i == normal) continue;
        h.set_d(k++, pullback_hypersurface(frame.d_of(i), normal));
    }
    for (auto s : frame.symbols()) {
        if (s.d) s.d = pullback_hypersurface(*s.d, normal);
        h.declare_symbol(std::move(s));
    }
    if (frame.dt_index && *frame.dt_index != normal)
        h.dt_index = *frame.dt_index - (*frame.dt_index > normal ? 1 : 0);
    if (frame.theta_index && *frame.theta_index != normal)
        h.theta_index = *frame.theta_index - (*frame.theta_index > normal ? 1 : 0);
    return h;
}

Endo CoframeChange::endo_to_new(const Endo& T) const { return Endo(M * T.matrix() * Minv); }

Matrix CoframeChange::metric_to_new(const Matrix& g) const { return Minv.transpose() * g * Minv; }

CoframeChange change_coframe(const Frame& frame, const Matrix& M, std::vector<std::string> new_names) {
    int n = frame.dim();
    if (M.rows() != n || M.cols() != n) throw ModelError("coframe change matrix has the wrong shape");
    if (static_cast<int>(new_names.size()) != n) throw ModelError("coframe change needs one name per covector");
    CoframeChange ch;
    ch.M = M;
    try {
        ch.Minv = M.inverse();
    } catch (const std::domain_error&) {
        throw ModelError("coframe change matrix is singular");
    }
    for (int j = 0; j < n; ++j) {
        Form f(1), g(1);
        for (int i = 0; i < n; ++i) {
            f.add_term(Mask{1} << i, ch.Minv(j, i));
            g.add_term(Mask{1} << i, M(j, i));
        }
        ch.old_in_new.push_back(f);
        ch.new_in_old.push_back(g);
    }
    Frame nf(std::move(new_names));
    for (auto s : frame.symbols()) {
        if (s.d) s.d = ch.to_new(*s.d);
        nf.declare_symbol(std::move(s));
    }
    for (int i = 0; i < n; ++i) nf.set_d(i, ch.to_new(exterior_d(frame, ch.new_in_old[static_cast<std::size_t>(i)])));
    ch.frame = std::move(nf);
    return ch;
}

}  // namespace skt
