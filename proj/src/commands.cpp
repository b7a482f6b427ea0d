#include "skt/commands.hpp"

#include "skt/connections.hpp"
#include "skt/lie.hpp"

#include <algorithm>
#include <sstream>

namespace skt {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

template <class T>
bool has(const Named<T>& list, const std::string& name) {
    return std::any_of(list.begin(), list.end(), [&](const auto& p) { return p.first == name; });
}

std::string kind_of(const Model& m, const std::string& name) {
    for (const auto& s : m.structures)
        if (s.name == name) return s.kind;
    throw UsageError("no structure named '" + name + "'");
}

// First structure among the preferred kinds, or the named one.
std::pair<std::string, std::string> pick_any(const Model& m, const Command& c, const std::vector<std::string>& kinds) {
    if (!c.structure.empty()) {
        std::string k = kind_of(m, c.structure);
        if (std::find(kinds.begin(), kinds.end(), k) == kinds.end())
            throw UsageError("structure '" + c.structure + "' is a " + k + " structure");
        return {k, c.structure};
    }
    for (const auto& k : kinds)
        for (const auto& s : m.structures)
            if (s.kind == k) return {k, s.name};
    std::string all;
    for (const auto& k : kinds) all += (all.empty() ? "" : "/") + k;
    throw UsageError("the model declares no " + all + " structure");
}

const AlmostContactMetric& contact_of(const Model& m, const Command& c) {
    return lookup(m.contact, pick_any(m, c, {"contact"}).second);
}

const SU2Structure& su2_of(const Model& m, const Command& c) {
    auto [k, n] = pick_any(m, c, {"su2", "family"});
    return k == "su2" ? lookup(m.su2, n) : lookup(m.family, n);
}

Hermitian hermitian_of(const Model& m, const Command& c) {
    auto [k, n] = pick_any(m, c, {"hermitian", "su3"});
    return k == "hermitian" ? lookup(m.hermitian, n) : su3_hermitian(lookup(m.su3, n));
}

std::vector<SamplePoint> samples_of(const Model& m, const Command& c) {
    std::vector<SamplePoint> out = m.samples;
    if (c.samples.empty()) return out;
    SamplePoint p;
    for (const auto& s : c.samples) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw UsageError("--sample expects NAME=RAT, got '" + s + "'");
        std::string name = s.substr(0, eq);
        const SymbolInfo* info = m.frame.symbol(name);
        if (!info) throw UsageError("--sample: unknown symbol '" + name + "'");
        try {
            mpq_class q(s.substr(eq + 1));
            q.canonicalize();
            p[info->var] = q;
        } catch (const std::invalid_argument&) {
            throw UsageError("--sample: bad rational in '" + s + "'");
        }
    }
    out.push_back(p);
    return out;
}

Form parse_arg_form(const Model& m, const std::string& text, const std::string& flag) {
    if (text.empty()) throw UsageError(flag + " is required");
    try {
        return m.parse_form(text);
    } catch (const ParseError& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

Report check_command(const Model& m, const Command& c) {
    const Frame& f = m.frame;
    const std::string& w = c.what;
    if (w == "normal") {
        const auto& acm = contact_of(m, c);
        Report r = validate_acm(acm, f);
        r.merge(check_normal(acm, f));
        return r;
    }
    if (w == "quasi-sasakian" || w == "classify") {
        ContactClass cc = classify_contact(contact_of(m, c), f);
        Report r = cc.report;
        if (w == "classify") {
            for (auto& ch : r.checks) ch.informational = true;
            r.add_info("class", true, cc.label + (cc.alpha ? " (alpha = " + cc.alpha->str() + ")" : ""));
        }
        return r;
    }
    if (w == "skt") return check_skt(hermitian_of(m, c), f);
    if (w == "su2") return validate_su2(su2_of(m, c), f, samples_of(m, c));
    if (w == "su3") {
        const auto& s = lookup(m.su3, pick_any(m, c, {"su3"}).second);
        Report r = validate_su3(s, f);
        for (const auto& ch : check_skt_su3(s, f).checks)
            if (!r.find(ch.name)) r.add(ch);
        return r;
    }
    if (w == "balanced") {
        auto [k, n] = pick_any(m, c, {"hermitian", "su3", "su2", "family"});
        if (k == "su2" || k == "family") {
            const auto& s = k == "su2" ? lookup(m.su2, n) : lookup(m.family, n);
            Report r;
            r.add_zero("balanced.d_w1_w1", f, f.d(wedge(s.w1, s.w1)));
            r.add_zero("balanced.d_w2_eta", f, f.d(wedge(s.w2, s.eta)));
            r.add_zero("balanced.d_w3_eta", f, f.d(wedge(s.w3, s.eta)));
            bool ok = r.all_hold();
            r.add_flag("balanced", ok, "some balanced SU(2) condition fails");
            return r;
        }
        Hermitian her = k == "hermitian" ? lookup(m.hermitian, n) : su3_hermitian(lookup(m.su3, n));
        if (f.dim() % 2) throw UsageError("balanced needs an even-dimensional frame");
        return check_balanced(fundamental_form(her), f, f.dim() / 2);
    }
    throw UsageError("--what must be normal, skt, quasi-sasakian, classify, su2, su3 or balanced");
}

const ContactTriple& triple_of(const Model& m, const Command& c) {
    return lookup(m.triple, pick_any(m, c, {"triple"}).second);
}

int parse_normal(const Frame& f, const std::string& text) {
    if (text.empty()) throw UsageError("--normal is required");
    bool neg = text[0] == '-';
    std::string name = neg ? text.substr(1) : text;
    auto i = f.index_of(name);
    if (!i) throw UsageError("--normal: unknown covector '" + name + "'");
    return neg ? -(*i + 1) : *i;
}

Report induce_command(const Model& m, const Command& c) {
    int normal = parse_normal(m.frame, c.normal);
    int slot = normal < 0 ? -normal - 1 : normal;
    auto [k, n] = pick_any(m, c, {"su3", "hermitian"});
    Induced ind = k == "su3" ? induce_hypersurface(lookup(m.su3, n), m.frame, normal)
                             : induce_hypersurface(lookup(m.hermitian, n), m.frame, normal);
    Report r = ind.report;
    r.add_info("hypersurface.eta", true, ind.frame.str(ind.acm.eta));
    r.add_info("hypersurface.omega", true, ind.frame.str(ind.omega));
    if (!ind.has_su2) return r;
    // Declared SU(2) structures written in the ambient coframe without the
    // normal are compared with the induced one.
    for (const auto& [name, s] : m.su2) {
        Mask nm = Mask{1} << slot;
        if ((s.eta.support() | s.w1.support() | s.w2.support() | s.w3.support()) & nm) continue;
        std::string p = "hypersurface.matches." + name + ".";
        const Frame& H = ind.frame;
        r.add_equal(p + "eta", H, ind.su2.eta, pullback_hypersurface(s.eta, slot));
        r.add_equal(p + "w1", H, ind.su2.w1, pullback_hypersurface(s.w1, slot));
        r.add_equal(p + "w2", H, ind.su2.w2, pullback_hypersurface(s.w2, slot));
        r.add_equal(p + "w3", H, ind.su2.w3, pullback_hypersurface(s.w3, slot));
    }
    r.add_info("hypersurface.w1", true, ind.frame.str(ind.su2.w1));
    r.add_info("hypersurface.w2", true, ind.frame.str(ind.su2.w2));
    r.add_info("hypersurface.w3", true, ind.frame.str(ind.su2.w3));
    return r;
}

Matrix metric_for_connection(const Model& m, const Command& c, Hermitian* her, const AlmostContactMetric** acm) {
    if (c.type == "bismut") {
        *her = hermitian_of(m, c);
        return her->h;
    }
    if (c.type == "contact") {
        *acm = &contact_of(m, c);
        return (*acm)->g;
    }
    if (!c.structure.empty()) {
        std::string k = kind_of(m, c.structure);
        if (k == "contact") return lookup(m.contact, c.structure).g;
        if (k == "hermitian") return lookup(m.hermitian, c.structure).h;
        if (k == "su3") return lookup(m.su3, c.structure).h;
        if (k == "su2" || k == "family") return su2_of(m, c).g;
        throw UsageError("structure '" + c.structure + "' carries no single metric");
    }
    if (!m.metrics.empty()) return m.metrics.front().second;
    return Matrix::identity(m.frame.dim());
}

Report connection_command(const Model& m, const Command& c) {
    const Frame& f = m.frame;
    Report r;
    Hermitian her;
    const AlmostContactMetric* acm = nullptr;
    Matrix g = metric_for_connection(m, c, &her, &acm);
    ConnectionForms conn;
    if (c.type == "levi-civita") {
        conn = levi_civita(f, g);
        Form T = torsion_form(conn, f, &r);
        r.add_zero("levi_civita.torsion_free", f, T);
    } else if (c.type == "bismut") {
        BismutResult b = bismut(her, f);
        conn = b.conn;
        r.merge(b.report);
        r.add_info("bismut.torsion", true, "T = " + f.str(b.torsion));
        Check& dT = r.add_zero("torsion.closed", f, f.d(b.torsion));
        dT.informational = true;
        std::vector<int> orient;
        for (int i = 0; i < f.dim(); ++i) orient.push_back(i);
        Form starT = hodge_star(b.torsion, g, orient);
        Check& cc = r.add_zero("torsion.coclosed", f, f.d(starT));
        cc.informational = true;
        cc.notes.push_back("*T = " + f.str(starT) + " (orientation " + f.names().front() + "..." + f.names().back() + ")");
    } else if (c.type == "contact") {
        ContactConnectionResult cr = contact_connection(*acm, f);
        conn = cr.conn;
        r.merge(cr.report);
    } else {
        throw UsageError("--type must be levi-civita, bismut or contact");
    }
    CurvatureForms curv;
    bool have_curv = c.curvature || c.holonomy_span;
    if (have_curv) curv = curvature(conn, f);
    if (c.curvature) {
        int n = f.dim();
        bool agree = true;
        for (int a = 0; a < n && agree; ++a)
            for (int b = a + 1; b < n && agree; ++b)
                if (curvature_bruteforce(conn, f, a, b) != curv.endo(a, b)) agree = false;
        Check& ag = r.add_flag("curvature.crossval", agree, "curvature forms disagree with [G_a,G_b] - G_[a,b]");
        if (!agree) r.mismatch = true;
        (void)ag;
        for (int k = 0; k < n; ++k)
            for (int j = k + 1; j < n; ++j)
                if (!curv.at(k, j).is_zero())
                    r.add_info("curvature." + f.names()[static_cast<std::size_t>(k)] + "_" +
                                   f.names()[static_cast<std::size_t>(j)],
                               true, f.str(curv.at(k, j)));
    }
    for (const auto& p : c.parallel) {
        if (has(m.endos, p)) {
            r.add(parallel_check(conn, f, "parallel." + p, lookup(m.endos, p)));
            continue;
        }
        r.add(parallel_check(conn, f, "parallel." + p, parse_arg_form(m, p, "--parallel")));
    }
    if (c.holonomy_span) r.merge(curvature_span(conn, curv, f).report);
    return r;
}

Report cohomology_command(const Model& m, const Command& c) {
    if (c.k < 0 || c.k > m.frame.dim()) throw UsageError("-k must lie between 0 and the frame dimension");
    CohomologyBasis h = cohomology(m.frame, c.k);
    Report r;
    r.add_info("cohomology.betti", true, "b_" + std::to_string(c.k) + " = " + std::to_string(h.betti));
    for (std::size_t i = 0; i < h.representatives.size(); ++i)
        r.add_info("cohomology.class." + std::to_string(i + 1), true, m.frame.str(h.representatives[i]));
    if (!h.nongeneric.empty()) {
        std::string s;
        for (const auto& p : h.nongeneric) s += (s.empty() ? "" : ", ") + p.str();
        r.add_info("cohomology.generic", true, "valid where these are nonzero: " + s);
    }
    return r;
}

Report props_command(const Model& m) {
    AlgebraProps p = algebra_props(m.frame);
    Report r = p.report;
    std::string b;
    for (int x : betti_numbers(m.frame)) b += (b.empty() ? "" : ", ") + std::to_string(x);
    r.add_info("lie.betti_numbers", true, "(" + b + ")");
    return r;
}

Report dispatch(const Model& m, const Command& c) {
    const Frame& f = m.frame;
    if (c.sub == "check") return check_command(m, c);
    if (c.sub == "bundle") {
        Form Omega = parse_arg_form(m, c.omega, "--omega");
        if (c.check == "skt") return check_skt_bundle(contact_of(m, c), f, Omega);
        if (c.check == "hkt") return check_hkt_bundle(triple_of(m, c), f, Omega);
        throw UsageError("bundle --check must be skt or hkt");
    }
    if (c.sub == "product") {
        if (c.check == "skt") return check_skt_product(contact_of(m, c), f);
        if (c.check == "hkt") return check_hkt_product(triple_of(m, c), f, samples_of(m, c));
        if (c.check == "su3") return su3_product_from_su2(su2_of(m, c), f).report;
        throw UsageError("product --check must be skt, hkt or su3");
    }
    if (c.sub == "cone") {
        if (c.check == "skt") return check_skt_cone(contact_of(m, c), f);
        if (c.check == "su3") return su3_cone_from_su2(su2_of(m, c), f).report;
        throw UsageError("cone --check must be skt or su3");
    }
    if (c.sub == "induce") return induce_command(m, c);
    if (c.sub == "evolve") {
        auto [k, n] = pick_any(m, c, {"family"});
        (void)k;
        return assemble_su3_from_family(lookup(m.family, n), f).report;
    }
    if (c.sub == "connection") return connection_command(m, c);
    if (c.sub == "cohomology") return cohomology_command(m, c);
    if (c.sub == "props") return props_command(m);
    throw UsageError("unknown subcommand '" + c.sub + "'");
}

}  // namespace

std::string Command::str() const {
    std::ostringstream os;
    os << sub;
    if (!what.empty()) os << " --what " << what;
    if (!omega.empty()) os << " --omega " << omega;
    if (!check.empty()) os << " --check " << check;
    if (sub == "evolve") os << " --check";
    if (!normal.empty()) os << " --normal " << normal;
    if (!type.empty()) os << " --type " << type;
    if (curvature) os << " --curvature";
    if (!parallel.empty()) {
        os << " --parallel ";
        for (std::size_t i = 0; i < parallel.size(); ++i) os << (i ? "," : "") << parallel[i];
    }
    if (holonomy_span) os << " --holonomy-span";
    if (k >= 0) os << " -k " << k;
    if (!structure.empty()) os << " --structure " << structure;
    for (const auto& s : samples) os << " --sample " << s;
    if (emit_extension) os << " --emit-extension";
    return os.str();
}

Command parse_command(const std::string& line) {
    auto toks = split(line, ' ');
    if (toks.empty()) throw UsageError("empty command");
    Command c;
    c.sub = toks[0];
    for (std::size_t i = 1; i < toks.size(); ++i) {
        const std::string& t = toks[i];
        auto value = [&]() -> std::string {
            if (i + 1 >= toks.size()) throw UsageError(t + " needs a value");
            return toks[++i];
        };
        if (t == "--what") c.what = value();
        else if (t == "--structure") c.structure = value();
        else if (t == "--omega") c.omega = value();
        else if (t == "--check" && c.sub == "evolve") continue;
        else if (t == "--check") c.check = value();
        else if (t == "--normal") c.normal = value();
        else if (t == "--type") c.type = value();
        else if (t == "--curvature") c.curvature = true;
        else if (t == "--holonomy-span") c.holonomy_span = true;
        else if (t == "--emit-extension") c.emit_extension = true;
        else if (t == "--parallel") {
            for (const auto& p : split(value(), ',')) c.parallel.push_back(p);
        } else if (t == "-k") {
            try {
                c.k = std::stoi(value());
            } catch (const std::exception&) {
                throw UsageError("-k expects an integer");
            }
        } else if (t == "--sample") c.samples.push_back(value());
        else throw UsageError("unknown option '" + t + "'");
    }
    return c;
}

Report run_command(const Model& model, const Command& cmd) {
    Report r = dispatch(model, cmd);
    r.command = cmd.str();
    r.model = model.hash();
    if (!model.assumptions.empty())
        for (auto& c : r.checks) c.assumptions.insert(c.assumptions.end(), model.assumptions.begin(), model.assumptions.end());
    return r;
}

std::string emit_extension(const Model& m, const Command& c) {
    Extension e;
    if (c.sub == "bundle") {
        if (c.check == "hkt") throw UsageError("--emit-extension supports a single complex structure (skt)");
        e = extend_s1_bundle(contact_of(m, c), m.frame, parse_arg_form(m, c.omega, "--omega"));
    } else if (c.sub == "product") {
        e = product_with_line(contact_of(m, c), m.frame);
    } else if (c.sub == "cone") {
        e = riemannian_cone(contact_of(m, c), m.frame);
    } else {
        throw UsageError("--emit-extension applies to bundle, product and cone");
    }
    Model out = hermitian_model(e.frame, e.her);
    out.assumptions = m.assumptions;
    return print_model(out);
}

int exit_code(const Report& r) {
    if (r.mismatch) return 3;
    return r.all_hold() ? 0 : 1;
}

}  // namespace skt
