// sktgeo: command-line front end over .geo models.
#include "skt/fixtures.hpp"
#include "skt/random_models.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace skt;

struct Options {
    std::string format = "text";
    std::vector<std::string> samples;
    std::optional<std::uint64_t> seed;
    std::string input;
    Command cmd;
    std::string parallel;
    bool run_all = false;
};

std::string read_input(const std::string& input) {
    namespace fs = std::filesystem;
    if (fs::is_regular_file(input)) {
        std::ifstream in(input, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    for (const auto& f : fixtures())
        if (f.name == input) return f.text;
    throw UsageError("no such file or fixture: " + input);
}

void emit(const Report& r, const std::string& format) { std::cout << (format == "json" ? r.json() : r.text()); }

int run_fixtures(const Options& o) {
    if (!o.run_all) {
        for (const auto& f : fixtures()) std::cout << f.name << "  (" << f.manifest.size() << " expectations)\n";
        return 0;
    }
    Report r;
    r.command = "fixtures --run-all";
    std::string all;
    for (const auto& f : fixtures()) all += f.name + "\n" + f.text;
    r.model = content_hash(all);
    for (const auto& f : fixtures()) {
        for (const auto& res : run_manifest(f)) {
            Check c;
            c.name = f.name + ": " + res.expected.command + " => " + res.expected.check;
            c.holds = res.ok();
            c.notes.push_back(res.expected.provenance);
            c.notes.push_back(std::string("expected ") + (res.expected.holds ? "true" : "false"));
            if (!res.error.empty()) c.obstruction = res.error;
            else if (!c.holds) c.obstruction = std::string("actual ") + (res.actual ? "true" : "false");
            if (res.mismatch) r.mismatch = true;
            r.add(std::move(c));
        }
    }
    if (o.seed) {
        for (const auto& rc : random_crossval_cases(*o.seed, 50)) {
            Report cr = crossval_report(rc);
            Check c;
            c.name = "random." + rc.label;
            c.holds = !cr.mismatch;
            if (cr.mismatch) {
                r.mismatch = true;
                c.obstruction = "reduced criterion disagrees with the direct computation";
            }
            r.add(std::move(c));
        }
    }
    emit(r, o.format);
    return exit_code(r);
}

int run(const Options& o) {
    if (o.cmd.sub == "fixtures") return run_fixtures(o);
    Model m = parse_model(read_input(o.input));
    for (const auto& w : m.warnings) std::cerr << "warning: " << w << "\n";
    Command cmd = o.cmd;
    cmd.samples = o.samples;
    if (cmd.emit_extension) {
        std::cout << emit_extension(m, cmd);
        return exit_code(run_command(m, cmd));
    }
    Report r = run_command(m, cmd);
    emit(r, o.format);
    return exit_code(r);
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Exact checks for SKT, HKT and related structures on coframe algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--sample", o.samples, "Rational sample value NAME=RAT (repeatable)");
    app.add_option("--seed", o.seed, "Seed for randomized cross-validation cases");

    auto input = [&](CLI::App* sc) { sc->add_option("input", o.input, "Model file or fixture name")->required(); };
    auto structure = [&](CLI::App* sc) { sc->add_option("--structure", o.cmd.structure, "Structure name"); };

    auto* check = app.add_subcommand("check", "Check a structure on the model");
    input(check);
    check->add_option("--what", o.cmd.what)
        ->required()
        ->check(CLI::IsMember({"normal", "skt", "quasi-sasakian", "classify", "su2", "su3", "balanced"}));
    structure(check);

    auto* bundle = app.add_subcommand("bundle", "Circle bundle with curvature Omega");
    input(bundle);
    bundle->add_option("--omega", o.cmd.omega, "Curvature 2-form (expression or form name)")->required();
    bundle->add_option("--check", o.cmd.check)->required()->check(CLI::IsMember({"skt", "hkt"}));
    bundle->add_flag("--emit-extension", o.cmd.emit_extension, "Print the total space as a model");
    structure(bundle);

    auto* product = app.add_subcommand("product", "Product with a line");
    input(product);
    product->add_option("--check", o.cmd.check)->required()->check(CLI::IsMember({"skt", "hkt", "su3"}));
    product->add_flag("--emit-extension", o.cmd.emit_extension, "Print the total space as a model");
    structure(product);

    auto* cone = app.add_subcommand("cone", "Riemannian cone");
    input(cone);
    cone->add_option("--check", o.cmd.check)->required()->check(CLI::IsMember({"skt", "su3"}));
    cone->add_flag("--emit-extension", o.cmd.emit_extension, "Print the total space as a model");
    structure(cone);

    auto* induce = app.add_subcommand("induce", "Structure induced on a hypersurface");
    input(induce);
    induce->add_option("--normal", o.cmd.normal, "Unit normal covector, optionally negated (-e6)")->required();
    structure(induce);

    bool evolve_check = false;
    auto* evolve = app.add_subcommand("evolve", "Evolution equations of an SU(2) family");
    input(evolve);
    evolve->add_flag("--check", evolve_check, "Check the evolution equations")->required();
    structure(evolve);

    auto* conn = app.add_subcommand("connection", "Metric connections and curvature");
    input(conn);
    conn->add_option("--type", o.cmd.type)->required()->check(CLI::IsMember({"levi-civita", "bismut", "contact"}));
    conn->add_flag("--curvature", o.cmd.curvature);
    conn->add_option("--parallel", o.parallel, "Comma-separated forms to test for parallelism");
    conn->add_flag("--holonomy-span", o.cmd.holonomy_span);
    structure(conn);

    auto* coh = app.add_subcommand("cohomology", "Lie algebra cohomology");
    input(coh);
    coh->add_option("-k", o.cmd.k, "Degree")->required();

    auto* props = app.add_subcommand("props", "Lie algebra invariants");
    input(props);

    auto* fx = app.add_subcommand("fixtures", "List or run the fixture catalog");
    fx->add_flag("--run-all", o.run_all, "Run every fixture manifest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    o.cmd.sub = app.get_subcommands().front()->get_name();
    if (!o.parallel.empty()) {
        std::stringstream ss(o.parallel);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) o.cmd.parallel.push_back(item);
    }
    try {
        return run(o);
    } catch (const MismatchError& e) {
        std::cerr << "mismatch: " << e.what() << "\n";
        return 3;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ModelError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
