#include "skt/fixtures.hpp"

#include <map>
#include <sstream>

namespace skt {

namespace detail {
const std::vector<std::pair<std::string, std::string>>& fixture_texts();
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// Manifest lines: "#! <command> => <check> = true|false [<provenance>]"
Expectation parse_expectation(const std::string& fixture, const std::string& line) {
    auto bad = [&]() -> ModelError { return ModelError(fixture + ": malformed manifest line: " + line); };
    auto arrow = line.find("=>");
    auto open = line.find('[', arrow);
    auto close = line.rfind(']');
    if (arrow == std::string::npos || open == std::string::npos || close == std::string::npos || close < open)
        throw bad();
    Expectation e;
    e.command = trim(line.substr(0, arrow));
    std::string mid = line.substr(arrow + 2, open - arrow - 2);
    auto eq = mid.rfind('=');
    if (eq == std::string::npos) throw bad();
    e.check = trim(mid.substr(0, eq));
    std::string v = trim(mid.substr(eq + 1));
    if (v != "true" && v != "false") throw bad();
    e.holds = v == "true";
    e.provenance = trim(line.substr(open + 1, close - open - 1));
    return e;
}

std::vector<Fixture> build() {
    std::vector<Fixture> out;
    for (const auto& [name, text] : detail::fixture_texts()) {
        Fixture f{name, text, {}};
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line))
            if (line.rfind("#!", 0) == 0) f.manifest.push_back(parse_expectation(name, line.substr(2)));
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> catalog = build();
    return catalog;
}

const Fixture& fixture(const std::string& name) {
    for (const auto& f : fixtures())
        if (f.name == name) return f;
    throw ModelError("unknown fixture '" + name + "'");
}

Model load_fixture(const std::string& name) { return parse_model(fixture(name).text); }

std::vector<ManifestResult> run_manifest(const Fixture& f) {
    std::vector<ManifestResult> out;
    Model m;
    std::string load_error;
    try {
        m = parse_model(f.text);
    } catch (const std::exception& e) {
        load_error = e.what();
    }
    std::map<std::string, Report> cache;
    std::map<std::string, std::string> errors;
    for (const auto& e : f.manifest) {
        ManifestResult r;
        r.fixture = f.name;
        r.expected = e;
        if (!load_error.empty()) {
            r.error = load_error;
            out.push_back(r);
            continue;
        }
        if (!cache.count(e.command) && !errors.count(e.command)) {
            try {
                cache[e.command] = run_command(m, parse_command(e.command));
            } catch (const std::exception& ex) {
                errors[e.command] = ex.what();
            }
        }
        if (errors.count(e.command)) {
            r.error = errors[e.command];
        } else {
            const Report& rep = cache[e.command];
            r.mismatch = rep.mismatch;
            if (const Check* c = rep.find(e.check)) {
                r.found = true;
                r.actual = c->holds;
            } else {
                r.error = "no check named '" + e.check + "' in the report";
            }
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace skt
