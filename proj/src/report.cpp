#include "skt/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace skt {

Check& Report::add(Check c) {
    checks.push_back(std::move(c));
    return checks.back();
}

Check& Report::add_zero(const std::string& name, const Frame& frame, const Form& f) {
    Check c;
    c.name = name;
    c.holds = f.is_zero();
    if (!c.holds) c.obstruction = frame.str(f);
    return add(std::move(c));
}

Check& Report::add_equal(const std::string& name, const Frame& frame, const Form& lhs, const Form& rhs) {
    return add_zero(name, frame, lhs - rhs);
}

Check& Report::add_flag(const std::string& name, bool holds, std::optional<std::string> obstruction) {
    Check c;
    c.name = name;
    c.holds = holds;
    if (!holds) c.obstruction = std::move(obstruction);
    return add(std::move(c));
}

Check& Report::add_info(const std::string& name, bool holds, std::optional<std::string> detail) {
    Check c;
    c.name = name;
    c.holds = holds;
    c.informational = true;
    if (detail) c.notes.push_back(*detail);
    return add(std::move(c));
}

const Check* Report::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

bool Report::holds(const std::string& name) const {
    const Check* c = find(name);
    if (!c) throw std::out_of_range("no check named '" + name + "'");
    return c->holds;
}

bool Report::all_hold() const {
    for (const auto& c : checks)
        if (!c.informational && !c.holds) return false;
    return true;
}

void Report::merge(const Report& other, const std::string& prefix) {
    for (auto c : other.checks) {
        c.name = prefix + c.name;
        checks.push_back(std::move(c));
    }
    mismatch = mismatch || other.mismatch;
}

std::string Report::json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["model"] = model;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["holds"] = c.holds;
        e["obstruction"] = c.obstruction ? nlohmann::ordered_json(*c.obstruction) : nlohmann::ordered_json(nullptr);
        e["assumptions"] = c.assumptions;
        std::vector<std::string> notes = c.notes;
        if (c.informational) notes.insert(notes.begin(), "informational");
        e["notes"] = notes;
        j["checks"].push_back(std::move(e));
    }
    j["version"] = kEngineVersion;
    return j.dump(2) + "\n";
}

std::string Report::text() const {
    std::ostringstream os;
    os << "command: " << command << "\n";
    os << "model:   " << model << "\n";
    std::size_t width = 0;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    for (const auto& c : checks) {
        os << (c.holds ? "  [holds] " : "  [fails] ") << c.name << std::string(width - c.name.size(), ' ');
        if (c.informational) os << "  (info)";
        os << "\n";
        if (c.obstruction) os << "      obstruction: " << *c.obstruction << "\n";
        for (const auto& a : c.assumptions) os << "      assumes: " << a << "\n";
        for (const auto& n : c.notes) os << "      note: " << n << "\n";
    }
    os << "verdict: " << (all_hold() ? "all checks hold" : "some checks fail") << "\n";
    return os.str();
}

std::string content_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace skt
