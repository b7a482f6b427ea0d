// Named verdicts with exact obstruction forms, and their serialization.
#pragma once

#include "skt/frame.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skt {

inline constexpr const char* kEngineVersion = "1.0.0";

struct Check {
    std::string name;
    bool holds = true;
    std::optional<std::string> obstruction;
    std::vector<std::string> assumptions;
    std::vector<std::string> notes;
    // Informational checks are reported but do not decide the exit status.
    bool informational = false;
};

// Raised when a reduced criterion and the direct total-space computation
// disagree although the criterion's hypotheses hold.
struct MismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Report {
public:
    std::string command;
    std::string model;
    std::vector<Check> checks;
    bool mismatch = false;

    Check& add(Check c);
    // Holds iff the form vanishes; the form is printed as the obstruction.
    Check& add_zero(const std::string& name, const Frame& frame, const Form& f);
    // Holds iff lhs == rhs; the obstruction is lhs - rhs.
    Check& add_equal(const std::string& name, const Frame& frame, const Form& lhs, const Form& rhs);
    Check& add_flag(const std::string& name, bool holds, std::optional<std::string> obstruction = std::nullopt);
    Check& add_info(const std::string& name, bool holds, std::optional<std::string> detail = std::nullopt);

    const Check* find(const std::string& name) const;
    bool holds(const std::string& name) const;
    bool all_hold() const;
    void merge(const Report& other, const std::string& prefix = "");

    std::string json() const;
    std::string text() const;
};

// 64-bit FNV-1a, printed as 16 hex digits.
std::string content_hash(const std::string& text);

}  // namespace skt
