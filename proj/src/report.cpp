#include "gptmap/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace gptmap {

Check make_check(std::string name, double value, double reference, double tolerance, Relation relation,
                 ReferenceSource source, bool mandatory, std::string note) {
    Check c{std::move(name), value, reference, tolerance, relation, source, mandatory, false, std::move(note)};
    switch (relation) {
    case Relation::Near: c.passed = std::abs(value - reference) <= tolerance; break;
    case Relation::Below: c.passed = value < tolerance; break;
    case Relation::Above: c.passed = value > tolerance; break;
    }
    if (!std::isfinite(value)) c.passed = false;
    return c;
}

bool ValidationReport::all_mandatory_passed() const {
    for (const auto& c : checks)
        if (c.mandatory && !c.passed) return false;
    return true;
}

const Check* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string to_string(Relation r) {
    switch (r) {
    case Relation::Near: return "near";
    case Relation::Below: return "below";
    case Relation::Above: return "above";
    }
    return "?";
}

std::string to_string(ReferenceSource s) {
    switch (s) {
    case ReferenceSource::Analytic: return "analytic";
    case ReferenceSource::Published: return "published";
    case ReferenceSource::Exact: return "exact";
    }
    return "?";
}

std::string format_table(const ValidationReport& report) {
    std::ostringstream os;
    char line[512];
    std::snprintf(line, sizeof line, "%-40s %14s %14s %10s %-6s %-9s %s\n", "check", "value", "reference",
                  "tolerance", "rel", "source", "status");
    os << "# " << report.subject << "\n" << line;
    for (const auto& c : report.checks) {
        const char* status = c.passed ? "PASS" : (c.mandatory ? "FAIL" : "info");
        std::snprintf(line, sizeof line, "%-40s %14.6e %14.6e %10.2e %-6s %-9s %s\n", c.name.c_str(), c.value,
                      c.reference, c.tolerance, to_string(c.relation).c_str(), to_string(c.source).c_str(), status);
        os << line;
    }
    return os.str();
}

} // namespace gptmap
