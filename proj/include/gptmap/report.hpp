#pragma once

#include <string>
#include <vector>

namespace gptmap {

/// How a check's value is judged against its tolerance.
enum class Relation {
    Near,   // |value - reference| <= tolerance
    Below,  // value < tolerance
    Above,  // value > tolerance (negative controls)
};

/// Where the reference value comes from.
enum class ReferenceSource {
    Analytic,   // closed form or independent computation
    Published,  // reported numerical value
    Exact,      // identity that holds by construction
};

struct Check {
    std::string name;
    double value = 0.0;
    double reference = 0.0;
    double tolerance = 0.0;
    Relation relation = Relation::Below;
    ReferenceSource source = ReferenceSource::Analytic;
    bool mandatory = true;
    bool passed = false;
    std::string note;
};

Check make_check(std::string name, double value, double reference, double tolerance, Relation relation,
                 ReferenceSource source, bool mandatory = true, std::string note = {});

struct ValidationReport {
    std::string subject;
    std::vector<Check> checks;

    void add(Check c) { checks.push_back(std::move(c)); }
    bool all_mandatory_passed() const;
    const Check* find(const std::string& name) const;
};

std::string to_string(Relation r);
std::string to_string(ReferenceSource s);

/// Fixed-width text table, one row per check.
std::string format_table(const ValidationReport& report);

} // namespace gptmap
