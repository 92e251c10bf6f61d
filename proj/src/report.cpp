#include "proglab/report.hpp"

namespace proglab {

Check& Report::check(std::string cname, bool ok, json measured, json threshold, std::string note) {
    checks.push_back({std::move(cname), ok, std::move(measured), std::move(threshold), std::move(note)});
    return checks.back();
}

bool Report::passed() const { return failures() == 0; }

size_t Report::failures() const {
    size_t n = 0;
    for (const auto& c : checks) n += c.passed ? 0 : 1;
    return n;
}

json Report::to_json() const {
    json j;
    j["name"] = name;
    j["passed"] = passed();
    j["inputs"] = inputs;
    json cs = json::array();
    for (const auto& c : checks) {
        json cj;
        cj["name"] = c.name;
        cj["passed"] = c.passed;
        if (!c.measured.is_null()) cj["measured"] = c.measured;
        if (!c.threshold.is_null()) cj["threshold"] = c.threshold;
        if (!c.note.empty()) cj["note"] = c.note;
        cs.push_back(std::move(cj));
    }
    j["checks"] = std::move(cs);
    if (!data.empty()) j["data"] = data;
    return j;
}

void Report::absorb(const Report& other) {
    for (const auto& c : other.checks) {
        Check copy = c;
        copy.name = other.name + "/" + c.name;
        checks.push_back(std::move(copy));
    }
}

}  // namespace proglab
