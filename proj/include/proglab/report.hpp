#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace proglab {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "proglab.report/2";

struct Check {
    std::string name;
    bool passed = false;
    json measured;
    json threshold;
    std::string note;
};

struct Report {
    std::string name;
    json inputs = json::object();
    std::vector<Check> checks;
    json data = json::object();

    Check& check(std::string name, bool ok, json measured = nullptr, json threshold = nullptr,
                 std::string note = {});
    bool passed() const;
    size_t failures() const;
    json to_json() const;
    // Folds another report's checks in, prefixing names with its report name.
    void absorb(const Report& other);
};

}  // namespace proglab
