#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

// One schema for both output formats: a report is a list of records, each a
// kind plus named fields.  The line format writes the values positionally after
// the kind, with a "# kind: names" comment the first time a kind appears.
namespace report {

using Value = std::variant<bool, std::int64_t, double, std::string>;

struct Record {
    std::string kind;
    std::vector<std::pair<std::string, Value>> fields;

    Record& add(std::string name, Value v)
    {
        fields.emplace_back(std::move(name), std::move(v));
        return *this;
    }
    Record& add(std::string name, bool v) { return add(std::move(name), Value(v)); }
    Record& add(std::string name, double v) { return add(std::move(name), Value(v)); }
    Record& add(std::string name, int v) { return add(std::move(name), Value(std::int64_t{v})); }
    Record& add(std::string name, const char* v) { return add(std::move(name), Value(std::string(v))); }
};

struct Report {
    std::string command;
    std::string headline;  // printed first in line mode, "summary" in JSON
    std::vector<Record> records;

    Record& add(std::string kind)
    {
        records.push_back({std::move(kind), {}});
        return records.back();
    }
};

inline std::string format_value(const Value& v)
{
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, bool>)
                return x ? "true" : "false";
            else if constexpr (std::is_same_v<T, double>)
                return fmt::format("{:.17g}", x);
            else
                return fmt::format("{}", x);
        },
        v);
}

inline std::string render_lines(const Report& r)
{
    std::string out;
    if (!r.headline.empty())
        out += r.headline + "\n";
    std::vector<std::string> seen;
    for (const auto& rec : r.records) {
        if (std::find(seen.begin(), seen.end(), rec.kind) == seen.end()) {
            seen.push_back(rec.kind);
            std::string names;
            for (const auto& [name, v] : rec.fields)
                names += " " + name;
            out += fmt::format("# {}:{}\n", rec.kind, names);
        }
        out += rec.kind;
        for (const auto& [name, v] : rec.fields)
            out += " " + format_value(v);
        out += "\n";
    }
    return out;
}

inline nlohmann::ordered_json render_json(const Report& r)
{
    nlohmann::ordered_json doc;
    doc["command"] = r.command;
    if (!r.headline.empty())
        doc["summary"] = r.headline;
    doc["records"] = nlohmann::ordered_json::array();
    for (const auto& rec : r.records) {
        nlohmann::ordered_json j;
        j["kind"] = rec.kind;
        for (const auto& [name, v] : rec.fields)
            std::visit([&](const auto& x) { j[name] = x; }, v);
        doc["records"].push_back(std::move(j));
    }
    return doc;
}

inline std::string render(const Report& r, bool json)
{
    return json ? render_json(r).dump(2) + "\n" : render_lines(r);
}

}  // namespace report
