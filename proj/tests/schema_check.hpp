#pragma once

// Minimal JSON Schema validator covering the keywords used by
// schema/report.schema.json: type, required, properties, patternProperties,
// additionalProperties, items, minimum and local $ref.

#include <fstream>
#include <regex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace loopsing::testing {

using nlohmann::json;

inline json load_schema(const std::string& path)
{
    std::ifstream in(path);
    return json::parse(in);
}

class SchemaValidator {
public:
    explicit SchemaValidator(json root) : root_(std::move(root)) {}

    /// Empty on success; one message per violation otherwise.
    std::vector<std::string> validate(const json& doc) const
    {
        std::vector<std::string> errs;
        check(root_, doc, "$", errs);
        return errs;
    }

private:
    static bool has_type(const json& v, const std::string& t)
    {
        if (t == "object") return v.is_object();
        if (t == "array") return v.is_array();
        if (t == "string") return v.is_string();
        if (t == "boolean") return v.is_boolean();
        if (t == "null") return v.is_null();
        if (t == "integer") return v.is_number_integer();
        if (t == "number") return v.is_number();
        return false;
    }

    const json& resolve(const json& schema) const
    {
        if (!schema.contains("$ref")) {
            return schema;
        }
        const auto ref = schema.at("$ref").get<std::string>();
        return root_.at(json::json_pointer(ref.substr(1)));
    }

    void check(const json& raw, const json& v, const std::string& at, std::vector<std::string>& errs) const
    {
        const json& s = resolve(raw);
        if (s.contains("type")) {
            bool ok = false;
            if (s["type"].is_array()) {
                for (const auto& t : s["type"]) {
                    ok = ok || has_type(v, t.get<std::string>());
                }
            } else {
                ok = has_type(v, s["type"].get<std::string>());
            }
            if (!ok) {
                errs.push_back(at + ": expected type " + s["type"].dump());
                return;
            }
        }
        if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>()) {
            errs.push_back(at + ": below minimum");
        }
        if (v.is_array() && s.contains("items")) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                check(s["items"], v[i], at + "[" + std::to_string(i) + "]", errs);
            }
        }
        if (!v.is_object()) {
            return;
        }
        const json required = s.value("required", json::array());
        for (const auto& key : required) {
            if (!v.contains(key.get<std::string>())) {
                errs.push_back(at + ": missing " + key.get<std::string>());
            }
        }
        const json patterns = s.value("patternProperties", json::object());
        for (const auto& [key, value] : v.items()) {
            bool matched = false;
            if (s.contains("properties") && s["properties"].contains(key)) {
                matched = true;
                check(s["properties"][key], value, at + "." + key, errs);
            }
            for (const auto& [pattern, sub] : patterns.items()) {
                if (std::regex_search(key, std::regex(pattern))) {
                    matched = true;
                    check(sub, value, at + "." + key, errs);
                }
            }
            if (!matched && s.contains("additionalProperties")) {
                const auto& ap = s["additionalProperties"];
                if (ap.is_boolean()) {
                    if (!ap.get<bool>()) {
                        errs.push_back(at + ": unexpected key " + key);
                    }
                } else {
                    check(ap, value, at + "." + key, errs);
                }
            }
        }
    }

    json root_;
};

}  // namespace loopsing::testing
