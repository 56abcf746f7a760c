#include "splayer/problem_json.hpp"

#include "splayer/error.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace splayer {

namespace {

using nlohmann::json;

const json& require(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        throw ConfigError(fmt::format("problem document: missing key '{}'", key));
    }
    return *it;
}

Coefficient coefficient(const json& doc, const char* key) {
    const json& v = require(doc, key);
    if (v.is_number()) {
        return Coefficient::parse(fmt::format("{}", v.get<double>()));
    }
    if (!v.is_string()) {
        throw ConfigError(fmt::format("problem document: '{}' must be an expression string", key));
    }
    try {
        return Coefficient::parse(v.get<std::string>());
    } catch (const ParseError& err) {
        throw ConfigError(fmt::format("problem document: '{}': {}", key, err.what()));
    }
}

double number(const json& doc, const char* key) {
    const json& v = require(doc, key);
    if (!v.is_number()) {
        throw ConfigError(fmt::format("problem document: '{}' must be a number", key));
    }
    return v.get<double>();
}

std::optional<double> optional_number(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_number()) {
        throw ConfigError(fmt::format("problem document: overrides.{} must be a number", key));
    }
    return it->get<double>();
}

}  // namespace

ProblemSpec problem_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ConfigError(fmt::format("problem document is not valid JSON: {}", err.what()));
    }
    if (!doc.is_object()) {
        throw ConfigError("problem document must be a JSON object");
    }
    ProblemSpec spec{
        .a_left = coefficient(doc, "a_left"),
        .a_right = coefficient(doc, "a_right"),
        .b = coefficient(doc, "b"),
        .f_left = coefficient(doc, "f_left"),
        .f_right = coefficient(doc, "f_right"),
        .d = number(doc, "d"),
        .y0 = number(doc, "y0"),
        .y1 = number(doc, "y1"),
        .epsilon = doc.contains("epsilon") ? number(doc, "epsilon") : 1.0,
        .mu = doc.contains("mu") ? number(doc, "mu") : 1.0,
        .overrides = {},
    };
    if (auto it = doc.find("overrides"); it != doc.end() && !it->is_null()) {
        if (!it->is_object()) {
            throw ConfigError("problem document: 'overrides' must be an object");
        }
        for (const auto& [key, _] : it->items()) {
            if (key != "alpha1" && key != "alpha2" && key != "rho" && key != "gamma") {
                throw ConfigError(fmt::format("problem document: unknown override '{}'", key));
            }
        }
        spec.overrides.alpha1 = optional_number(*it, "alpha1");
        spec.overrides.alpha2 = optional_number(*it, "alpha2");
        spec.overrides.rho = optional_number(*it, "rho");
        spec.overrides.gamma = optional_number(*it, "gamma");
    }
    return spec;
}

ProblemSpec load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot open problem file '{}'", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return problem_from_json(buf.str());
}

std::string problem_to_json(const ProblemSpec& spec) {
    json doc = {
        {"a_left", spec.a_left.label()},
        {"a_right", spec.a_right.label()},
        {"b", spec.b.label()},
        {"f_left", spec.f_left.label()},
        {"f_right", spec.f_right.label()},
        {"d", spec.d},
        {"y0", spec.y0},
        {"y1", spec.y1},
        {"epsilon", spec.epsilon},
        {"mu", spec.mu},
    };
    json overrides = json::object();
    if (spec.overrides.alpha1) overrides["alpha1"] = *spec.overrides.alpha1;
    if (spec.overrides.alpha2) overrides["alpha2"] = *spec.overrides.alpha2;
    if (spec.overrides.rho) overrides["rho"] = *spec.overrides.rho;
    if (spec.overrides.gamma) overrides["gamma"] = *spec.overrides.gamma;
    if (!overrides.empty()) {
        doc["overrides"] = overrides;
    }
    return doc.dump(2);
}

}  // namespace splayer
