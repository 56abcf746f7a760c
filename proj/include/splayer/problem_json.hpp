#pragma once

#include "splayer/problem.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace splayer {

/// Reads a problem document (see docs/problem_schema.md). Throws ConfigError on
/// malformed JSON, missing keys or wrong types, and ParseError on bad expressions.
ProblemSpec problem_from_json(std::string_view text);
ProblemSpec load_problem(const std::filesystem::path& path);

/// Serialises a problem using each coefficient's label as its expression text.
std::string problem_to_json(const ProblemSpec& spec);

}  // namespace splayer
