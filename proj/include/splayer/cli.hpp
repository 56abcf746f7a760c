#pragma once

#include "splayer/analysis.hpp"
#include "splayer/mesh.hpp"
#include "splayer/problem.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace splayer::cli {

enum class Subcommand { Solve, Converge, Compare, Mesh, Manufactured };
enum class OutputFormat { Csv, Markdown };

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
    Subcommand command = Subcommand::Solve;
    std::optional<BuiltinExample> builtin;
    std::optional<std::filesystem::path> problem_file;
    std::vector<double> epsilon;  ///< one value, or a decade range
    std::vector<double> mu;
    std::vector<int> n_values;
    MeshFamily family = MeshFamily::ShishkinBakhvalov;
    DoubleMeshMode double_mesh = DoubleMeshMode::Bisect;
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::filesystem::path> output;  ///< "-" writes to stdout
    bool plot = false;
    int samples = kDefaultSamples;
    unsigned threads = 0;
    std::string exact, exact_d1, exact_d2;  ///< manufactured subcommand
};

/// "A:B" expands by powers of ten from A to B inclusive; a plain number is one value.
std::vector<double> parse_decades(std::string_view text);
/// "64:1024" doubles from 64 to 1024; "64,128" is a list; "64" a single value.
std::vector<int> parse_n_values(std::string_view text);

/// Parses command-line arguments. Throws ConfigError with a usage message.
/// Returns nullopt when help was requested (and printed to `out`).
std::optional<RunConfig> parse_arguments(int argc, const char* const* argv, std::ostream& out);

/// Executes a parsed configuration, writing artifacts to disk.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_arguments + run with exit-code mapping: 0 ok, 2 config error, 3 numerical failure.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace splayer::cli
