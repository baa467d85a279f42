#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flatcone/holonomy.hpp"

namespace flatcone::cli {

enum class Format { Json, Csv };

struct CommandConfig {
    std::string subcommand;
    std::vector<std::string> inputs;  // surface files; compare takes two
    std::string words_path;
    std::optional<Format> format;     // subcommand default when unset
    std::optional<double> epsilon;
    std::uint64_t seed = 0;
    bool retain_marked = false;
    bool allow_positive_curvature = false;

    // trace / density start; a seeded random start when chart is unset
    std::optional<int> chart;
    std::optional<double> x, y;
    double direction = 0.0;
    double max_length = 10.0;
    int grid = 32;

    double length_bound = 1.0;
    std::size_t corridor_cap = 1'000'000;

    std::string theta_pi;
    std::int64_t n_max = 10;
    double phi0 = 0.5;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitInput = 2;

/// Runs one subcommand. Results go to out, diagnostics to err.
int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs them.
int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads a words file, a JSON list of words, each a list of
/// [chart_id, edge, direction] crossings, against the given surface.
std::vector<CurveWord> load_words(const std::string& path, const FlatConeSurface& surface);

}  // namespace flatcone::cli
