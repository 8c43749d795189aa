#pragma once

#include <CLI11.hpp>

#include "report.hpp"

namespace blab::cli {

// Each registers its subcommands; the one the user picks stores its runner
// in `selected`.
void add_word_commands(CLI::App& app, const GlobalOptions& g, Command& selected);
void add_presentation_commands(CLI::App& app, const GlobalOptions& g,
                               Command& selected);
void add_walk_commands(CLI::App& app, const GlobalOptions& g, Command& selected);
void add_baseline_commands(CLI::App& app, const GlobalOptions& g,
                           Command& selected);

}  // namespace blab::cli
