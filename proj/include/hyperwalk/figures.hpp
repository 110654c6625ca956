#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hyperwalk/config.hpp"

namespace hyperwalk::cli {

struct FigureTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    // echoed config and run info, emitted as a commented preamble
    std::vector<std::pair<std::string, std::string>> metadata;
};

// Computes the data behind one figure. The config must have passed
// finalize_and_validate.
FigureTable run_figure(const ExperimentConfig& cfg);

std::string default_output_path(const ExperimentConfig& cfg);

// Writes atomically (temp file + rename); partial files never survive.
void write_output(const FigureTable& table, const std::string& path, OutputFormat format);

// Formats a double so that it round-trips exactly.
std::string format_number(double v);

}  // namespace hyperwalk::cli
