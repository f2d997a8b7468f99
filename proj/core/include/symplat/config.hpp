#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace symplat {

enum class OutputFormat { text, json, csv };

// Shared run parameters: every verification entry point takes one of these so
// reports are reproducible from the seed alone.
struct RunConfig {
    double tol_abs = 1e-9;
    double tol_rel = 1e-8;
    std::uint64_t seed = 1;
    int workers = 1;
    OutputFormat format = OutputFormat::text;
    std::string out_path;  // empty writes to stdout

    void validate() const {
        if (tol_abs <= 0 || tol_rel <= 0)
            throw std::invalid_argument("config: tolerances must be positive");
        if (workers < 1) throw std::invalid_argument("config: need at least one worker");
    }
};

OutputFormat parse_format(const std::string& name);  // throws std::invalid_argument

}  // namespace symplat
