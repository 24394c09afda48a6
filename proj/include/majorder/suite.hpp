#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "majorder/generator.hpp"

namespace majorder {

/// One suite cell: a (theorem, function, generator) triple plus the
/// expectation. expect = "sound" means every instance must satisfy the
/// inequality; expect = "violation" means the cell exists to find at least
/// one counterexample.
struct CellConfig {
    std::string name;
    std::string theorem = "t4";
    std::string function;
    std::string modulus = "zero";
    std::string relation = "ldown";
    std::string weights = "uniform";
    std::string expect = "sound";
    double sigma = 1.0;
    double box_lo = 0.0;
    double box_hi = 1.0;
    bool has_box = false;
    int points = 3;
    long instances = -1; // -1: inherit the suite default
    double chain_scale = -1.0;
    double deficit_scale = -1.0;
};

struct SuiteConfig {
    std::string name = "suite";
    std::uint64_t seed = 42;
    long instances_per_cell = 100;
    double tol = 1e-9;
    std::vector<CellConfig> cells;
};

/// Parses the TOML subset used for suite files: [suite] and [[cell]]
/// headers, key = value lines with quoted strings, numbers and booleans,
/// and # comments. Parse errors carry the 1-based line number.
SuiteConfig parse_suite_config(const std::string& text);
SuiteConfig load_suite_config(const std::string& path);

struct CellSummary {
    std::string name;
    std::string theorem;
    std::string function;
    long instances = 0;
    long passed = 0;
    long violations = 0;
    long not_applicable = 0;
    double worst_residual = 0.0;
    bool cell_passed = false;
};

struct SuiteSummary {
    std::string suite_name;
    std::vector<CellSummary> cells;
    double wall_seconds = 0.0;

    bool all_passed() const;
    long total_instances() const;
};

/// Runs every cell, writing reports.jsonl (one record per instance, in
/// deterministic order independent of the thread count) and summary.csv
/// into out_dir. jobs <= 1 runs sequentially.
SuiteSummary run_suite(const SuiteConfig& config, const std::string& out_dir, int jobs = 1);

std::string summary_csv(const SuiteSummary& summary);

} // namespace majorder
