#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "pint/config.hpp"

namespace pint {

inline constexpr const char* kVersion = "0.1.0";

using Cell = std::variant<long long, double, std::string>;

/// Flat CSV payload. Doubles are serialized with 17 significant digits, so
/// every finite value round-trips bitwise.
struct Table {
    std::string name;  // file stem, e.g. "errors" -> errors.csv
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_cell(const Cell& cell);
std::string to_csv(const Table& table);

struct ExperimentReport {
    nlohmann::json manifest;
    std::vector<Table> tables;

    const Table* find_table(const std::string& name) const;
};

/// Writes <name>.csv per table plus manifest.json into `dir` (created if
/// missing).
void write_report(const ExperimentReport& report, const std::string& dir);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ExperimentOutcome {
    ExperimentReport report;
    std::vector<CheckResult> checks;
    int exit_code = 0;  // 0 pass, 2 verification failure (runtime errors throw)
};

/// Runs the configured study, printing one PASS/FAIL line per check to `log`
/// and writing CSVs when cfg.output_dir is non-empty. Check outputs are
/// deterministic given (config, seed) and independent of cfg.workers.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace pint
