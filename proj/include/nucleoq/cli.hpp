#pragma once

#include "nucleoq/pipeline.hpp"
#include "nucleoq/toml.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nucleoq::cli {

// Entry point shared by the executable and the tests. `args` excludes the program name.
// Returns 0 on success, 1 on parse failures, 2 on physics-domain or dataset errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct NfsRequest {
    double xi = 10.0;
    double tau_max = 1.0;
    int samples = 101;
};

struct SweepRequest {
    ScenarioConfig base;
    Length d_min = units::nm(7.0);
    Length d_max = units::nm(100.0);
    int steps = 20;
    bool constant_photon_number = true;
};

struct TableRequest {
    TableId id = TableId::T3;
    ScenarioConfig base;
};

// A scenario file holds either a scenario list (explicit entries and/or a grid) or one
// of the [nfs], [sweep] or [table] jobs.
struct ScenarioFile {
    enum class Kind { Scenarios, Nfs, Sweep, Table };
    Kind kind = Kind::Scenarios;
    std::vector<ScenarioConfig> scenarios;
    NfsRequest nfs;
    SweepRequest sweep;
    TableRequest table;
};

ScenarioFile parse_scenario_file(const std::string& text, const std::string& source);
ScenarioFile load_scenario_file(const std::string& path);

// Canonical one-line description of every field, used in manifests.
std::string describe(const ScenarioConfig& cfg);

std::string format_number(double v);  // %.5e

std::string scenarios_csv(const std::vector<ExcitationResult>& rows, const std::string& manifest_hash);
std::string nfs_csv(const NfsRequest& req, const std::string& manifest_hash);
std::string sweep_csv(const SweepResult& res, const std::string& manifest_hash);
std::string table_csv(const TableResult& res, const std::string& manifest_hash);

}  // namespace nucleoq::cli
