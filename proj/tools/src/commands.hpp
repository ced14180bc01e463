#pragma once

#include "qcorr/io.hpp"
#include "qcorr/random.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcorr::cli {

inline constexpr const char* kSchemaVersion = "1.0";

struct AnalyzeOptions {
    bool deep = false;
    std::uint64_t seed = kDefaultSeed;
};

nlohmann::json analyze_report(const LoadedState& input, const AnalyzeOptions& options);

// Drops wall-clock fields so that two reports can be compared byte for byte.
nlohmann::json strip_timing(nlohmann::json report);

struct Range {
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
};

// "start:stop:step" or a single value.
Range parse_range(const std::string& text);
std::vector<double> expand_range(const Range& r);

struct SweepOptions {
    std::string family;             // bd | bd2param
    std::map<std::string, Range> axes;  // bd: c1,c2,c3 or diag; bd2param: p,q
    bool numeric = false;           // generic optimizers instead of closed forms
    std::uint64_t seed = kDefaultSeed;
};

struct SweepResult {
    std::string csv;
    std::size_t rows = 0;
    std::size_t skipped = 0;
};

SweepResult run_sweep(const SweepOptions& options);

struct SteeringOptions {
    std::string box_argument;    // box file or catalog:<id>[:k=v]
    std::string state_argument;  // state spec or catalog:<id>[:k=v]
    std::vector<Vec3> alice;
    std::vector<Vec3> bob;
    int settings = 2;
    std::vector<std::string> checks;  // 1sdi | 1ssdi | ss
    bool exhaustive = false;
    std::uint64_t seed = kDefaultSeed;
};

nlohmann::json run_steering(const SteeringOptions& options);

std::vector<Vec3> parse_directions(const std::string& text);

nlohmann::json catalog_listing();
nlohmann::json catalog_object(const std::string& id, const CatalogParams& params);

struct VerifyOptions {
    std::vector<std::string> only;
    std::map<std::string, double> tolerance;
    std::uint64_t seed = kDefaultSeed;
};

struct ClaimRow {
    std::string id;
    std::string group;
    std::string expected;
    std::string computed;
    double tolerance = 0.0;
    bool pass = false;
};

std::vector<std::string> verify_groups();
std::vector<ClaimRow> verify_paper(const VerifyOptions& options);
nlohmann::json claims_to_json(const std::vector<ClaimRow>& rows);
std::string claims_to_table(const std::vector<ClaimRow>& rows);

}  // namespace qcorr::cli
