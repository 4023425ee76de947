#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lingam/bootstrap.hpp"
#include "lingam/core.hpp"
#include "lingam/direct_lingam.hpp"
#include "lingam/eval.hpp"
#include "lingam/synth.hpp"

namespace lingam::io {

inline constexpr std::string_view kToolName = "lingam";
inline constexpr std::string_view kToolVersion = "0.1.0";
// Documents carry "major.minor"; readers accept any minor of this major.
inline constexpr int kSchemaMajor = 1;
inline constexpr std::string_view kSchemaVersion = "1.0";

using Json = nlohmann::json;

struct CsvOptions {
    bool header = true;
    // Default layout is one observation per record. With variables_as_rows
    // each record is a variable and, if header is set, starts with its label.
    bool variables_as_rows = false;
};

// RFC-4180 style: comma separated, optional double quotes, LF or CRLF.
// Throws ParseError, RaggedRows or NonNumericCell with 1-based line/column.
Dataset parse_csv(std::string_view text, const CsvOptions& options = {});
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

// Shortest decimal that reads back to the same double.
std::string format_double(double value);

// One observation per line, header of labels.
std::string to_csv(const Dataset& data);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temporary and renames, so the target is either absent
// or complete.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Throws SchemaVersion unless doc["schema_version"] has major kSchemaMajor.
void check_schema(const Json& doc);

// Subscripts in documents are 1-based.
struct ModelDocument {
    std::string estimator;  // "direct" or "ica"
    std::uint64_t seed = 0;
    std::vector<std::string> labels;
    CausalOrder order;
    ConnectionMatrix strengths;
    std::vector<StepDiagnostics> diagnostics;
    std::optional<ConnectionMatrix> pruned;  // ica only
    std::optional<bool> converged;           // ica only
    std::string tool_version{kToolVersion};
};

Json to_json(const ModelDocument& doc);
ModelDocument model_from_json(const Json& doc);

Json truth_to_json(const GroundTruthModel& truth, const SynthConfig& cfg, const std::vector<std::string>& labels);

// Missing fields take BenchmarkGrid defaults; schema_version is optional.
BenchmarkGrid grid_from_json(const Json& doc);
Json grid_to_json(const BenchmarkGrid& grid);

Json report_to_json(const EvaluationReport& report, bool include_times);
// One row per trial: p,n,estimator,trial,seed,ok,order_errors,frobenius,error[,seconds].
std::string report_csv(const EvaluationReport& report, bool include_times);
// Median order errors and Frobenius distance per cell and estimator.
std::string summary_table(const EvaluationReport& report);

Json edges_to_json(const BootstrapResult& result, const BootstrapConfig& cfg, const std::vector<std::string>& labels);
// "j -> i : point [lower, upper] sig|ns" per edge, 1-based subscripts.
std::string edge_list(const std::vector<EdgeInterval>& edges);
// "j -> i : strength" for nonzero strengths, taken in causal order.
std::string strength_list(const CausalOrder& order, const ConnectionMatrix& b);

}  // namespace lingam::io
