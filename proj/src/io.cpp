#include "lingam/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace lingam::io {

namespace {

struct Field {
    std::string text;
    std::size_t line = 0;
    std::size_t column = 0;
    bool quoted = false;
};

using Record = std::vector<Field>;

std::string location(std::size_t line, std::size_t column) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::vector<Record> tokenize(std::string_view text) {
    std::vector<Record> records;
    Record record;
    Field field;
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t pos = 0;
    bool at_field_start = true;
    field.line = line;
    field.column = column;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field = Field{};
        at_field_start = true;
    };
    auto end_record = [&] {
        end_field();
        const bool blank = record.size() == 1 && record.front().text.empty() && !record.front().quoted;
        if (!blank) records.push_back(std::move(record));
        record.clear();
    };

    while (pos < text.size()) {
        const char c = text[pos];
        if (at_field_start) {
            field.line = line;
            field.column = column;
            at_field_start = false;
            if (c == '"') {
                field.quoted = true;
                ++pos;
                ++column;
                // Quoted field: runs to the matching quote, "" is a literal quote.
                while (true) {
                    if (pos >= text.size()) {
                        throw Error(ErrorCode::ParseError, "unterminated quoted field at " +
                                                               location(field.line, field.column));
                    }
                    const char q = text[pos];
                    if (q == '"') {
                        if (pos + 1 < text.size() && text[pos + 1] == '"') {
                            field.text.push_back('"');
                            pos += 2;
                            column += 2;
                            continue;
                        }
                        ++pos;
                        ++column;
                        break;
                    }
                    if (q == '\n') {
                        ++line;
                        column = 1;
                    } else {
                        ++column;
                    }
                    field.text.push_back(q);
                    ++pos;
                }
                if (pos < text.size() && text[pos] != ',' && text[pos] != '\n' && text[pos] != '\r') {
                    throw Error(ErrorCode::ParseError, "unexpected character after closing quote at " +
                                                           location(line, column));
                }
                continue;
            }
        }
        if (c == ',') {
            end_field();
            ++pos;
            ++column;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
            end_record();
            ++pos;
            ++line;
            column = 1;
        } else if (c == '"') {
            throw Error(ErrorCode::ParseError, "quote inside unquoted field at " + location(line, column));
        } else {
            field.text.push_back(c);
            ++pos;
            ++column;
        }
    }
    if (!at_field_start || !record.empty()) end_record();
    return records;
}

double parse_number(const Field& field) {
    std::string_view s = field.text;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
        throw Error(ErrorCode::NonNumericCell,
                    "non-numeric cell '" + field.text + "' at " + location(field.line, field.column));
    }
    return value;
}

std::string quote_csv(const std::string& text) {
    if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

ConnectionMatrix connection_from_json(const Json& rows, std::size_t p, const char* name) {
    if (!rows.is_array() || rows.size() != p) {
        throw Error(ErrorCode::ParseError, std::string(name) + " must be a " + std::to_string(p) + "x" +
                                               std::to_string(p) + " array");
    }
    const auto sz = static_cast<Eigen::Index>(p);
    Matrix m(sz, sz);
    for (std::size_t i = 0; i < p; ++i) {
        if (!rows[i].is_array() || rows[i].size() != p) {
            throw Error(ErrorCode::ParseError, std::string(name) + " row " + std::to_string(i + 1) + " has wrong length");
        }
        for (std::size_t j = 0; j < p; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j].get<double>();
        }
    }
    return ConnectionMatrix(std::move(m));
}

Json order_to_json(const CausalOrder& order) {
    Json out = Json::array();
    for (std::size_t v : order) out.push_back(v + 1);
    return out;
}

CausalOrder order_from_json(const Json& doc) {
    if (!doc.is_array()) throw Error(ErrorCode::ParseError, "order must be an array");
    std::vector<std::size_t> order;
    for (const auto& v : doc) {
        const auto s = v.get<std::size_t>();
        if (s < 1) throw Error(ErrorCode::InvalidPermutation, "order subscripts are 1-based");
        order.push_back(s - 1);
    }
    return CausalOrder(std::move(order));
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Json summary_to_json(const std::optional<BoxplotSummary>& s) {
    if (!s) return nullptr;
    return Json{{"count", s->count},       {"median", s->median},
                {"q1", s->q1},             {"q3", s->q3},
                {"lower_whisker", s->lower_whisker}, {"upper_whisker", s->upper_whisker},
                {"min", s->min},           {"max", s->max}};
}

template <typename T>
T get_or(const Json& doc, const char* key, T fallback) {
    return doc.contains(key) ? doc.at(key).get<T>() : fallback;
}

}  // namespace

Dataset parse_csv(std::string_view text, const CsvOptions& options) {
    const auto records = tokenize(text);
    if (records.empty()) throw Error(ErrorCode::DimensionError, "CSV input is empty");

    std::vector<std::string> labels;
    if (!options.variables_as_rows) {
        std::size_t first = 0;
        if (options.header) {
            for (const auto& f : records.front()) labels.push_back(f.text);
            first = 1;
        }
        const std::size_t p = records.front().size();
        const std::size_t n = records.size() - first;
        DataMatrix values(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(n));
        for (std::size_t k = 0; k < n; ++k) {
            const auto& rec = records[first + k];
            if (rec.size() != p) {
                throw Error(ErrorCode::RaggedRows, "expected " + std::to_string(p) + " fields, got " +
                                                       std::to_string(rec.size()) + " on line " +
                                                       std::to_string(rec.front().line));
            }
            for (std::size_t i = 0; i < p; ++i) {
                values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = parse_number(rec[i]);
            }
        }
        return Dataset::center(std::move(values), std::move(labels));
    }

    const std::size_t skip = options.header ? 1 : 0;
    const std::size_t width = records.front().size();
    if (width <= skip) throw Error(ErrorCode::DimensionError, "CSV records hold no observations");
    const std::size_t p = records.size();
    const std::size_t n = width - skip;
    DataMatrix values(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < p; ++i) {
        const auto& rec = records[i];
        if (rec.size() != width) {
            throw Error(ErrorCode::RaggedRows, "expected " + std::to_string(width) + " fields, got " +
                                                   std::to_string(rec.size()) + " on line " +
                                                   std::to_string(rec.front().line));
        }
        if (options.header) labels.push_back(rec.front().text);
        for (std::size_t k = 0; k < n; ++k) {
            values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = parse_number(rec[skip + k]);
        }
    }
    return Dataset::center(std::move(values), std::move(labels));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    return parse_csv(read_file(path), options);
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw Error(ErrorCode::IoError, "cannot format number");
    return std::string(buf, ptr);
}

std::string to_csv(const Dataset& data) {
    std::string out;
    const auto& labels = data.labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out.push_back(',');
        out += quote_csv(labels[i]);
    }
    out.push_back('\n');
    for (std::size_t k = 0; k < data.n(); ++k) {
        for (std::size_t i = 0; i < data.p(); ++i) {
            if (i) out.push_back(',');
            out += format_double(data.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
        }
        out.push_back('\n');
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::IoError, "cannot write '" + tmp.string() + "'");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw Error(ErrorCode::IoError, "failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorCode::IoError, "cannot move output into place at '" + path.string() + "'");
    }
}

void check_schema(const Json& doc) {
    if (!doc.is_object() || !doc.contains("schema_version") || !doc.at("schema_version").is_string()) {
        throw Error(ErrorCode::SchemaVersion, "document has no schema_version");
    }
    const auto version = doc.at("schema_version").get<std::string>();
    int major = -1;
    const auto [ptr, ec] = std::from_chars(version.data(), version.data() + version.size(), major);
    if (ec != std::errc() || major != kSchemaMajor || (ptr != version.data() + version.size() && *ptr != '.')) {
        throw Error(ErrorCode::SchemaVersion, "unsupported schema_version '" + version + "'");
    }
}

Json to_json(const ModelDocument& doc) {
    Json diagnostics = Json::array();
    for (const auto& step : doc.diagnostics) {
        Json entries = Json::array();
        for (const auto& [v, t] : step) entries.push_back(Json{{"variable", v + 1}, {"t", t}});
        diagnostics.push_back(std::move(entries));
    }
    Json out{{"schema_version", kSchemaVersion},
             {"kind", "model"},
             {"tool", kToolName},
             {"tool_version", doc.tool_version},
             {"estimator", doc.estimator},
             {"seed", doc.seed},
             {"labels", doc.labels},
             {"order", order_to_json(doc.order)},
             {"strengths", matrix_to_json(doc.strengths.entries())},
             {"diagnostics", std::move(diagnostics)}};
    if (doc.pruned) out["pruned"] = matrix_to_json(doc.pruned->entries());
    if (doc.converged) out["converged"] = *doc.converged;
    return out;
}

ModelDocument model_from_json(const Json& doc) {
    check_schema(doc);
    try {
        ModelDocument out;
        out.tool_version = get_or<std::string>(doc, "tool_version", "");
        out.estimator = doc.at("estimator").get<std::string>();
        out.seed = get_or<std::uint64_t>(doc, "seed", 0);
        out.labels = doc.at("labels").get<std::vector<std::string>>();
        out.order = order_from_json(doc.at("order"));
        const std::size_t p = out.order.size();
        if (out.labels.size() != p) throw Error(ErrorCode::ParseError, "labels and order lengths differ");
        out.strengths = connection_from_json(doc.at("strengths"), p, "strengths");
        for (const auto& step : get_or<Json>(doc, "diagnostics", Json::array())) {
            StepDiagnostics entries;
            for (const auto& e : step) entries.emplace(e.at("variable").get<std::size_t>() - 1, e.at("t").get<double>());
            out.diagnostics.push_back(std::move(entries));
        }
        if (doc.contains("pruned")) out.pruned = connection_from_json(doc.at("pruned"), p, "pruned");
        if (doc.contains("converged")) out.converged = doc.at("converged").get<bool>();
        return out;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed model document: ") + e.what());
    }
}

Json truth_to_json(const GroundTruthModel& truth, const SynthConfig& cfg, const std::vector<std::string>& labels) {
    return Json{{"schema_version", kSchemaVersion},
                {"kind", "ground_truth"},
                {"tool", kToolName},
                {"tool_version", kToolVersion},
                {"seed", cfg.seed},
                {"p", cfg.p},
                {"n", cfg.n},
                {"network", to_string(cfg.network)},
                {"labels", labels},
                {"b_true", matrix_to_json(truth.b_true.entries())},
                {"noise_stds", vector_to_json(truth.noise_stds)},
                {"exponents", vector_to_json(truth.exponents)},
                {"shuffle", order_to_json(truth.shuffle)},
                {"emitted_b", matrix_to_json(truth.emitted_b().entries())},
                {"emitted_order", order_to_json(truth.emitted_order())}};
}

BenchmarkGrid grid_from_json(const Json& doc) {
    // Grids are usually hand-written, so the version tag is optional here.
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "grid must be a JSON object");
    if (doc.contains("schema_version")) check_schema(doc);
    try {
        BenchmarkGrid grid;
        grid.p_values = get_or(doc, "p_values", grid.p_values);
        grid.n_values = get_or(doc, "n_values", grid.n_values);
        grid.trials = get_or(doc, "trials", grid.trials);
        grid.master_seed = get_or<std::uint64_t>(doc, "master_seed", grid.master_seed);
        grid.network = parse_network_kind(get_or<std::string>(doc, "network", "random"));
        if (doc.contains("estimators")) {
            grid.estimators.clear();
            for (const auto& e : doc.at("estimators")) grid.estimators.push_back(parse_estimator(e.get<std::string>()));
        }
        grid.validate();
        return grid;
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed grid document: ") + e.what());
    }
}

Json grid_to_json(const BenchmarkGrid& grid) {
    Json estimators = Json::array();
    for (Estimator e : grid.estimators) estimators.push_back(to_string(e));
    return Json{{"schema_version", kSchemaVersion},
                {"p_values", grid.p_values},
                {"n_values", grid.n_values},
                {"trials", grid.trials},
                {"estimators", std::move(estimators)},
                {"master_seed", grid.master_seed},
                {"network", to_string(grid.network)}};
}

Json report_to_json(const EvaluationReport& report, bool include_times) {
    Json cells = Json::array();
    for (const auto& cell : report.cells) {
        Json results = Json::array();
        for (const auto& r : cell.results) {
            Json trials = Json::array();
            for (const auto& t : r.trials) {
                Json row{{"trial", t.trial}, {"seed", t.seed}, {"ok", t.ok}};
                if (t.ok) {
                    row["order_errors"] = t.order_errors;
                    row["frobenius"] = t.frobenius;
                    if (include_times) row["seconds"] = t.seconds;
                } else {
                    row["error"] = t.error;
                }
                trials.push_back(std::move(row));
            }
            Json summary{{"order_errors", summary_to_json(r.summary.order_errors)},
                         {"frobenius", summary_to_json(r.summary.frobenius)}};
            if (include_times) summary["seconds"] = summary_to_json(r.summary.seconds);
            results.push_back(Json{{"estimator", to_string(r.estimator)},
                                   {"failures", r.summary.failures},
                                   {"summary", std::move(summary)},
                                   {"trials", std::move(trials)}});
        }
        cells.push_back(Json{{"p", cell.p}, {"n", cell.n}, {"results", std::move(results)}});
    }
    return Json{{"schema_version", kSchemaVersion},
                {"kind", "benchmark_report"},
                {"tool", kToolName},
                {"tool_version", kToolVersion},
                {"grid", grid_to_json(report.grid)},
                {"cells", std::move(cells)}};
}

std::string report_csv(const EvaluationReport& report, bool include_times) {
    std::string out = "p,n,estimator,trial,seed,ok,order_errors,frobenius,error";
    if (include_times) out += ",seconds";
    out.push_back('\n');
    for (const auto& cell : report.cells) {
        for (const auto& r : cell.results) {
            for (const auto& t : r.trials) {
                out += std::to_string(cell.p) + "," + std::to_string(cell.n) + "," + std::string(to_string(r.estimator)) +
                       "," + std::to_string(t.trial) + "," + std::to_string(t.seed) + "," + (t.ok ? "1" : "0") + ",";
                if (t.ok) out += std::to_string(t.order_errors) + "," + format_double(t.frobenius);
                else out += ",";
                out += "," + t.error;
                if (include_times) out += "," + (t.ok ? format_double(t.seconds) : std::string());
                out.push_back('\n');
            }
        }
    }
    return out;
}

std::string summary_table(const EvaluationReport& report) {
    std::ostringstream out;
    out << "p\tn\testimator\tok\tfailed\tmedian_order_errors\tmedian_frobenius\n";
    for (const auto& cell : report.cells) {
        for (const auto& r : cell.results) {
            const auto& s = r.summary;
            out << cell.p << '\t' << cell.n << '\t' << to_string(r.estimator) << '\t'
                << (s.order_errors ? s.order_errors->count : 0) << '\t' << s.failures << '\t'
                << (s.order_errors ? format_double(s.order_errors->median) : "-") << '\t'
                << (s.frobenius ? format_double(s.frobenius->median) : "-") << '\n';
        }
    }
    return out.str();
}

Json edges_to_json(const BootstrapResult& result, const BootstrapConfig& cfg, const std::vector<std::string>& labels) {
    Json edges = Json::array();
    for (const auto& e : result.edges) {
        edges.push_back(Json{{"from", e.j + 1},
                             {"to", e.i + 1},
                             {"from_label", labels.at(e.j)},
                             {"to_label", labels.at(e.i)},
                             {"point", e.point},
                             {"lower", e.lower},
                             {"upper", e.upper},
                             {"significant", e.significant}});
    }
    return Json{{"schema_version", kSchemaVersion},
                {"kind", "bootstrap_edges"},
                {"tool", kToolName},
                {"tool_version", kToolVersion},
                {"level", cfg.level},
                {"resamples", cfg.resamples},
                {"seed", cfg.seed},
                {"redraws", result.redraws},
                {"edges", std::move(edges)}};
}

std::string edge_list(const std::vector<EdgeInterval>& edges) {
    std::string out;
    for (const auto& e : edges) {
        out += std::to_string(e.j + 1) + " -> " + std::to_string(e.i + 1) + " : " + format_double(e.point) + " [" +
               format_double(e.lower) + ", " + format_double(e.upper) + "] " + (e.significant ? "sig" : "ns") + "\n";
    }
    return out;
}

std::string strength_list(const CausalOrder& order, const ConnectionMatrix& b) {
    std::string out;
    for (std::size_t k = 1; k < order.size(); ++k) {
        for (std::size_t l = 0; l < k; ++l) {
            const double w = b(order[k], order[l]);
            if (w != 0.0) {
                out += std::to_string(order[l] + 1) + " -> " + std::to_string(order[k] + 1) + " : " + format_double(w) + "\n";
            }
        }
    }
    return out;
}

}  // namespace lingam::io
