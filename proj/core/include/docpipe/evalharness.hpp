#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docpipe/docgen.hpp"
#include "docpipe/format.hpp"
#include "docpipe/gateway.hpp"
#include "docpipe/result.hpp"
#include "docpipe/router.hpp"

namespace docpipe::evalharness {

/// One document's scored outcome, retained for audit and recomputation.
struct DocOutcome {
    std::string doc_id;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    bool fatal = false;
    std::optional<ErrorKind> failure_kind;
    double ocr_s = 0.0;
    double llm_s = 0.0;
    double total_s = 0.0;
    std::size_t extracted_count = 0;
};

/// Aggregates for one (method, format) cell. Failed documents stay in the
/// means with F1 = 0 — failures are counted, never dropped.
struct CellReport {
    std::string method;
    DocFormat format = DocFormat::Unknown;
    std::size_t document_count = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double f1_std = 0.0;  ///< population standard deviation over documents
    double success_rate = 0.0;
    double perfect_rate = 0.0;
    double ocr_s = 0.0;
    double llm_s = 0.0;
    double total_s = 0.0;
    bool reference_constants = false;
    std::vector<DocOutcome> documents;
};

struct MatrixReport {
    std::vector<CellReport> cells;
    std::vector<std::string> method_order;
    std::vector<DocFormat> format_order;
    std::string corpus_digest;
    std::string config_digest;
    gateway::ClockMode clock_mode = gateway::ClockMode::Virtual;
};

/// Fixed published costs for the multimodal lane; kept as a comparison
/// row rather than running a vision model.
inline constexpr const char* kMultimodalReferenceMethod = "multimodal_reference";
inline constexpr double kMultimodalF1 = 0.999;
inline constexpr double kMultimodalSuccessRate = 1.0;
inline constexpr double kMultimodalPerfectRate = 0.97;
inline constexpr double kMultimodalTotalSeconds = 33.9;

std::string sha256_hex(std::string_view bytes);

/// Scores one outcome against truth (fatal outcomes score zero).
DocOutcome score_outcome(const docgen::DocumentRecord& doc,
                         const extract::ExtractionOutcome& outcome);

/// Recomputes a cell's aggregate columns from its retained documents;
/// used by tests to prove aggregates are exact folds.
CellReport aggregate_cell(std::string method, DocFormat format,
                          std::vector<DocOutcome> documents);

/// Runs every supported (method, format, document) triple with a bounded
/// worker pool. Unsupported combinations produce no cell (reports show
/// them as explicit nulls). Deterministic under the virtual clock.
Result<MatrixReport> run_matrix(const docgen::Manifest& manifest,
                                const std::vector<router::MethodConfig>& methods,
                                const router::RunContext& ctx,
                                std::size_t workers = 1);

/// Writes matrix.json, table.csv, heatmap_f1.csv and heatmap_time.csv
/// under out_dir. Byte-identical for equal reports.
Result<std::vector<std::filesystem::path>> emit_reports(
    const MatrixReport& report, const std::filesystem::path& out_dir);

/// total_s(slow) / total_s(fast) for one format, e.g. how many times
/// faster the table paradigm is than direct extraction.
Result<double> compare_speedup(const MatrixReport& report,
                               std::string_view fast_method,
                               std::string_view slow_method, DocFormat format);

}  // namespace docpipe::evalharness
