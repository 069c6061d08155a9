#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docpipe/docgen.hpp"
#include "docpipe/extract.hpp"
#include "docpipe/format.hpp"
#include "docpipe/gateway.hpp"
#include "docpipe/ingest.hpp"
#include "docpipe/ocr_sim.hpp"
#include "docpipe/result.hpp"

namespace docpipe::router {

/// Text-acquisition lanes. Native parsers read payload bytes; the OCR lanes
/// re-transcribe from the document record; tag_wrapping_fixture is the
/// markup-flattening lane (tables survive only as inline <table> tags).
enum class IngestBackend {
    NativeMarkdown,
    NativeDocx,
    NativeXlsx,
    NativePdf,
    OcrPreserving,
    OcrDestroying,
    TagWrappingFixture,
    RemoteOcr,
};

inline constexpr IngestBackend kAllBackends[] = {
    IngestBackend::NativeMarkdown,    IngestBackend::NativeDocx,
    IngestBackend::NativeXlsx,        IngestBackend::NativePdf,
    IngestBackend::OcrPreserving,     IngestBackend::OcrDestroying,
    IngestBackend::TagWrappingFixture, IngestBackend::RemoteOcr,
};

constexpr const char* to_string(IngestBackend b) {
    switch (b) {
        case IngestBackend::NativeMarkdown: return "native_markdown";
        case IngestBackend::NativeDocx: return "native_docx";
        case IngestBackend::NativeXlsx: return "native_xlsx";
        case IngestBackend::NativePdf: return "native_pdf";
        case IngestBackend::OcrPreserving: return "ocr_preserving";
        case IngestBackend::OcrDestroying: return "ocr_destroying";
        case IngestBackend::TagWrappingFixture: return "tag_wrapping_fixture";
        case IngestBackend::RemoteOcr: return "remote_ocr";
    }
    return "unknown";
}

std::optional<IngestBackend> parse_backend(std::string_view name);

/// Support matrix, fixed at build time: native parsers take exactly their
/// own format, OCR lanes take transcripts, the tag-wrapping fixture rides
/// on the PDF parser.
bool backend_supports(IngestBackend backend, DocFormat format);

/// One (parse backend, extraction paradigm) combination.
struct MethodConfig {
    IngestBackend ingest_backend = IngestBackend::NativeMarkdown;
    extract::Paradigm paradigm = extract::Paradigm::Table;

    bool operator==(const MethodConfig&) const = default;

    /// Stable report identifier, e.g. "native_docx+table".
    std::string name() const;
};

/// Parses "backend+paradigm" names produced by MethodConfig::name().
std::optional<MethodConfig> parse_method_name(std::string_view name);

struct RoutingPolicy {
    std::map<DocFormat, MethodConfig> primary_choice;
    std::map<DocFormat, std::vector<MethodConfig>> fallback_chain;

    /// Every mapped backend supports its format; fallback chains contain no
    /// duplicates and never repeat the primary.
    Result<void> validate() const;
};

/// Best-known method per format: native parser + table paradigm for the
/// structured formats, layout-preserving OCR + table for transcripts, with
/// a direct-paradigm fallback on the same backend everywhere.
RoutingPolicy default_policy();

/// Loads a policy file: JSON {"routes": {format: {"primary": "backend+paradigm",
/// "fallbacks": [names...]}}}. Errors carry 1-based line numbers.
Result<RoutingPolicy> load_policy(const std::filesystem::path& path);

/// Shared, immutable run state: the gateway, the clock, the OCR profiles,
/// and the remote-OCR endpoint (empty = unconfigured).
struct RunContext {
    const gateway::Gateway* gw = nullptr;
    gateway::ClockMode clock = gateway::ClockMode::Virtual;
    ocrsim::OcrProfile preserving = ocrsim::preserving_profile();
    ocrsim::OcrProfile destroying = ocrsim::destroying_profile();
    std::string ocr_endpoint;
    double ocr_timeout_seconds = 30.0;
};

/// Virtual-clock parse costs. Native parsers are priced at a flat 50 ms;
/// the tag-wrapping lane models a heavyweight layout converter.
inline constexpr double kVirtualNativeParseSeconds = 0.05;
inline constexpr double kVirtualTagWrappingSeconds = 1.5;

/// Acquires text for `doc` through `backend` (payload holds the on-disk
/// bytes; OCR lanes ignore it and re-transcribe from the record).
Result<ingest::StructuredText> acquire_text(const docgen::DocumentRecord& doc,
                                            const std::string& payload,
                                            IngestBackend backend,
                                            const RunContext& ctx);

/// One full attempt: acquire text, then run the paradigm. Failures at any
/// stage come back as fatal outcomes, never exceptions.
extract::ExtractionOutcome run_method(const docgen::DocumentRecord& doc,
                                      const std::string& payload,
                                      const MethodConfig& config,
                                      const RunContext& ctx);

struct RoutedOutcome {
    extract::ExtractionOutcome outcome;
    MethodConfig method_used;
    std::size_t attempts = 0;
};

/// Primary choice first, then the fallback chain in order, stopping at the
/// first non-fatal outcome. Timing accumulates across attempts; exhausting
/// the chain yields a fatal outcome with failure_kind = Exhausted.
Result<RoutedOutcome> route_and_extract(const docgen::DocumentRecord& doc,
                                        const std::string& payload,
                                        const RoutingPolicy& policy,
                                        const RunContext& ctx);

}  // namespace docpipe::router
