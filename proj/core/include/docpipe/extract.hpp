#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docpipe/gateway.hpp"
#include "docpipe/identity.hpp"
#include "docpipe/ingest.hpp"
#include "docpipe/result.hpp"

namespace docpipe::extract {

enum class Paradigm { Direct, Replace, Table };

constexpr const char* to_string(Paradigm p) {
    switch (p) {
        case Paradigm::Direct: return "direct";
        case Paradigm::Replace: return "replace";
        case Paradigm::Table: return "table";
    }
    return "unknown";
}

std::optional<Paradigm> parse_paradigm(std::string_view name);

/// Everything evalharness needs about one attempt: pairs, stage timings,
/// and whether it died. Fatal outcomes always carry empty pairs and a
/// failure_kind; they count against success rate exactly once.
struct ExtractionOutcome {
    identity::PairSet pairs;
    Paradigm paradigm = Paradigm::Direct;
    double ocr_seconds = 0.0;
    double llm_seconds = 0.0;
    double total_seconds = 0.0;
    bool fatal = false;
    std::optional<ErrorKind> failure_kind;
    std::string failure_message;
};

/// Which unique token replaced which matched ID at which byte offset.
struct Placeholder {
    std::string token;
    std::string id_number;
    std::size_t offset = 0;
};

struct PlaceholderMap {
    std::vector<Placeholder> entries;
};

/// The table paradigm's entire model output: two column indices and an
/// inclusive data-row span.
struct CellCoordinateSpec {
    std::int64_t name_col = -1;
    std::int64_t id_col = -1;
    std::int64_t row_start = 0;
    std::int64_t row_end = -1;
};

/// Builds ⟦ID_k⟧ placeholders (k starting at 1) for every ID candidate in
/// the text, in order of appearance.
PlaceholderMap build_placeholder_map(std::string_view text);

/// The text with each mapped candidate replaced by its placeholder token.
std::string substitute_placeholders(std::string_view text,
                                    const PlaceholderMap& map);

/// Whole-text extraction: one completion over plain_text, response parsed
/// as a JSON pair array with a line-per-pair fallback. Invalid IDs are
/// kept; scoring decides correctness.
ExtractionOutcome extract_direct(const ingest::StructuredText& st,
                                 const gateway::Gateway& gw,
                                 gateway::ClockMode clock);

/// Pattern-anchored extraction: IDs found by rule, one batched completion
/// resolves every placeholder's name, names zip back onto the map's IDs.
/// IDs are copied, never generated.
ExtractionOutcome extract_replace(const ingest::StructuredText& st,
                                  const gateway::Gateway& gw,
                                  gateway::ClockMode clock);

/// Coordinate extraction: one completion sees only the header and a sample
/// row and answers a CellCoordinateSpec; a deterministic reader walks the
/// span. Fails closed when no table survived ingestion.
ExtractionOutcome extract_table(const ingest::StructuredText& st,
                                const gateway::Gateway& gw,
                                gateway::ClockMode clock);

ExtractionOutcome run_paradigm(Paradigm paradigm,
                               const ingest::StructuredText& st,
                               const gateway::Gateway& gw,
                               gateway::ClockMode clock);

}  // namespace docpipe::extract
