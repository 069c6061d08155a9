#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docpipe/format.hpp"
#include "docpipe/result.hpp"

namespace docpipe::ingest {

/// How much row/column structure survived text extraction. Preserved enables
/// the table paradigm; Lost forecloses it; SymbolicOnly means readable text
/// without a usable grid.
enum class Fidelity { Preserved, SymbolicOnly, Lost };

constexpr const char* to_string(Fidelity f) {
    switch (f) {
        case Fidelity::Preserved: return "preserved";
        case Fidelity::SymbolicOnly: return "symbolic_only";
        case Fidelity::Lost: return "lost";
    }
    return "unknown";
}

struct TableModel {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::size_t n_cols = 0;
};

struct StructuredText {
    std::string plain_text;
    std::optional<TableModel> table;
    Fidelity fidelity = Fidelity::SymbolicOnly;
    DocFormat source_format = DocFormat::Unknown;
    double extract_seconds = 0.0;
};

/// Pure format sniffing: zip magic disambiguated by inner part names into
/// docx/xlsx, %PDF- prefix, then the extension decides markdown vs
/// transcript. `bytes` should be the full payload so zip members can be
/// inspected; Unknown when nothing matches.
DocFormat detect_format(const std::filesystem::path& path,
                        std::string_view bytes);

Result<StructuredText> parse_markdown(std::string_view bytes);
Result<StructuredText> parse_docx(std::string_view bytes);
Result<StructuredText> parse_xlsx(std::string_view bytes);
Result<StructuredText> parse_pdf(std::string_view bytes);

/// Fixture lane modeling parsers that emit HTML-style tags around table
/// cells: the grid is flattened into tagged markup, the TableModel is
/// dropped, and fidelity degrades to SymbolicOnly.
StructuredText wrap_table_in_tags(const StructuredText& st);

/// Shared grid reconstruction for column-aligned plain text (transcripts,
/// box-free OCR output): splits each line on runs of >= 2 spaces and adopts
/// the longest consistent multi-column run as the grid. Returns nothing
/// when no such region exists.
std::optional<TableModel> grid_from_aligned_lines(
    const std::vector<std::string>& lines);

/// A positioned text run, y increasing up the page (PDF convention).
struct TextFragment {
    double x = 0;
    double y = 0;
    std::string text;
};

/// Shared spatial reconstruction for positioned text (PDF streams,
/// box-bearing OCR responses): buckets fragments into lines by y (tolerance
/// half the inferred line height), derives columns from the first
/// multi-fragment line's x breakpoints, and fills plain_text top-to-bottom.
/// fidelity is Preserved when a non-degenerate grid emerges, else
/// SymbolicOnly. source_format and extract_seconds are left for the caller.
StructuredText structure_fragments(std::vector<TextFragment> fragments);

}  // namespace docpipe::ingest
