#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace docpipe {

enum class DocFormat {
    Markdown,
    Docx,
    Xlsx,
    Pdf,
    Transcript,
    Unknown,
};

constexpr std::array<DocFormat, 5> kAllFormats = {
    DocFormat::Markdown, DocFormat::Docx, DocFormat::Xlsx,
    DocFormat::Pdf, DocFormat::Transcript};

constexpr const char* to_string(DocFormat format) {
    switch (format) {
        case DocFormat::Markdown: return "markdown";
        case DocFormat::Docx: return "docx";
        case DocFormat::Xlsx: return "xlsx";
        case DocFormat::Pdf: return "pdf";
        case DocFormat::Transcript: return "transcript";
        case DocFormat::Unknown: break;
    }
    return "unknown";
}

std::optional<DocFormat> parse_format(std::string_view name);

/// Payload file extension, without the dot.
constexpr const char* extension_of(DocFormat format) {
    switch (format) {
        case DocFormat::Markdown: return "md";
        case DocFormat::Docx: return "docx";
        case DocFormat::Xlsx: return "xlsx";
        case DocFormat::Pdf: return "pdf";
        case DocFormat::Transcript: return "txt";
        case DocFormat::Unknown: break;
    }
    return "bin";
}

}  // namespace docpipe
