#include "docpipe/format.hpp"
#include "docpipe/result.hpp"

namespace docpipe {

std::optional<DocFormat> parse_format(std::string_view name) {
    for (DocFormat f : kAllFormats)
        if (name == to_string(f)) return f;
    if (name == "md") return DocFormat::Markdown;
    if (name == "txt") return DocFormat::Transcript;
    return std::nullopt;
}

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::IoFailure: return "io_failure";
        case ErrorKind::MalformedInput: return "malformed_input";
        case ErrorKind::UnsupportedFormat: return "unsupported_format";
        case ErrorKind::UnsupportedPdfFeature: return "unsupported_pdf_feature";
        case ErrorKind::NotRasterizable: return "not_rasterizable";
        case ErrorKind::Timeout: return "timeout";
        case ErrorKind::RemoteFailure: return "remote_failure";
        case ErrorKind::MalformedResponse: return "malformed_response";
        case ErrorKind::OutputTruncated: return "output_truncated";
        case ErrorKind::GatewayFailure: return "gateway_failure";
        case ErrorKind::UnparseableOutput: return "unparseable_output";
        case ErrorKind::NoIdsFound: return "no_ids_found";
        case ErrorKind::ArityMismatch: return "arity_mismatch";
        case ErrorKind::CoordinateUnresolvable: return "coordinate_unresolvable";
        case ErrorKind::SpecOutOfBounds: return "spec_out_of_bounds";
        case ErrorKind::UnroutableFormat: return "unroutable_format";
        case ErrorKind::Exhausted: return "exhausted";
        case ErrorKind::CorpusMissing: return "corpus_missing";
        case ErrorKind::ConfigInvalid: return "config_invalid";
        case ErrorKind::CellMissing: return "cell_missing";
    }
    return "unknown";
}

}  // namespace docpipe
