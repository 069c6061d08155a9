#include "docpipe/router.hpp"

#include <algorithm>

#include <json.hpp>

#include "docpipe/fsio.hpp"

namespace docpipe::router {
namespace {

using nlohmann::json;

/// 1-based line of the first occurrence of `needle` in `raw`, or 0.
std::size_t line_of(std::string_view raw, std::string_view needle) {
    const auto pos = raw.find(needle);
    if (pos == std::string_view::npos) return 0;
    return 1 + static_cast<std::size_t>(
                   std::count(raw.begin(), raw.begin() + pos, '\n'));
}

std::size_t line_of_byte(std::string_view raw, std::size_t byte) {
    byte = std::min(byte, raw.size());
    return 1 + static_cast<std::size_t>(
                   std::count(raw.begin(), raw.begin() + byte, '\n'));
}

extract::ExtractionOutcome fatal_stage(extract::Paradigm paradigm,
                                       double ocr_seconds, ErrorKind kind,
                                       std::string message) {
    extract::ExtractionOutcome out;
    out.paradigm = paradigm;
    out.fatal = true;
    out.failure_kind = kind;
    out.failure_message = std::move(message);
    out.ocr_seconds = ocr_seconds;
    out.total_seconds = ocr_seconds;
    return out;
}

}  // namespace

std::optional<IngestBackend> parse_backend(std::string_view name) {
    for (IngestBackend b : kAllBackends)
        if (name == to_string(b)) return b;
    return std::nullopt;
}

bool backend_supports(IngestBackend backend, DocFormat format) {
    switch (backend) {
        case IngestBackend::NativeMarkdown: return format == DocFormat::Markdown;
        case IngestBackend::NativeDocx: return format == DocFormat::Docx;
        case IngestBackend::NativeXlsx: return format == DocFormat::Xlsx;
        case IngestBackend::NativePdf: return format == DocFormat::Pdf;
        case IngestBackend::OcrPreserving:
        case IngestBackend::OcrDestroying:
        case IngestBackend::RemoteOcr: return format == DocFormat::Transcript;
        case IngestBackend::TagWrappingFixture: return format == DocFormat::Pdf;
    }
    return false;
}

std::string MethodConfig::name() const {
    std::string out = to_string(ingest_backend);
    out += '+';
    out += extract::to_string(paradigm);
    return out;
}

std::optional<MethodConfig> parse_method_name(std::string_view name) {
    const auto plus = name.find('+');
    if (plus == std::string_view::npos) return std::nullopt;
    const auto backend = parse_backend(name.substr(0, plus));
    const auto paradigm = extract::parse_paradigm(name.substr(plus + 1));
    if (!backend || !paradigm) return std::nullopt;
    return MethodConfig{*backend, *paradigm};
}

Result<void> RoutingPolicy::validate() const {
    for (const auto& [format, primary] : primary_choice) {
        if (!backend_supports(primary.ingest_backend, format))
            return Error{ErrorKind::ConfigInvalid,
                         "primary method " + primary.name() +
                             " does not support format " +
                             std::string(to_string(format))};
    }
    for (const auto& [format, chain] : fallback_chain) {
        const auto primary = primary_choice.find(format);
        if (primary == primary_choice.end())
            return Error{ErrorKind::ConfigInvalid,
                         "fallback chain for " + std::string(to_string(format)) +
                             " has no primary choice"};
        for (std::size_t i = 0; i < chain.size(); ++i) {
            if (!backend_supports(chain[i].ingest_backend, format))
                return Error{ErrorKind::ConfigInvalid,
                             "fallback " + chain[i].name() +
                                 " does not support format " +
                                 std::string(to_string(format))};
            if (chain[i] == primary->second)
                return Error{ErrorKind::ConfigInvalid,
                             "fallback chain for " +
                                 std::string(to_string(format)) +
                                 " repeats the primary " + chain[i].name()};
            for (std::size_t j = 0; j < i; ++j)
                if (chain[i] == chain[j])
                    return Error{ErrorKind::ConfigInvalid,
                                 "fallback chain for " +
                                     std::string(to_string(format)) +
                                     " lists " + chain[i].name() + " twice"};
        }
    }
    return Result<void>{};
}

RoutingPolicy default_policy() {
    RoutingPolicy policy;
    const auto route = [&](DocFormat format, IngestBackend backend) {
        policy.primary_choice[format] = {backend, extract::Paradigm::Table};
        policy.fallback_chain[format] = {{backend, extract::Paradigm::Direct}};
    };
    route(DocFormat::Markdown, IngestBackend::NativeMarkdown);
    route(DocFormat::Docx, IngestBackend::NativeDocx);
    route(DocFormat::Xlsx, IngestBackend::NativeXlsx);
    route(DocFormat::Pdf, IngestBackend::NativePdf);
    route(DocFormat::Transcript, IngestBackend::OcrPreserving);
    return policy;
}

Result<RoutingPolicy> load_policy(const std::filesystem::path& path) {
    auto raw = read_file(path);
    if (!raw) return raw.error();

    json doc;
    try {
        doc = json::parse(*raw);
    } catch (const json::parse_error& e) {
        return Error{ErrorKind::ConfigInvalid,
                     path.string() + ":" +
                         std::to_string(line_of_byte(*raw, e.byte)) +
                         ": invalid JSON: " + e.what()};
    }

    const auto fail = [&](std::string_view needle, const std::string& what) {
        const auto line = line_of(*raw, needle);
        return Error{ErrorKind::ConfigInvalid,
                     path.string() + ":" + std::to_string(line) + ": " + what};
    };

    if (!doc.is_object() || !doc.contains("routes") ||
        !doc["routes"].is_object())
        return Error{ErrorKind::ConfigInvalid,
                     path.string() + ":1: expected top-level object with a "
                                     "\"routes\" object"};

    RoutingPolicy policy;
    for (const auto& [key, route] : doc["routes"].items()) {
        const auto format = parse_format(key);
        if (!format || *format == DocFormat::Unknown)
            return fail(key, "unknown format \"" + key + "\"");
        if (!route.is_object() || !route.contains("primary") ||
            !route["primary"].is_string())
            return fail(key, "route for \"" + key +
                                 "\" needs a \"primary\" method name");
        const std::string primary_name = route["primary"].get<std::string>();
        const auto primary = parse_method_name(primary_name);
        if (!primary)
            return fail(primary_name,
                        "unknown method \"" + primary_name + "\"");
        policy.primary_choice[*format] = *primary;

        std::vector<MethodConfig> chain;
        if (route.contains("fallbacks")) {
            if (!route["fallbacks"].is_array())
                return fail(key, "\"fallbacks\" for \"" + key +
                                     "\" must be an array of method names");
            for (const auto& item : route["fallbacks"]) {
                if (!item.is_string())
                    return fail(key, "\"fallbacks\" for \"" + key +
                                         "\" must contain strings");
                const std::string name = item.get<std::string>();
                const auto method = parse_method_name(name);
                if (!method)
                    return fail(name, "unknown method \"" + name + "\"");
                chain.push_back(*method);
            }
        }
        policy.fallback_chain[*format] = std::move(chain);
    }

    if (auto ok = policy.validate(); !ok)
        return Error{ErrorKind::ConfigInvalid,
                     path.string() + ": " + ok.error().message};
    return policy;
}

Result<ingest::StructuredText> acquire_text(const docgen::DocumentRecord& doc,
                                            const std::string& payload,
                                            IngestBackend backend,
                                            const RunContext& ctx) {
    const bool virtual_clock = ctx.clock == gateway::ClockMode::Virtual;
    const auto price_native = [&](Result<ingest::StructuredText> st) {
        if (st && virtual_clock) st->extract_seconds = kVirtualNativeParseSeconds;
        return st;
    };
    switch (backend) {
        case IngestBackend::NativeMarkdown:
            return price_native(ingest::parse_markdown(payload));
        case IngestBackend::NativeDocx:
            return price_native(ingest::parse_docx(payload));
        case IngestBackend::NativeXlsx:
            return price_native(ingest::parse_xlsx(payload));
        case IngestBackend::NativePdf:
            return price_native(ingest::parse_pdf(payload));
        case IngestBackend::OcrPreserving:
            return ocrsim::transcribe(doc, ctx.preserving);
        case IngestBackend::OcrDestroying:
            return ocrsim::transcribe(doc, ctx.destroying);
        case IngestBackend::TagWrappingFixture: {
            auto st = ingest::parse_pdf(payload);
            if (!st) return st;
            auto wrapped = ingest::wrap_table_in_tags(*st);
            if (virtual_clock) wrapped.extract_seconds = kVirtualTagWrappingSeconds;
            return wrapped;
        }
        case IngestBackend::RemoteOcr: {
            if (ctx.ocr_endpoint.empty())
                return Error{ErrorKind::ConfigInvalid,
                             "remote_ocr backend needs an OCR endpoint"};
            return ocrsim::remote_ocr(ctx.ocr_endpoint, payload,
                                      ctx.ocr_timeout_seconds);
        }
    }
    return Error{ErrorKind::ConfigInvalid, "unknown ingest backend"};
}

extract::ExtractionOutcome run_method(const docgen::DocumentRecord& doc,
                                      const std::string& payload,
                                      const MethodConfig& config,
                                      const RunContext& ctx) {
    if (!backend_supports(config.ingest_backend, doc.format))
        return fatal_stage(config.paradigm, 0.0, ErrorKind::UnroutableFormat,
                           config.name() + " does not support format " +
                               std::string(to_string(doc.format)));
    if (ctx.gw == nullptr)
        return fatal_stage(config.paradigm, 0.0, ErrorKind::ConfigInvalid,
                           "no gateway configured");

    auto st = acquire_text(doc, payload, config.ingest_backend, ctx);
    if (!st)
        return fatal_stage(config.paradigm, 0.0, st.error().kind,
                           st.error().message);
    return extract::run_paradigm(config.paradigm, *st, *ctx.gw, ctx.clock);
}

Result<RoutedOutcome> route_and_extract(const docgen::DocumentRecord& doc,
                                        const std::string& payload,
                                        const RoutingPolicy& policy,
                                        const RunContext& ctx) {
    if (doc.format == DocFormat::Unknown)
        return Error{ErrorKind::UnroutableFormat,
                     "cannot route document of unknown format: " + doc.doc_id};
    const auto primary = policy.primary_choice.find(doc.format);
    if (primary == policy.primary_choice.end())
        return Error{ErrorKind::UnroutableFormat,
                     "policy has no route for format " +
                         std::string(to_string(doc.format))};

    std::vector<MethodConfig> plan{primary->second};
    if (const auto chain = policy.fallback_chain.find(doc.format);
        chain != policy.fallback_chain.end())
        plan.insert(plan.end(), chain->second.begin(), chain->second.end());

    RoutedOutcome routed;
    double ocr_acc = 0.0, llm_acc = 0.0, total_acc = 0.0;
    for (const auto& method : plan) {
        auto outcome = run_method(doc, payload, method, ctx);
        ++routed.attempts;
        ocr_acc += outcome.ocr_seconds;
        llm_acc += outcome.llm_seconds;
        total_acc += outcome.total_seconds;
        outcome.ocr_seconds = ocr_acc;
        outcome.llm_seconds = llm_acc;
        outcome.total_seconds = total_acc;
        routed.method_used = method;
        routed.outcome = std::move(outcome);
        if (!routed.outcome.fatal) return routed;
    }

    routed.outcome.fatal = true;
    routed.outcome.pairs = {};
    routed.outcome.failure_kind = ErrorKind::Exhausted;
    routed.outcome.failure_message =
        "all " + std::to_string(routed.attempts) + " routed methods failed for " +
        doc.doc_id + " (last: " + routed.outcome.failure_message + ")";
    return routed;
}

}  // namespace docpipe::router
