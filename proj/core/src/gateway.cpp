#include "docpipe/gateway.hpp"

#include <chrono>

#include "docpipe/textutil.hpp"

namespace docpipe::gateway {

std::size_t count_tokens(std::string_view text) {
    std::size_t tokens = 0;
    std::size_t word_bytes = 0;
    const auto flush = [&] {
        tokens += (word_bytes + 3) / 4;
        word_bytes = 0;
    };

    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t start = pos;
        const char32_t cp = decode_utf8(text, pos);
        const bool ascii_space =
            cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r';
        if (ascii_space) {
            flush();
        } else if (is_cjk(cp)) {
            flush();
            ++tokens;
        } else {
            word_bytes += pos - start;
        }
    }
    flush();
    return tokens;
}

std::string task_marker(TaskKind kind) {
    switch (kind) {
        case TaskKind::DirectExtract: return "[task: direct_extract]";
        case TaskKind::ReplaceResolve: return "[task: replace_resolve]";
        case TaskKind::TableLocate: return "[task: table_locate]";
    }
    return "[task: unknown]";
}

Gateway::Gateway(std::shared_ptr<Backend> backend, CostModel cost)
    : backend_(std::move(backend)), cost_(cost) {}

Result<CompletionResponse> Gateway::complete(const CompletionRequest& req) const {
    if (req.system_prompt.empty() || req.user_prompt.empty())
        return make_error(ErrorKind::MalformedInput, "completion prompts must be non-empty");
    if (req.max_output_tokens < 1)
        return make_error(ErrorKind::MalformedInput, "max_output_tokens must be >= 1");
    if (!backend_)
        return make_error(ErrorKind::RemoteFailure, "no backend configured");

    const auto start = std::chrono::steady_clock::now();
    Result<std::string> text = [&]() -> Result<std::string> {
        try {
            return backend_->run(req);
        } catch (const std::exception& e) {
            return make_error(ErrorKind::RemoteFailure,
                              std::string("backend threw: ") + e.what());
        } catch (...) {
            return make_error(ErrorKind::RemoteFailure, "backend threw");
        }
    }();
    const double wall = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();

    if (!text) {
        // Everything leaving the gateway is one of the three typed failures.
        const ErrorKind kind = text.error().kind;
        if (kind == ErrorKind::Timeout || kind == ErrorKind::OutputTruncated)
            return text.error();
        return make_error(ErrorKind::RemoteFailure, text.error().message);
    }

    CompletionResponse resp;
    resp.text = std::move(*text);
    resp.output_token_count = count_tokens(resp.text);
    if (!resp.text.empty() && resp.output_token_count == 0)
        resp.output_token_count = 1;
    if (resp.output_token_count > req.max_output_tokens)
        return make_error(ErrorKind::OutputTruncated,
                          "completion hit max_output_tokens");
    resp.virtual_latency = cost_.base_latency +
                           cost_.per_token_latency *
                               static_cast<double>(resp.output_token_count);
    resp.wall_latency = wall;
    return resp;
}

}  // namespace docpipe::gateway
