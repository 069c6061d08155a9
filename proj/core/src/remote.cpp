#include <chrono>
#include <cmath>

#include <httplib.h>
#include <json.hpp>

#include "docpipe/gateway.hpp"
#include "docpipe/ingest.hpp"
#include "docpipe/ocr_sim.hpp"

namespace docpipe {

namespace {

struct SplitUrl {
    std::string host_port;  // scheme://host:port
    std::string path;       // /the/rest
};

Result<SplitUrl> split_url(const std::string& url) {
    const std::size_t scheme = url.find("://");
    if (scheme == std::string::npos)
        return make_error(ErrorKind::ConfigInvalid,
                          "endpoint must include a scheme: " + url);
    const std::size_t path = url.find('/', scheme + 3);
    if (path == std::string::npos) return SplitUrl{url, "/"};
    return SplitUrl{url.substr(0, path), url.substr(path)};
}

void set_timeouts(httplib::Client& client, double seconds) {
    const auto whole = static_cast<time_t>(seconds);
    const auto micros = static_cast<time_t>(
        std::llround((seconds - static_cast<double>(whole)) * 1e6));
    client.set_connection_timeout(whole, micros);
    client.set_read_timeout(whole, micros);
    client.set_write_timeout(whole, micros);
}

bool looks_like_timeout(const httplib::Result& result) {
    return result.error() == httplib::Error::ConnectionTimeout ||
           result.error() == httplib::Error::Read ||
           result.error() == httplib::Error::Connection;
}

}  // namespace

namespace gateway {

namespace {

class RemoteBackend final : public Backend {
  public:
    explicit RemoteBackend(RemoteBackendConfig config)
        : config_(std::move(config)) {}

    Result<std::string> run(const CompletionRequest& req) override {
        auto url = split_url(config_.endpoint);
        if (!url) return make_error(ErrorKind::RemoteFailure, url.error().message);

        nlohmann::ordered_json body;
        body["model"] = config_.model;
        body["messages"] = nlohmann::ordered_json::array(
            {{{"role", "system"}, {"content", req.system_prompt}},
             {{"role", "user"}, {"content", req.user_prompt}}});
        body["temperature"] = kTemperature;
        body["max_tokens"] = req.max_output_tokens;

        httplib::Client client(url->host_port);
        set_timeouts(client, config_.timeout_seconds);
        const auto result =
            client.Post(url->path, body.dump(), "application/json");
        if (!result) {
            if (looks_like_timeout(result))
                return make_error(ErrorKind::Timeout,
                                  "chat endpoint unreachable or timed out: " +
                                      httplib::to_string(result.error()));
            return make_error(ErrorKind::RemoteFailure,
                              "chat request failed: " +
                                  httplib::to_string(result.error()));
        }
        if (result->status < 200 || result->status >= 300)
            return make_error(ErrorKind::RemoteFailure,
                              "chat endpoint returned status " +
                                  std::to_string(result->status));

        const auto parsed =
            nlohmann::json::parse(result->body, nullptr, false);
        if (parsed.is_discarded())
            return make_error(ErrorKind::MalformedResponse,
                              "chat response is not JSON");
        try {
            return parsed.at("choices").at(0).at("message").at("content")
                .get<std::string>();
        } catch (const nlohmann::json::exception&) {
            return make_error(ErrorKind::MalformedResponse,
                              "chat response lacks choices[0].message.content");
        }
    }

    std::string name() const override { return "remote:" + config_.model; }

  private:
    RemoteBackendConfig config_;
};

}  // namespace

std::shared_ptr<Backend> make_remote_backend(RemoteBackendConfig config) {
    return std::make_shared<RemoteBackend>(std::move(config));
}

}  // namespace gateway

namespace ocrsim {

Result<ingest::StructuredText> remote_ocr(const std::string& endpoint,
                                          std::string_view image_bytes,
                                          double timeout_seconds) {
    const auto start = std::chrono::steady_clock::now();
    auto url = split_url(endpoint);
    if (!url) return url.error();

    httplib::Client client(url->host_port);
    set_timeouts(client, timeout_seconds);
    const auto result =
        client.Post(url->path, std::string(image_bytes),
                    "application/octet-stream");
    if (!result) {
        if (looks_like_timeout(result))
            return make_error(ErrorKind::Timeout,
                              "ocr endpoint unreachable or timed out: " +
                                  httplib::to_string(result.error()));
        return make_error(ErrorKind::RemoteFailure,
                          "ocr request failed: " +
                              httplib::to_string(result.error()));
    }
    if (result->status < 200 || result->status >= 300)
        return make_error(ErrorKind::RemoteFailure,
                          "ocr endpoint returned status " +
                              std::to_string(result->status));

    const auto parsed = nlohmann::json::parse(result->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object() ||
        !parsed.contains("lines") || !parsed.at("lines").is_array())
        return make_error(ErrorKind::MalformedResponse,
                          "ocr response lacks a lines array");

    std::vector<std::string> lines;
    std::vector<ingest::TextFragment> fragments;
    bool all_boxed = true;
    try {
        for (const auto& entry : parsed.at("lines")) {
            const std::string text = entry.at("text").get<std::string>();
            lines.push_back(text);
            if (entry.contains("bbox") && entry.at("bbox").is_array() &&
                entry.at("bbox").size() == 4) {
                // Image y grows downward; negate so the shared fragment
                // pipeline (PDF convention, y up) keeps reading order.
                fragments.push_back({entry.at("bbox")[0].get<double>(),
                                     -entry.at("bbox")[1].get<double>(), text});
            } else {
                all_boxed = false;
            }
        }
    } catch (const nlohmann::json::exception& e) {
        return make_error(ErrorKind::MalformedResponse,
                          std::string("ocr response entry malformed: ") +
                              e.what());
    }
    if (lines.empty())
        return make_error(ErrorKind::MalformedResponse,
                          "ocr response contains no lines");

    ingest::StructuredText st;
    if (all_boxed) {
        st = ingest::structure_fragments(std::move(fragments));
    } else {
        std::string text;
        for (const auto& line : lines) {
            text += line;
            text.push_back('\n');
        }
        st.plain_text = std::move(text);
        st.fidelity = ingest::Fidelity::Lost;
    }
    st.source_format = DocFormat::Unknown;
    st.extract_seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    return st;
}

}  // namespace ocrsim

}  // namespace docpipe
