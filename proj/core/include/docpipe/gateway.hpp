#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "docpipe/result.hpp"

namespace docpipe::gateway {

/// Whether latency columns report the token cost model or measured wall
/// time. Accuracy results are identical in both modes.
enum class ClockMode { Virtual, Wall };

constexpr const char* to_string(ClockMode mode) {
    return mode == ClockMode::Virtual ? "virtual" : "wall";
}

/// Affine decode-time model: virtual_latency = base + per_token * tokens.
/// Defaults put a 30-entry direct extraction near 12-13 s and a coordinate
/// locate under half a second, the latency structure this project studies.
struct CostModel {
    double base_latency = 0.25;
    double per_token_latency = 0.02;
};

struct CompletionRequest {
    std::string system_prompt;
    std::string user_prompt;
    std::size_t max_output_tokens = 1024;
};

/// Sampling temperature for every completion. Structured outputs must be
/// reproducible, so this is pinned rather than configurable.
inline constexpr double kTemperature = 0.0;

struct CompletionResponse {
    std::string text;
    std::size_t output_token_count = 0;
    double virtual_latency = 0.0;
    double wall_latency = 0.0;
};

/// Declared tokenizer approximation: each CJK codepoint is one token;
/// everything else splits on ASCII whitespace and costs one token per
/// started 4-byte chunk of the word. Close enough for ratio-level latency
/// claims and fully specified for tests.
std::size_t count_tokens(std::string_view text);

/// The three deterministic behaviors the reference backend implements; the
/// extract paradigms tag their prompts with these so any backend (reference
/// or remote) receives self-contained instructions.
enum class TaskKind { DirectExtract, ReplaceResolve, TableLocate };

/// Marker line embedded at the start of the system prompt, e.g.
/// "[task: table_locate]".
std::string task_marker(TaskKind kind);

class Backend {
  public:
    virtual ~Backend() = default;
    virtual Result<std::string> run(const CompletionRequest& req) = 0;
    virtual std::string name() const = 0;
};

/// Single choke point for model access: counts tokens, prices the virtual
/// clock, measures wall time, and guarantees typed failures.
class Gateway {
  public:
    explicit Gateway(std::shared_ptr<Backend> backend, CostModel cost = {});

    Result<CompletionResponse> complete(const CompletionRequest& req) const;

    const CostModel& cost_model() const { return cost_; }
    const Backend* backend() const { return backend_.get(); }

  private:
    std::shared_ptr<Backend> backend_;
    CostModel cost_;
};

/// Deterministic stand-in for the instruction-tuned model: same request,
/// same text, no network. Its deliberate fallibility (nearest-token
/// association) models LLM behavior well enough to exercise every failure
/// path offline.
std::shared_ptr<Backend> make_reference_backend();

/// The reference behaviors, exposed directly for tests. `payload` is the
/// user prompt body.
std::string reference_behavior(TaskKind kind, std::string_view payload);

struct RemoteBackendConfig {
    std::string endpoint;  // e.g. http://host:port/v1/chat/completions
    std::string model = "local-extractor";
    double timeout_seconds = 30.0;
};

/// Chat-completion wire client (POST {model, messages, temperature,
/// max_tokens}; reads choices[0].message.content).
std::shared_ptr<Backend> make_remote_backend(RemoteBackendConfig config);

}  // namespace docpipe::gateway
