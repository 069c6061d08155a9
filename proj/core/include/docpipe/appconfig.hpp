#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "docpipe/docgen.hpp"
#include "docpipe/format.hpp"
#include "docpipe/gateway.hpp"
#include "docpipe/ocr_sim.hpp"
#include "docpipe/result.hpp"
#include "docpipe/router.hpp"

namespace docpipe::appconfig {

enum class GatewayChoice { Reference, Remote };

constexpr const char* to_string(GatewayChoice c) {
    return c == GatewayChoice::Reference ? "reference" : "remote";
}

/// Everything a run needs, resolvable from (defaults ← config file ← env
/// vars ← flags), later layers winning.
struct AppConfig {
    // corpus
    std::uint64_t seed = 42;
    std::size_t docs_per_format = 100;
    std::size_t entries_min = 10;
    std::size_t entries_max = 30;
    std::vector<DocFormat> formats = {DocFormat::Docx, DocFormat::Xlsx,
                                      DocFormat::Pdf, DocFormat::Transcript};
    // routing
    std::string policy_path;  ///< empty = built-in default policy
    // gateway
    GatewayChoice backend = GatewayChoice::Reference;
    std::string endpoint;
    std::string model = "local-extractor";
    double timeout_seconds = 30.0;
    gateway::CostModel cost;
    // ocr simulation
    double preserving_noise_rate = ocrsim::kPreservingNoiseRate;
    double destroying_noise_rate = ocrsim::kDestroyingNoiseRate;
    std::uint64_t noise_seed = ocrsim::kDefaultNoiseSeed;
    std::string ocr_endpoint;
    // run
    gateway::ClockMode clock = gateway::ClockMode::Virtual;
    std::size_t workers = 4;
    std::string out_dir = "out";

    docgen::CorpusSpec corpus_spec() const;
    Result<void> validate() const;
};

/// Sets one key ("seed", "backend", "formats", ...) from its string form.
/// Shared by the file loader, env overrides and CLI flags.
Result<void> apply_kv(AppConfig& config, std::string_view key,
                      std::string_view value);

/// All recognized config keys, in dump order.
std::vector<std::string_view> config_keys();

/// Loads a JSON object of config keys over `base`.
Result<AppConfig> load_config_file(const std::filesystem::path& path,
                                   AppConfig base = {});

/// Applies DOCPIPE_<KEY> environment overrides; `getenv` is injectable for
/// tests. Returns the first parse error, if any.
Result<void> apply_env_overrides(
    AppConfig& config,
    const std::function<const char*(const char*)>& getenv_fn);

/// "key = value" lines of the effective configuration; printed to the
/// error stream before every run for reproducibility.
std::string effective_config_dump(const AppConfig& config);

/// Reference or remote backend per the config, wrapped in a gateway.
Result<gateway::Gateway> make_gateway(const AppConfig& config);

/// RunContext view of the config; the gateway must outlive it.
router::RunContext make_run_context(const AppConfig& config,
                                    const gateway::Gateway& gw);

/// Policy from config.policy_path, or the built-in default when unset.
Result<router::RoutingPolicy> load_policy_or_default(const AppConfig& config);

}  // namespace docpipe::appconfig
