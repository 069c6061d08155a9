#include "docpipe/appconfig.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>

#include <json.hpp>

#include "docpipe/fsio.hpp"

namespace docpipe::appconfig {
namespace {

using nlohmann::json;

Result<std::uint64_t> parse_u64(std::string_view key, std::string_view value) {
    errno = 0;
    char* end = nullptr;
    const std::string buf(value);
    const unsigned long long parsed = std::strtoull(buf.c_str(), &end, 10);
    if (errno != 0 || end != buf.c_str() + buf.size() || buf.empty())
        return Error{ErrorKind::ConfigInvalid,
                     std::string(key) + ": expected unsigned integer, got \"" +
                         buf + "\""};
    return static_cast<std::uint64_t>(parsed);
}

Result<double> parse_f64(std::string_view key, std::string_view value) {
    errno = 0;
    char* end = nullptr;
    const std::string buf(value);
    const double parsed = std::strtod(buf.c_str(), &end);
    if (errno != 0 || end != buf.c_str() + buf.size() || buf.empty())
        return Error{ErrorKind::ConfigInvalid,
                     std::string(key) + ": expected number, got \"" + buf +
                         "\""};
    return parsed;
}

Result<std::vector<DocFormat>> parse_formats(std::string_view value) {
    std::vector<DocFormat> formats;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t comma = value.find(',', start);
        if (comma == std::string_view::npos) comma = value.size();
        std::string_view item = value.substr(start, comma - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) {
            const auto format = parse_format(item);
            if (!format || *format == DocFormat::Unknown)
                return Error{ErrorKind::ConfigInvalid,
                             "formats: unknown format \"" + std::string(item) +
                                 "\""};
            if (std::find(formats.begin(), formats.end(), *format) !=
                formats.end())
                return Error{ErrorKind::ConfigInvalid,
                             "formats: duplicate \"" + std::string(item) + "\""};
            formats.push_back(*format);
        }
        start = comma + 1;
    }
    if (formats.empty())
        return Error{ErrorKind::ConfigInvalid, "formats: empty list"};
    return formats;
}

std::string formats_to_string(const std::vector<DocFormat>& formats) {
    std::string out;
    for (DocFormat f : formats) {
        if (!out.empty()) out += ',';
        out += to_string(f);
    }
    return out;
}

}  // namespace

docgen::CorpusSpec AppConfig::corpus_spec() const {
    docgen::CorpusSpec spec;
    spec.seed = seed;
    spec.docs_per_format = docs_per_format;
    spec.entries_min = entries_min;
    spec.entries_max = entries_max;
    spec.formats = formats;
    return spec;
}

Result<void> AppConfig::validate() const {
    if (auto ok = corpus_spec().validate(); !ok) return ok.error();
    if (backend == GatewayChoice::Remote && endpoint.empty())
        return Error{ErrorKind::ConfigInvalid,
                     "remote backend requires an endpoint"};
    if (backend == GatewayChoice::Remote && model.empty())
        return Error{ErrorKind::ConfigInvalid,
                     "remote backend requires a model name"};
    if (workers < 1)
        return Error{ErrorKind::ConfigInvalid, "workers must be >= 1"};
    if (timeout_seconds <= 0.0)
        return Error{ErrorKind::ConfigInvalid, "timeout_seconds must be > 0"};
    if (cost.base_latency < 0.0 || cost.per_token_latency < 0.0)
        return Error{ErrorKind::ConfigInvalid, "latency model must be >= 0"};
    const auto rate_ok = [](double r) { return r >= 0.0 && r <= 1.0; };
    if (!rate_ok(preserving_noise_rate) || !rate_ok(destroying_noise_rate))
        return Error{ErrorKind::ConfigInvalid,
                     "noise rates must be within [0, 1]"};
    if (out_dir.empty())
        return Error{ErrorKind::ConfigInvalid, "out dir must not be empty"};
    return Result<void>{};
}

Result<void> apply_kv(AppConfig& config, std::string_view key,
                      std::string_view value) {
    const auto set_u64 = [&](std::uint64_t& field) -> Result<void> {
        auto parsed = parse_u64(key, value);
        if (!parsed) return parsed.error();
        field = *parsed;
        return Result<void>{};
    };
    const auto set_size = [&](std::size_t& field) -> Result<void> {
        auto parsed = parse_u64(key, value);
        if (!parsed) return parsed.error();
        field = static_cast<std::size_t>(*parsed);
        return Result<void>{};
    };
    const auto set_f64 = [&](double& field) -> Result<void> {
        auto parsed = parse_f64(key, value);
        if (!parsed) return parsed.error();
        field = *parsed;
        return Result<void>{};
    };

    if (key == "seed") return set_u64(config.seed);
    if (key == "docs_per_format") return set_size(config.docs_per_format);
    if (key == "entries_min") return set_size(config.entries_min);
    if (key == "entries_max") return set_size(config.entries_max);
    if (key == "formats") {
        auto parsed = parse_formats(value);
        if (!parsed) return parsed.error();
        config.formats = std::move(*parsed);
        return Result<void>{};
    }
    if (key == "policy") {
        config.policy_path = std::string(value);
        return Result<void>{};
    }
    if (key == "backend") {
        if (value == "reference")
            config.backend = GatewayChoice::Reference;
        else if (value == "remote")
            config.backend = GatewayChoice::Remote;
        else
            return Error{ErrorKind::ConfigInvalid,
                         "backend: expected reference|remote, got \"" +
                             std::string(value) + "\""};
        return Result<void>{};
    }
    if (key == "endpoint") {
        config.endpoint = std::string(value);
        return Result<void>{};
    }
    if (key == "model") {
        config.model = std::string(value);
        return Result<void>{};
    }
    if (key == "timeout_seconds") return set_f64(config.timeout_seconds);
    if (key == "base_latency") return set_f64(config.cost.base_latency);
    if (key == "per_token_latency") return set_f64(config.cost.per_token_latency);
    if (key == "preserving_noise_rate")
        return set_f64(config.preserving_noise_rate);
    if (key == "destroying_noise_rate")
        return set_f64(config.destroying_noise_rate);
    if (key == "noise_seed") return set_u64(config.noise_seed);
    if (key == "ocr_endpoint") {
        config.ocr_endpoint = std::string(value);
        return Result<void>{};
    }
    if (key == "clock") {
        if (value == "virtual")
            config.clock = gateway::ClockMode::Virtual;
        else if (value == "wall")
            config.clock = gateway::ClockMode::Wall;
        else
            return Error{ErrorKind::ConfigInvalid,
                         "clock: expected virtual|wall, got \"" +
                             std::string(value) + "\""};
        return Result<void>{};
    }
    if (key == "workers") {
        auto parsed = parse_u64(key, value);
        if (!parsed) return parsed.error();
        config.workers = static_cast<std::size_t>(*parsed);
        return Result<void>{};
    }
    if (key == "out") {
        config.out_dir = std::string(value);
        return Result<void>{};
    }
    return Error{ErrorKind::ConfigInvalid,
                 "unknown config key \"" + std::string(key) + "\""};
}

std::vector<std::string_view> config_keys() {
    return {"seed",
            "docs_per_format",
            "entries_min",
            "entries_max",
            "formats",
            "policy",
            "backend",
            "endpoint",
            "model",
            "timeout_seconds",
            "base_latency",
            "per_token_latency",
            "preserving_noise_rate",
            "destroying_noise_rate",
            "noise_seed",
            "ocr_endpoint",
            "clock",
            "workers",
            "out"};
}

Result<AppConfig> load_config_file(const std::filesystem::path& path,
                                   AppConfig base) {
    auto raw = read_file(path);
    if (!raw)
        return Error{ErrorKind::ConfigInvalid,
                     "cannot read config file: " + raw.error().message};
    json doc;
    try {
        doc = json::parse(*raw);
    } catch (const json::parse_error& e) {
        return Error{ErrorKind::ConfigInvalid,
                     path.string() + ": invalid JSON: " + e.what()};
    }
    if (!doc.is_object())
        return Error{ErrorKind::ConfigInvalid,
                     path.string() + ": expected a JSON object"};

    for (const auto& [key, value] : doc.items()) {
        std::string text;
        if (value.is_string()) {
            text = value.get<std::string>();
        } else if (value.is_number_integer()) {
            text = std::to_string(value.get<long long>());
        } else if (value.is_number_unsigned()) {
            text = std::to_string(value.get<unsigned long long>());
        } else if (value.is_number_float()) {
            text = json(value.get<double>()).dump();
        } else if (value.is_array() && key == "formats") {
            for (const auto& item : value) {
                if (!item.is_string())
                    return Error{ErrorKind::ConfigInvalid,
                                 path.string() +
                                     ": formats must be an array of strings"};
                if (!text.empty()) text += ',';
                text += item.get<std::string>();
            }
        } else {
            return Error{ErrorKind::ConfigInvalid,
                         path.string() + ": unsupported value type for key \"" +
                             key + "\""};
        }
        if (auto ok = apply_kv(base, key, text); !ok)
            return Error{ErrorKind::ConfigInvalid,
                         path.string() + ": " + ok.error().message};
    }
    return base;
}

Result<void> apply_env_overrides(
    AppConfig& config,
    const std::function<const char*(const char*)>& getenv_fn) {
    for (std::string_view key : config_keys()) {
        std::string env_name = "DOCPIPE_";
        for (char c : key)
            env_name += static_cast<char>(
                std::toupper(static_cast<unsigned char>(c)));
        const char* value = getenv_fn(env_name.c_str());
        if (value == nullptr) continue;
        if (auto ok = apply_kv(config, key, value); !ok)
            return Error{ErrorKind::ConfigInvalid,
                         env_name + ": " + ok.error().message};
    }
    return Result<void>{};
}

std::string effective_config_dump(const AppConfig& config) {
    const auto f64 = [](double v) {
        std::string text = json(v).dump();
        return text;
    };
    std::string out;
    out += "seed = " + std::to_string(config.seed) + "\n";
    out += "docs_per_format = " + std::to_string(config.docs_per_format) + "\n";
    out += "entries_min = " + std::to_string(config.entries_min) + "\n";
    out += "entries_max = " + std::to_string(config.entries_max) + "\n";
    out += "formats = " + formats_to_string(config.formats) + "\n";
    out += "policy = " + (config.policy_path.empty() ? std::string("<default>")
                                                     : config.policy_path) +
           "\n";
    out += "backend = " + std::string(to_string(config.backend)) + "\n";
    out += "endpoint = " + config.endpoint + "\n";
    out += "model = " + config.model + "\n";
    out += "timeout_seconds = " + f64(config.timeout_seconds) + "\n";
    out += "base_latency = " + f64(config.cost.base_latency) + "\n";
    out += "per_token_latency = " + f64(config.cost.per_token_latency) + "\n";
    out += "preserving_noise_rate = " + f64(config.preserving_noise_rate) + "\n";
    out += "destroying_noise_rate = " + f64(config.destroying_noise_rate) + "\n";
    out += "noise_seed = " + std::to_string(config.noise_seed) + "\n";
    out += "ocr_endpoint = " + config.ocr_endpoint + "\n";
    out += "clock = " + std::string(gateway::to_string(config.clock)) + "\n";
    out += "workers = " + std::to_string(config.workers) + "\n";
    out += "out = " + config.out_dir + "\n";
    return out;
}

Result<gateway::Gateway> make_gateway(const AppConfig& config) {
    if (auto ok = config.validate(); !ok) return ok.error();
    std::shared_ptr<gateway::Backend> backend;
    if (config.backend == GatewayChoice::Reference) {
        backend = gateway::make_reference_backend();
    } else {
        gateway::RemoteBackendConfig remote;
        remote.endpoint = config.endpoint;
        remote.model = config.model;
        remote.timeout_seconds = config.timeout_seconds;
        backend = gateway::make_remote_backend(remote);
    }
    return gateway::Gateway(std::move(backend), config.cost);
}

router::RunContext make_run_context(const AppConfig& config,
                                    const gateway::Gateway& gw) {
    router::RunContext ctx;
    ctx.gw = &gw;
    ctx.clock = config.clock;
    ctx.preserving = ocrsim::preserving_profile(config.preserving_noise_rate,
                                                config.noise_seed);
    ctx.destroying = ocrsim::destroying_profile(config.destroying_noise_rate,
                                                config.noise_seed);
    ctx.ocr_endpoint = config.ocr_endpoint;
    ctx.ocr_timeout_seconds = config.timeout_seconds;
    return ctx;
}

Result<router::RoutingPolicy> load_policy_or_default(const AppConfig& config) {
    if (config.policy_path.empty()) return router::default_policy();
    return router::load_policy(config.policy_path);
}

}  // namespace docpipe::appconfig
