// docpipe: generate corpora, extract from documents, evaluate the
// method x format matrix, validate IDs. Diagnostics go to stderr;
// machine-readable JSON results go to stdout.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "docpipe/appconfig.hpp"
#include "docpipe/docgen.hpp"
#include "docpipe/evalharness.hpp"
#include "docpipe/extract.hpp"
#include "docpipe/fsio.hpp"
#include "docpipe/identity.hpp"
#include "docpipe/ingest.hpp"
#include "docpipe/router.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace docpipe;

constexpr int kExitOk = 0;
constexpr int kExitExtraction = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ConfigInvalid: return kExitConfig;
        case ErrorKind::IoFailure:
        case ErrorKind::CorpusMissing: return kExitIo;
        default: return kExitExtraction;
    }
}

int fail(const Error& error) {
    std::cerr << "error: " << to_string(error.kind) << ": " << error.message
              << "\n";
    return exit_code_for(error.kind);
}

/// Flag values captured by CLI11; applied over (defaults <- file <- env).
struct FlagOverrides {
    std::optional<std::string> config_path;
    std::optional<std::string> seed;
    std::optional<std::string> backend;
    std::optional<std::string> endpoint;
    std::optional<std::string> policy;
    std::optional<std::string> clock;
    std::optional<std::string> workers;
    std::optional<std::string> out;
};

/// --backend doubles as a forced ingest backend for `extract`; every other
/// use must name a gateway backend.
struct ResolvedConfig {
    appconfig::AppConfig config;
    std::optional<router::IngestBackend> forced_ingest;
};

Result<ResolvedConfig> resolve_config(const FlagOverrides& flags,
                                      bool allow_ingest_backend) {
    appconfig::AppConfig config;
    if (flags.config_path) {
        auto loaded = appconfig::load_config_file(*flags.config_path,
                                                  std::move(config));
        if (!loaded) return loaded.error();
        config = std::move(*loaded);
    }
    if (auto ok = appconfig::apply_env_overrides(
            config, [](const char* name) { return std::getenv(name); });
        !ok)
        return ok.error();

    ResolvedConfig resolved;
    const auto apply = [&](const char* key,
                           const std::optional<std::string>& value)
        -> Result<void> {
        if (!value) return Result<void>{};
        return appconfig::apply_kv(config, key, *value);
    };
    if (auto ok = apply("seed", flags.seed); !ok) return ok.error();
    if (flags.backend) {
        if (*flags.backend == "reference" || *flags.backend == "remote") {
            if (auto ok = appconfig::apply_kv(config, "backend", *flags.backend);
                !ok)
                return ok.error();
        } else if (const auto ingest = router::parse_backend(*flags.backend);
                   ingest && allow_ingest_backend) {
            resolved.forced_ingest = *ingest;
        } else {
            return Error{ErrorKind::ConfigInvalid,
                         "--backend: expected reference|remote" +
                             std::string(allow_ingest_backend
                                             ? " or an ingest backend name"
                                             : "") +
                             ", got \"" + *flags.backend + "\""};
        }
    }
    if (auto ok = apply("endpoint", flags.endpoint); !ok) return ok.error();
    if (auto ok = apply("policy", flags.policy); !ok) return ok.error();
    if (auto ok = apply("clock", flags.clock); !ok) return ok.error();
    if (auto ok = apply("workers", flags.workers); !ok) return ok.error();
    if (auto ok = apply("out", flags.out); !ok) return ok.error();

    if (auto ok = config.validate(); !ok) return ok.error();
    std::cerr << "# effective config\n" << appconfig::effective_config_dump(config);
    resolved.config = std::move(config);
    return resolved;
}

fs::path corpus_dir(const appconfig::AppConfig& config) {
    return fs::path(config.out_dir) / "corpus";
}

int cmd_generate(const FlagOverrides& flags) {
    auto resolved = resolve_config(flags, false);
    if (!resolved) return fail(resolved.error());
    const auto& config = resolved->config;

    auto manifest = docgen::generate_corpus(config.corpus_spec(),
                                            corpus_dir(config));
    if (!manifest) return fail(manifest.error());

    const fs::path manifest_path = corpus_dir(config) / "manifest.json";
    auto bytes = read_file(manifest_path);
    if (!bytes) return fail(bytes.error());

    ordered_json out;
    out["manifest"] = manifest_path.string();
    out["documents"] = manifest->documents.size();
    out["pairs"] = manifest->total_pairs();
    out["manifest_sha256"] = evalharness::sha256_hex(*bytes);
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

/// Finds the corpus record for a payload path so OCR lanes can re-render
/// it; unknown files become truth-less synthetic records.
docgen::DocumentRecord record_for(const fs::path& doc_path, DocFormat format) {
    const fs::path candidates[] = {
        doc_path.parent_path().parent_path() / "manifest.json",
        doc_path.parent_path() / "manifest.json",
    };
    for (const auto& manifest_path : candidates) {
        std::error_code ec;
        if (!fs::exists(manifest_path, ec)) continue;
        auto manifest = docgen::load_manifest(manifest_path);
        if (!manifest) continue;
        for (auto& doc : manifest->documents) {
            std::error_code eq_ec;
            if (fs::equivalent(doc.payload_path, doc_path, eq_ec) ||
                doc.payload_path.filename() == doc_path.filename())
                return doc;
        }
    }
    docgen::DocumentRecord synthetic;
    synthetic.doc_id = doc_path.stem().string();
    synthetic.format = format;
    synthetic.payload_path = doc_path;
    return synthetic;
}

int cmd_extract(const FlagOverrides& flags, const std::string& doc_path,
                const std::optional<std::string>& paradigm_flag,
                const std::optional<std::string>& ingest_flag) {
    auto resolved = resolve_config(flags, true);
    if (!resolved) return fail(resolved.error());
    const auto& config = resolved->config;

    auto payload = read_file(doc_path);
    if (!payload) return fail(payload.error());
    const DocFormat format = ingest::detect_format(doc_path, *payload);
    if (format == DocFormat::Unknown)
        return fail(Error{ErrorKind::UnroutableFormat,
                          "cannot determine format of " + doc_path});

    auto doc = record_for(doc_path, format);
    doc.format = format;
    doc.payload_path = doc_path;

    auto gw = appconfig::make_gateway(config);
    if (!gw) return fail(gw.error());
    const auto ctx = appconfig::make_run_context(config, *gw);
    auto policy = appconfig::load_policy_or_default(config);
    if (!policy) return fail(policy.error());

    std::optional<router::IngestBackend> forced_ingest = resolved->forced_ingest;
    if (ingest_flag) {
        const auto parsed = router::parse_backend(*ingest_flag);
        if (!parsed)
            return fail(Error{ErrorKind::ConfigInvalid,
                              "--ingest: unknown backend \"" + *ingest_flag +
                                  "\""});
        forced_ingest = *parsed;
    }
    std::optional<extract::Paradigm> forced_paradigm;
    if (paradigm_flag) {
        const auto parsed = extract::parse_paradigm(*paradigm_flag);
        if (!parsed)
            return fail(Error{ErrorKind::ConfigInvalid,
                              "--paradigm: expected direct|replace|table, "
                              "got \"" +
                                  *paradigm_flag + "\""});
        forced_paradigm = *parsed;
    }

    extract::ExtractionOutcome outcome;
    std::string method_name;
    std::size_t attempts = 1;
    if (forced_ingest || forced_paradigm) {
        router::MethodConfig method;
        const auto primary = policy->primary_choice.find(format);
        if (primary != policy->primary_choice.end()) method = primary->second;
        if (forced_ingest) method.ingest_backend = *forced_ingest;
        if (forced_paradigm) method.paradigm = *forced_paradigm;
        outcome = router::run_method(doc, *payload, method, ctx);
        method_name = method.name();
    } else {
        auto routed = router::route_and_extract(doc, *payload, *policy, ctx);
        if (!routed) return fail(routed.error());
        outcome = std::move(routed->outcome);
        method_name = routed->method_used.name();
        attempts = routed->attempts;
    }

    ordered_json out;
    out["doc_id"] = doc.doc_id;
    out["format"] = to_string(format);
    out["method"] = method_name;
    out["attempts"] = attempts;
    out["fatal"] = outcome.fatal;
    if (outcome.failure_kind) {
        out["failure_kind"] = to_string(*outcome.failure_kind);
        out["failure_message"] = outcome.failure_message;
    }
    auto pairs = ordered_json::array();
    for (const auto& pair : outcome.pairs.pairs) {
        ordered_json p;
        p["name"] = pair.name;
        p["id_number"] = pair.id_number;
        pairs.push_back(std::move(p));
    }
    out["pairs"] = std::move(pairs);
    out["ocr_s"] = outcome.ocr_seconds;
    out["llm_s"] = outcome.llm_seconds;
    out["total_s"] = outcome.total_seconds;
    std::cout << out.dump(2) << "\n";
    return outcome.fatal ? kExitExtraction : kExitOk;
}

/// Every (backend x paradigm) pair whose backend can parse at least one
/// corpus format; remote lanes only when their endpoints are configured.
std::vector<router::MethodConfig> default_method_set(
    const docgen::Manifest& manifest, const appconfig::AppConfig& config) {
    std::vector<router::MethodConfig> methods;
    for (router::IngestBackend backend : router::kAllBackends) {
        if (backend == router::IngestBackend::RemoteOcr &&
            config.ocr_endpoint.empty())
            continue;
        const bool usable = std::any_of(
            manifest.documents.begin(), manifest.documents.end(),
            [&](const auto& d) {
                return router::backend_supports(backend, d.format);
            });
        if (!usable) continue;
        for (extract::Paradigm paradigm :
             {extract::Paradigm::Direct, extract::Paradigm::Replace,
              extract::Paradigm::Table})
            methods.push_back({backend, paradigm});
    }
    return methods;
}

int cmd_evaluate(const FlagOverrides& flags) {
    auto resolved = resolve_config(flags, false);
    if (!resolved) return fail(resolved.error());
    const auto& config = resolved->config;

    auto manifest = docgen::load_manifest(corpus_dir(config) / "manifest.json");
    if (!manifest) return fail(manifest.error());

    auto gw = appconfig::make_gateway(config);
    if (!gw) return fail(gw.error());
    const auto ctx = appconfig::make_run_context(config, *gw);

    const auto methods = default_method_set(*manifest, config);
    auto report = evalharness::run_matrix(*manifest, methods, ctx,
                                          config.workers);
    if (!report) return fail(report.error());

    const fs::path report_dir = fs::path(config.out_dir) / "report";
    auto files = evalharness::emit_reports(*report, report_dir);
    if (!files) return fail(files.error());

    ordered_json best = ordered_json::object();
    for (DocFormat format : report->format_order) {
        const evalharness::CellReport* winner = nullptr;
        for (const auto& cell : report->cells) {
            if (cell.format != format || cell.reference_constants) continue;
            if (cell.document_count == 0) continue;
            if (winner == nullptr || cell.f1 > winner->f1 ||
                (cell.f1 == winner->f1 && cell.total_s < winner->total_s))
                winner = &cell;
        }
        if (winner == nullptr) continue;
        ordered_json entry;
        entry["method"] = winner->method;
        entry["f1"] = winner->f1;
        entry["total_s"] = winner->total_s;
        best[std::string(to_string(format))] = std::move(entry);
        std::cerr << "best " << to_string(format) << ": " << winner->method
                  << " (f1 " << winner->f1 << ", " << winner->total_s
                  << " s)\n";
    }

    ordered_json out;
    out["report_dir"] = report_dir.string();
    auto file_list = ordered_json::array();
    for (const auto& file : *files) file_list.push_back(file.string());
    out["files"] = std::move(file_list);
    out["corpus_digest"] = report->corpus_digest;
    out["config_digest"] = report->config_digest;
    out["best_method_per_format"] = std::move(best);
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int cmd_validate_id(const std::string& id) {
    const bool valid = identity::validate_id(id);
    ordered_json out;
    out["id"] = id;
    out["valid"] = valid;
    if (!valid && id.size() == 18) {
        if (const auto expected =
                identity::expected_check_char(std::string_view(id).substr(0, 17)))
            out["expected_check_char"] = std::string(1, *expected);
    }
    std::cout << out.dump(2) << "\n";
    return valid ? kExitOk : kExitExtraction;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Format-aware identity extraction pipeline"};
    app.require_subcommand(1);
    app.fallthrough();

    FlagOverrides flags;
    const auto add_opt = [&](const char* name, std::optional<std::string>& slot,
                             const char* help) {
        app.add_option_function<std::string>(
            name, [&slot](const std::string& v) { slot = v; }, help);
    };
    add_opt("--config", flags.config_path, "JSON config file");
    add_opt("--seed", flags.seed, "global corpus seed");
    add_opt("--backend", flags.backend,
            "gateway backend (reference|remote); extract also accepts an "
            "ingest backend name");
    add_opt("--endpoint", flags.endpoint, "chat-completion endpoint URL");
    add_opt("--policy", flags.policy, "routing policy JSON file");
    add_opt("--clock", flags.clock, "latency accounting (virtual|wall)");
    add_opt("--workers", flags.workers, "worker pool size");
    add_opt("--out", flags.out, "output directory");

    auto* generate = app.add_subcommand("generate", "render a seeded corpus");
    auto* extract_cmd =
        app.add_subcommand("extract", "extract pairs from one document");
    std::string doc_path;
    std::optional<std::string> paradigm_flag, ingest_flag;
    extract_cmd->add_option("doc", doc_path, "document path")->required();
    extract_cmd->add_option_function<std::string>(
        "--paradigm",
        [&](const std::string& v) { paradigm_flag = v; },
        "force a paradigm (direct|replace|table)");
    extract_cmd->add_option_function<std::string>(
        "--ingest", [&](const std::string& v) { ingest_flag = v; },
        "force an ingest backend");
    auto* evaluate =
        app.add_subcommand("evaluate", "run the method x format matrix");
    auto* validate =
        app.add_subcommand("validate-id", "check an 18-character ID");
    std::string id_value;
    validate->add_option("id", id_value, "ID to validate")->required();

    CLI11_PARSE(app, argc, argv);

    if (generate->parsed()) return cmd_generate(flags);
    if (extract_cmd->parsed())
        return cmd_extract(flags, doc_path, paradigm_flag, ingest_flag);
    if (evaluate->parsed()) return cmd_evaluate(flags);
    if (validate->parsed()) return cmd_validate_id(id_value);
    return kExitConfig;
}
