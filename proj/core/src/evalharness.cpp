#include "docpipe/evalharness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include <json.hpp>
#include <openssl/evp.h>

#include "docpipe/fsio.hpp"
#include "docpipe/identity.hpp"

namespace docpipe::evalharness {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed(double v, int precision = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

/// Corpus identity: seed plus every record's id, format, seeds and truth
/// pairs, in doc_id order. Independent of where the corpus lives on disk.
std::string corpus_fingerprint(const docgen::Manifest& manifest) {
    std::vector<const docgen::DocumentRecord*> docs;
    docs.reserve(manifest.documents.size());
    for (const auto& d : manifest.documents) docs.push_back(&d);
    std::sort(docs.begin(), docs.end(),
              [](const auto* a, const auto* b) { return a->doc_id < b->doc_id; });

    std::string out = "corpus_seed=" + std::to_string(manifest.corpus_seed) + "\n";
    for (const auto* d : docs) {
        out += d->doc_id;
        out += '|';
        out += to_string(d->format);
        out += '|';
        out += std::to_string(d->template_id);
        out += '|';
        out += std::to_string(d->seed);
        out += '|';
        for (const auto& pair : d->truth.pairs) {
            out += pair.name;
            out += ':';
            out += pair.id_number;
            out += ',';
        }
        out += '\n';
    }
    return out;
}

std::string config_fingerprint(const std::vector<router::MethodConfig>& methods,
                               const router::RunContext& ctx) {
    std::string out = "clock=";
    out += gateway::to_string(ctx.clock);
    out += "\nmethods=";
    for (const auto& m : methods) {
        out += m.name();
        out += ',';
    }
    out += "\ncost=" + fixed(ctx.gw ? ctx.gw->cost_model().base_latency : 0.0, 6) +
           "," + fixed(ctx.gw ? ctx.gw->cost_model().per_token_latency : 0.0, 6);
    out += "\nbackend=";
    out += ctx.gw && ctx.gw->backend() ? ctx.gw->backend()->name() : "none";
    const auto profile = [&](const ocrsim::OcrProfile& p) {
        return fixed(p.char_noise_rate, 6) + "," +
               std::to_string(p.noise_seed) + "," +
               fixed(p.simulated_ocr_seconds, 6);
    };
    out += "\npreserving=" + profile(ctx.preserving);
    out += "\ndestroying=" + profile(ctx.destroying);
    out += "\nocr_endpoint=" + ctx.ocr_endpoint + "\n";
    return out;
}

CellReport multimodal_reference_cell() {
    CellReport cell;
    cell.method = kMultimodalReferenceMethod;
    cell.format = DocFormat::Transcript;
    cell.precision = kMultimodalF1;
    cell.recall = kMultimodalF1;
    cell.f1 = kMultimodalF1;
    cell.f1_std = 0.0;
    cell.success_rate = kMultimodalSuccessRate;
    cell.perfect_rate = kMultimodalPerfectRate;
    cell.total_s = kMultimodalTotalSeconds;
    cell.reference_constants = true;
    return cell;
}

const CellReport* find_cell(const MatrixReport& report, std::string_view method,
                            DocFormat format) {
    for (const auto& cell : report.cells)
        if (cell.method == method && cell.format == format) return &cell;
    return nullptr;
}

ordered_json cell_to_json(const CellReport& cell) {
    ordered_json j;
    j["method"] = cell.method;
    j["format"] = to_string(cell.format);
    j["document_count"] = cell.document_count;
    j["precision"] = cell.precision;
    j["recall"] = cell.recall;
    j["f1"] = cell.f1;
    j["f1_std"] = cell.f1_std;
    j["success_rate"] = cell.success_rate;
    j["perfect_rate"] = cell.perfect_rate;
    j["ocr_s"] = cell.ocr_s;
    j["llm_s"] = cell.llm_s;
    j["total_s"] = cell.total_s;
    j["reference_constants"] = cell.reference_constants;
    auto docs = ordered_json::array();
    for (const auto& d : cell.documents) {
        ordered_json record;
        record["doc_id"] = d.doc_id;
        record["precision"] = d.precision;
        record["recall"] = d.recall;
        record["f1"] = d.f1;
        record["fatal"] = d.fatal;
        if (d.failure_kind)
            record["failure_kind"] = to_string(*d.failure_kind);
        else
            record["failure_kind"] = nullptr;
        record["ocr_s"] = d.ocr_s;
        record["llm_s"] = d.llm_s;
        record["total_s"] = d.total_s;
        record["extracted_count"] = d.extracted_count;
        docs.push_back(std::move(record));
    }
    j["documents"] = std::move(docs);
    return j;
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(),
               nullptr);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xF];
    }
    return out;
}

DocOutcome score_outcome(const docgen::DocumentRecord& doc,
                         const extract::ExtractionOutcome& outcome) {
    DocOutcome record;
    record.doc_id = doc.doc_id;
    record.fatal = outcome.fatal;
    record.failure_kind = outcome.failure_kind;
    record.ocr_s = outcome.ocr_seconds;
    record.llm_s = outcome.llm_seconds;
    record.total_s = outcome.total_seconds;
    record.extracted_count = outcome.pairs.size();
    if (!outcome.fatal) {
        const auto metrics =
            identity::compute_metrics(identity::match_pairs(outcome.pairs, doc.truth));
        record.precision = metrics.precision;
        record.recall = metrics.recall;
        record.f1 = metrics.f1;
    }
    return record;
}

CellReport aggregate_cell(std::string method, DocFormat format,
                          std::vector<DocOutcome> documents) {
    std::sort(documents.begin(), documents.end(),
              [](const DocOutcome& a, const DocOutcome& b) {
                  return a.doc_id < b.doc_id;
              });
    CellReport cell;
    cell.method = std::move(method);
    cell.format = format;
    cell.document_count = documents.size();
    if (!documents.empty()) {
        const double n = static_cast<double>(documents.size());
        for (const auto& d : documents) {
            cell.precision += d.precision;
            cell.recall += d.recall;
            cell.f1 += d.f1;
            cell.ocr_s += d.ocr_s;
            cell.llm_s += d.llm_s;
            cell.total_s += d.total_s;
            if (!d.fatal) cell.success_rate += 1.0;
            if (d.f1 == 1.0) cell.perfect_rate += 1.0;
        }
        cell.precision /= n;
        cell.recall /= n;
        cell.f1 /= n;
        cell.ocr_s /= n;
        cell.llm_s /= n;
        cell.total_s /= n;
        cell.success_rate /= n;
        cell.perfect_rate /= n;
        double variance = 0.0;
        for (const auto& d : documents) {
            const double delta = d.f1 - cell.f1;
            variance += delta * delta;
        }
        cell.f1_std = std::sqrt(variance / n);
    }
    cell.documents = std::move(documents);
    return cell;
}

Result<MatrixReport> run_matrix(const docgen::Manifest& manifest,
                                const std::vector<router::MethodConfig>& methods,
                                const router::RunContext& ctx,
                                std::size_t workers) {
    if (manifest.documents.empty())
        return Error{ErrorKind::CorpusMissing, "manifest lists no documents"};
    if (methods.empty())
        return Error{ErrorKind::ConfigInvalid, "no methods to evaluate"};
    if (ctx.gw == nullptr)
        return Error{ErrorKind::ConfigInvalid, "no gateway configured"};
    if (workers < 1) workers = 1;

    std::vector<DocFormat> corpus_formats;
    for (DocFormat format : kAllFormats) {
        const bool present =
            std::any_of(manifest.documents.begin(), manifest.documents.end(),
                        [&](const auto& d) { return d.format == format; });
        if (present) corpus_formats.push_back(format);
    }
    for (const auto& method : methods) {
        const bool usable =
            std::any_of(corpus_formats.begin(), corpus_formats.end(),
                        [&](DocFormat f) {
                            return router::backend_supports(method.ingest_backend, f);
                        });
        if (!usable)
            return Error{ErrorKind::ConfigInvalid,
                         "method " + method.name() +
                             " supports no format present in the corpus"};
    }

    // Document order is fixed up front so the later fold is independent of
    // which worker finishes first.
    std::vector<std::size_t> doc_order(manifest.documents.size());
    for (std::size_t i = 0; i < doc_order.size(); ++i) doc_order[i] = i;
    std::sort(doc_order.begin(), doc_order.end(), [&](std::size_t a, std::size_t b) {
        return manifest.documents[a].doc_id < manifest.documents[b].doc_id;
    });

    struct Task {
        std::size_t method_index;
        std::size_t doc_index;
    };
    std::vector<Task> tasks;
    for (std::size_t m = 0; m < methods.size(); ++m)
        for (std::size_t d : doc_order)
            if (router::backend_supports(methods[m].ingest_backend,
                                         manifest.documents[d].format))
                tasks.push_back({m, d});

    std::vector<DocOutcome> results(tasks.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        while (true) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            const auto& doc = manifest.documents[tasks[t].doc_index];
            const auto& method = methods[tasks[t].method_index];
            std::string payload;
            if (auto bytes = read_file(doc.payload_path))
                payload = std::move(*bytes);
            auto outcome = router::run_method(doc, payload, method, ctx);
            results[t] = score_outcome(doc, outcome);
        }
    };
    if (workers == 1 || tasks.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const std::size_t n = std::min(workers, tasks.size());
        pool.reserve(n);
        for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    MatrixReport report;
    report.clock_mode = ctx.clock;
    report.corpus_digest = sha256_hex(corpus_fingerprint(manifest));
    report.config_digest = sha256_hex(config_fingerprint(methods, ctx));
    report.format_order = corpus_formats;
    if (std::find(report.format_order.begin(), report.format_order.end(),
                  DocFormat::Transcript) == report.format_order.end())
        report.format_order.push_back(DocFormat::Transcript);

    for (std::size_t m = 0; m < methods.size(); ++m) {
        report.method_order.push_back(methods[m].name());
        for (DocFormat format : corpus_formats) {
            if (!router::backend_supports(methods[m].ingest_backend, format))
                continue;
            std::vector<DocOutcome> docs;
            for (std::size_t t = 0; t < tasks.size(); ++t)
                if (tasks[t].method_index == m &&
                    manifest.documents[tasks[t].doc_index].format == format)
                    docs.push_back(results[t]);
            report.cells.push_back(
                aggregate_cell(methods[m].name(), format, std::move(docs)));
        }
    }
    report.method_order.push_back(kMultimodalReferenceMethod);
    report.cells.push_back(multimodal_reference_cell());
    return report;
}

Result<std::vector<std::filesystem::path>> emit_reports(
    const MatrixReport& report, const std::filesystem::path& out_dir) {
    ordered_json matrix;
    matrix["clock_mode"] = gateway::to_string(report.clock_mode);
    matrix["corpus_digest"] = report.corpus_digest;
    matrix["config_digest"] = report.config_digest;
    auto method_order = ordered_json::array();
    for (const auto& m : report.method_order) method_order.push_back(m);
    matrix["method_order"] = std::move(method_order);
    auto format_order = ordered_json::array();
    for (DocFormat f : report.format_order) format_order.push_back(to_string(f));
    matrix["format_order"] = std::move(format_order);
    auto cells = ordered_json::array();
    for (const auto& cell : report.cells) cells.push_back(cell_to_json(cell));
    matrix["cells"] = std::move(cells);

    std::string table =
        "method,format,precision,recall,f1,success_rate,perfect_rate,"
        "ocr_s,llm_s,total_s,f1_std\n";
    for (const auto& cell : report.cells) {
        table += cell.method;
        table += ',';
        table += to_string(cell.format);
        table += ',' + fixed(cell.precision) + ',' + fixed(cell.recall) + ',' +
                 fixed(cell.f1) + ',' + fixed(cell.success_rate) + ',' +
                 fixed(cell.perfect_rate) + ',' + fixed(cell.ocr_s) + ',' +
                 fixed(cell.llm_s) + ',' + fixed(cell.total_s) + ',' +
                 fixed(cell.f1_std) + '\n';
    }

    const auto heatmap = [&](auto value_of) {
        std::string grid = "method";
        for (DocFormat f : report.format_order) {
            grid += ',';
            grid += to_string(f);
        }
        grid += '\n';
        for (const auto& method : report.method_order) {
            grid += method;
            for (DocFormat f : report.format_order) {
                grid += ',';
                const CellReport* cell = find_cell(report, method, f);
                grid += cell ? fixed(value_of(*cell)) : std::string("NA");
            }
            grid += '\n';
        }
        return grid;
    };

    const std::vector<std::pair<std::filesystem::path, std::string>> files = {
        {out_dir / "matrix.json", matrix.dump(2) + "\n"},
        {out_dir / "table.csv", table},
        {out_dir / "heatmap_f1.csv",
         heatmap([](const CellReport& c) { return c.f1; })},
        {out_dir / "heatmap_time.csv",
         heatmap([](const CellReport& c) { return c.total_s; })},
    };
    std::vector<std::filesystem::path> written;
    for (const auto& [path, bytes] : files) {
        if (auto ok = write_file(path, bytes); !ok) return ok.error();
        written.push_back(path);
    }
    return written;
}

Result<double> compare_speedup(const MatrixReport& report,
                               std::string_view fast_method,
                               std::string_view slow_method, DocFormat format) {
    const CellReport* fast = find_cell(report, fast_method, format);
    const CellReport* slow = find_cell(report, slow_method, format);
    if (fast == nullptr || slow == nullptr)
        return Error{ErrorKind::CellMissing,
                     "speedup needs both cells present for format " +
                         std::string(to_string(format))};
    const auto live = [](const CellReport& c) {
        return (c.reference_constants || c.success_rate > 0.0) && c.total_s > 0.0;
    };
    if (!live(*fast) || !live(*slow))
        return Error{ErrorKind::CellMissing,
                     "speedup needs non-fatal cells with nonzero time"};
    return slow->total_s / fast->total_s;
}

}  // namespace docpipe::evalharness
