// Parser throughput on rendered payloads, including a 10k-row workbook.

#include <benchmark/benchmark.h>

#include <string>

#include "docpipe/docgen.hpp"
#include "docpipe/ingest.hpp"

namespace {

using namespace docpipe;

std::string payload_for(DocFormat format, std::size_t entries) {
    const auto truth = docgen::generate_identities(42, entries);
    auto doc = docgen::render_document(truth, format, 0, 42);
    if (!doc) std::abort();
    return doc->bytes;
}

void BM_ParseMarkdown(benchmark::State& state) {
    const auto bytes = payload_for(DocFormat::Markdown,
                                   static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto st = ingest::parse_markdown(bytes);
        if (!st) std::abort();
        benchmark::DoNotOptimize(st->table);
    }
    state.SetBytesProcessed(
        static_cast<std::int64_t>(state.iterations() * bytes.size()));
}
BENCHMARK(BM_ParseMarkdown)->Arg(30)->Arg(1000);

void BM_ParseDocx(benchmark::State& state) {
    const auto bytes =
        payload_for(DocFormat::Docx, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto st = ingest::parse_docx(bytes);
        if (!st) std::abort();
        benchmark::DoNotOptimize(st->table);
    }
    state.SetBytesProcessed(
        static_cast<std::int64_t>(state.iterations() * bytes.size()));
}
BENCHMARK(BM_ParseDocx)->Arg(30)->Arg(1000);

void BM_ParseXlsx(benchmark::State& state) {
    const auto bytes =
        payload_for(DocFormat::Xlsx, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto st = ingest::parse_xlsx(bytes);
        if (!st) std::abort();
        benchmark::DoNotOptimize(st->table);
    }
    state.SetBytesProcessed(
        static_cast<std::int64_t>(state.iterations() * bytes.size()));
}
// 10000 rows must stay comfortably inside a second per parse.
BENCHMARK(BM_ParseXlsx)->Arg(30)->Arg(1000)->Arg(10000);

void BM_ParsePdf(benchmark::State& state) {
    const auto bytes =
        payload_for(DocFormat::Pdf, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto st = ingest::parse_pdf(bytes);
        if (!st) std::abort();
        benchmark::DoNotOptimize(st->table);
    }
    state.SetBytesProcessed(
        static_cast<std::int64_t>(state.iterations() * bytes.size()));
}
BENCHMARK(BM_ParsePdf)->Arg(30)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
