// End-to-end routed extraction per format against the reference gateway.
// Wall time measures the pipeline machinery; the virtual clock keeps the
// simulated model/OCR latencies out of the numbers.

#include <benchmark/benchmark.h>

#include <string>

#include "docpipe/docgen.hpp"
#include "docpipe/gateway.hpp"
#include "docpipe/router.hpp"

namespace {

using namespace docpipe;

struct PipelineFixture {
    docgen::DocumentRecord doc;
    std::string payload;
    gateway::Gateway gw{gateway::make_reference_backend()};
    router::RoutingPolicy policy = router::default_policy();
    router::RunContext ctx;

    explicit PipelineFixture(DocFormat format) {
        doc.doc_id = "bench-" + std::string(to_string(format));
        doc.format = format;
        doc.template_id = 0;
        doc.seed = 42;
        doc.truth = docgen::generate_identities(42, 30);
        if (format != DocFormat::Transcript) {
            auto rendered = docgen::render_document(doc.truth, format, 0, 42);
            if (!rendered) std::abort();
            payload = std::move(rendered->bytes);
        }
        ctx.gw = &gw;
    }
};

void run_routed(benchmark::State& state, DocFormat format) {
    PipelineFixture fx(format);
    for (auto _ : state) {
        auto routed =
            router::route_and_extract(fx.doc, fx.payload, fx.policy, fx.ctx);
        if (!routed || routed->outcome.fatal) std::abort();
        benchmark::DoNotOptimize(routed->outcome.pairs);
    }
}

void BM_RouteMarkdown(benchmark::State& state) {
    run_routed(state, DocFormat::Markdown);
}
void BM_RouteDocx(benchmark::State& state) {
    run_routed(state, DocFormat::Docx);
}
void BM_RouteXlsx(benchmark::State& state) {
    run_routed(state, DocFormat::Xlsx);
}
void BM_RoutePdf(benchmark::State& state) { run_routed(state, DocFormat::Pdf); }
void BM_RouteTranscript(benchmark::State& state) {
    run_routed(state, DocFormat::Transcript);
}

BENCHMARK(BM_RouteMarkdown);
BENCHMARK(BM_RouteDocx);
BENCHMARK(BM_RouteXlsx);
BENCHMARK(BM_RoutePdf);
BENCHMARK(BM_RouteTranscript);

}  // namespace

BENCHMARK_MAIN();
