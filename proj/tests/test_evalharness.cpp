#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "docpipe/docgen.hpp"
#include "docpipe/evalharness.hpp"
#include "docpipe/fsio.hpp"
#include "docpipe/router.hpp"

using namespace docpipe;
using evalharness::CellReport;
using evalharness::DocOutcome;
using router::IngestBackend;
using router::MethodConfig;
using extract::Paradigm;

namespace {

std::filesystem::path scratch_dir(const std::string& leaf) {
    const auto dir = std::filesystem::temp_directory_path() /
                     "docpipe_test_evalharness" / leaf;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

/// Two docx + two transcript documents, three entries each.
docgen::Manifest small_manifest(const std::filesystem::path& dir) {
    docgen::CorpusSpec spec;
    spec.seed = 7;
    spec.docs_per_format = 2;
    spec.entries_min = 3;
    spec.entries_max = 4;
    spec.formats = {DocFormat::Docx, DocFormat::Transcript};
    auto manifest = docgen::generate_corpus(spec, dir);
    REQUIRE(manifest.ok());
    return *manifest;
}

std::vector<MethodConfig> small_methods() {
    return {{IngestBackend::NativeDocx, Paradigm::Table},
            {IngestBackend::OcrPreserving, Paradigm::Table},
            {IngestBackend::OcrDestroying, Paradigm::Table}};
}

bool is_hex64(const std::string& s) {
    return s.size() == 64 &&
           std::all_of(s.begin(), s.end(), [](char c) {
               return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
           });
}

std::size_t count_occurrences(const std::string& haystack,
                              const std::string& needle) {
    std::size_t count = 0;
    for (auto at = haystack.find(needle); at != std::string::npos;
         at = haystack.find(needle, at + needle.size()))
        ++count;
    return count;
}

}  // namespace

TEST_CASE("sha256_hex matches published vectors") {
    CHECK(evalharness::sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(evalharness::sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("score_outcome keeps metrics and timings apart") {
    docgen::DocumentRecord doc;
    doc.doc_id = "d-1";
    doc.truth.pairs = {{"张三", "110105194912310021"},
                       {"李四", "220203195501012304"}};

    extract::ExtractionOutcome good;
    good.pairs.pairs = {{"张三", "110105194912310021"},
                        {"李四", "220203195501012304"}};
    good.ocr_seconds = 0.3;
    good.llm_seconds = 0.5;
    good.total_seconds = 0.8;
    const auto scored = evalharness::score_outcome(doc, good);
    CHECK(scored.doc_id == "d-1");
    CHECK(scored.f1 == doctest::Approx(1.0));
    CHECK(scored.precision == doctest::Approx(1.0));
    CHECK(scored.extracted_count == 2);
    CHECK(scored.total_s == doctest::Approx(0.8));
    CHECK_FALSE(scored.fatal);

    extract::ExtractionOutcome dead;
    dead.fatal = true;
    dead.failure_kind = ErrorKind::CoordinateUnresolvable;
    dead.ocr_seconds = 1.2;
    dead.total_seconds = 1.2;
    const auto failed = evalharness::score_outcome(doc, dead);
    CHECK(failed.fatal);
    CHECK(failed.failure_kind == ErrorKind::CoordinateUnresolvable);
    CHECK(failed.f1 == 0.0);
    CHECK(failed.precision == 0.0);
    CHECK(failed.recall == 0.0);
    CHECK(failed.ocr_s == doctest::Approx(1.2));
    CHECK(failed.extracted_count == 0);
}

TEST_CASE("aggregate_cell folds documents deterministically") {
    DocOutcome perfect{"b", 1.0, 1.0, 1.0, false, std::nullopt,
                       0.3, 0.5, 0.8, 4};
    DocOutcome half{"c", 0.5, 0.5, 0.5, false, std::nullopt,
                    0.3, 0.7, 1.0, 4};
    DocOutcome fatal{"a", 0.0, 0.0, 0.0, true,
                     ErrorKind::CoordinateUnresolvable, 1.2, 0.0, 1.2, 0};

    const auto cell = evalharness::aggregate_cell("m", DocFormat::Docx,
                                                  {perfect, half, fatal});
    CHECK(cell.document_count == 3);
    CHECK(cell.f1 == doctest::Approx(0.5));
    CHECK(cell.precision == doctest::Approx(0.5));
    CHECK(cell.success_rate == doctest::Approx(2.0 / 3.0));
    CHECK(cell.perfect_rate == doctest::Approx(1.0 / 3.0));
    CHECK(cell.ocr_s == doctest::Approx(0.6));
    CHECK(cell.total_s == doctest::Approx(1.0));
    // Population standard deviation of {1.0, 0.5, 0.0}.
    CHECK(cell.f1_std == doctest::Approx(std::sqrt(1.0 / 6.0)));
    // Retained documents are sorted by doc_id regardless of input order.
    REQUIRE(cell.documents.size() == 3);
    CHECK(cell.documents[0].doc_id == "a");
    CHECK(cell.documents[2].doc_id == "c");

    const auto empty = evalharness::aggregate_cell("m", DocFormat::Docx, {});
    CHECK(empty.document_count == 0);
    CHECK(empty.f1 == 0.0);
    CHECK(empty.f1_std == 0.0);
}

TEST_CASE("run_matrix fills exactly the supported cells") {
    const auto dir = scratch_dir("matrix");
    const auto manifest = small_manifest(dir);
    const gateway::Gateway gw(gateway::make_reference_backend());
    router::RunContext ctx;
    ctx.gw = &gw;

    const auto report =
        evalharness::run_matrix(manifest, small_methods(), ctx, 3);
    REQUIRE(report.ok());

    // Three live cells plus the constants-only multimodal row.
    REQUIRE(report->cells.size() == 4);
    CHECK(report->method_order ==
          std::vector<std::string>{"native_docx+table", "ocr_preserving+table",
                                   "ocr_destroying+table",
                                   "multimodal_reference"});
    CHECK(report->format_order ==
          std::vector<DocFormat>{DocFormat::Docx, DocFormat::Transcript});
    CHECK(is_hex64(report->corpus_digest));
    CHECK(is_hex64(report->config_digest));

    const auto& native = report->cells[0];
    CHECK(native.method == "native_docx+table");
    CHECK(native.format == DocFormat::Docx);
    CHECK(native.document_count == 2);
    CHECK(native.f1 == doctest::Approx(1.0));
    CHECK(native.success_rate == doctest::Approx(1.0));
    CHECK(native.perfect_rate == doctest::Approx(1.0));
    CHECK(native.total_s == doctest::Approx(0.38));

    const auto& destroying = report->cells[2];
    CHECK(destroying.method == "ocr_destroying+table");
    CHECK(destroying.f1 == 0.0);
    CHECK(destroying.success_rate == 0.0);
    REQUIRE(destroying.documents.size() == 2);
    for (const auto& doc : destroying.documents) {
        CHECK(doc.fatal);
        CHECK(doc.failure_kind == ErrorKind::CoordinateUnresolvable);
    }

    const auto& reference = report->cells[3];
    CHECK(reference.method == "multimodal_reference");
    CHECK(reference.reference_constants);
    CHECK(reference.document_count == 0);
    CHECK(reference.total_s == doctest::Approx(33.9));

    // Every aggregate is an exact fold of its retained documents.
    for (const auto& cell : report->cells) {
        if (cell.reference_constants) continue;
        const auto redone =
            evalharness::aggregate_cell(cell.method, cell.format, cell.documents);
        CHECK(redone.f1 == cell.f1);
        CHECK(redone.f1_std == cell.f1_std);
        CHECK(redone.precision == cell.precision);
        CHECK(redone.recall == cell.recall);
        CHECK(redone.success_rate == cell.success_rate);
        CHECK(redone.perfect_rate == cell.perfect_rate);
        CHECK(redone.ocr_s == cell.ocr_s);
        CHECK(redone.llm_s == cell.llm_s);
        CHECK(redone.total_s == cell.total_s);
    }
}

TEST_CASE("run_matrix is independent of worker count") {
    const auto dir = scratch_dir("workers");
    const auto manifest = small_manifest(dir);
    const gateway::Gateway gw(gateway::make_reference_backend());
    router::RunContext ctx;
    ctx.gw = &gw;

    const auto serial = evalharness::run_matrix(manifest, small_methods(), ctx, 1);
    const auto parallel =
        evalharness::run_matrix(manifest, small_methods(), ctx, 8);
    REQUIRE(serial.ok());
    REQUIRE(parallel.ok());

    const auto out_a = scratch_dir("workers_a");
    const auto out_b = scratch_dir("workers_b");
    REQUIRE(evalharness::emit_reports(*serial, out_a).ok());
    REQUIRE(evalharness::emit_reports(*parallel, out_b).ok());
    for (const char* name :
         {"matrix.json", "table.csv", "heatmap_f1.csv", "heatmap_time.csv"}) {
        const auto a = read_file(out_a / name);
        const auto b = read_file(out_b / name);
        REQUIRE(a.ok());
        REQUIRE(b.ok());
        CAPTURE(name);
        CHECK(*a == *b);
    }
}

TEST_CASE("run_matrix validates its inputs") {
    const auto dir = scratch_dir("validate");
    const auto manifest = small_manifest(dir);
    const gateway::Gateway gw(gateway::make_reference_backend());
    router::RunContext ctx;
    ctx.gw = &gw;

    docgen::Manifest empty;
    CHECK(evalharness::run_matrix(empty, small_methods(), ctx).error().kind ==
          ErrorKind::CorpusMissing);

    CHECK(evalharness::run_matrix(manifest, {}, ctx).error().kind ==
          ErrorKind::ConfigInvalid);

    // native_xlsx never matches a docx+transcript corpus.
    CHECK(evalharness::run_matrix(
              manifest, {{IngestBackend::NativeXlsx, Paradigm::Table}}, ctx)
              .error()
              .kind == ErrorKind::ConfigInvalid);

    router::RunContext no_gw;
    CHECK(evalharness::run_matrix(manifest, small_methods(), no_gw)
              .error()
              .kind == ErrorKind::ConfigInvalid);
}

TEST_CASE("emitted reports mark unsupported combinations as NA") {
    const auto dir = scratch_dir("reports");
    const auto manifest = small_manifest(dir);
    const gateway::Gateway gw(gateway::make_reference_backend());
    router::RunContext ctx;
    ctx.gw = &gw;
    const auto report = evalharness::run_matrix(manifest, small_methods(), ctx);
    REQUIRE(report.ok());

    const auto out = scratch_dir("reports_out");
    const auto files = evalharness::emit_reports(*report, out);
    REQUIRE(files.ok());
    REQUIRE(files->size() == 4);
    for (const auto& path : *files) CHECK(std::filesystem::exists(path));

    const auto table = read_file(out / "table.csv");
    REQUIRE(table.ok());
    CHECK(table->rfind("method,format,precision,recall,f1,success_rate,"
                       "perfect_rate,ocr_s,llm_s,total_s,f1_std\n",
                       0) == 0);
    CHECK(count_occurrences(*table, "\n") == 5);  // header + 4 cells

    // 4 methods x 2 formats, 4 live cells -> 4 NA markers per heatmap.
    const auto heat = read_file(out / "heatmap_f1.csv");
    REQUIRE(heat.ok());
    CHECK(count_occurrences(*heat, "NA") == 4);
    CHECK(heat->rfind("method,docx,transcript\n", 0) == 0);

    const auto matrix = read_file(out / "matrix.json");
    REQUIRE(matrix.ok());
    const auto parsed = nlohmann::json::parse(*matrix);
    CHECK(parsed.at("clock_mode") == "virtual");
    REQUIRE(parsed.at("cells").size() == 4);
    const auto& destroying = parsed["cells"][2];
    CHECK(destroying["method"] == "ocr_destroying+table");
    CHECK(destroying["documents"][0]["failure_kind"] ==
          "coordinate_unresolvable");
    const auto& native_doc = parsed["cells"][0]["documents"][0];
    CHECK(native_doc["failure_kind"].is_null());
    CHECK(native_doc["f1"] == 1.0);
}

TEST_CASE("compare_speedup divides mean total times") {
    const auto dir = scratch_dir("speedup");
    const auto manifest = small_manifest(dir);
    const gateway::Gateway gw(gateway::make_reference_backend());
    router::RunContext ctx;
    ctx.gw = &gw;
    const auto report = evalharness::run_matrix(manifest, small_methods(), ctx);
    REQUIRE(report.ok());

    const auto same = evalharness::compare_speedup(
        *report, "native_docx+table", "native_docx+table", DocFormat::Docx);
    REQUIRE(same.ok());
    CHECK(*same == doctest::Approx(1.0));

    // Table-paradigm transcripts against the multimodal constants row.
    const auto versus_multimodal = evalharness::compare_speedup(
        *report, "ocr_preserving+table", "multimodal_reference",
        DocFormat::Transcript);
    REQUIRE(versus_multimodal.ok());
    CHECK(*versus_multimodal == doctest::Approx(33.9 / 0.63));

    CHECK(evalharness::compare_speedup(*report, "missing+table",
                                       "native_docx+table", DocFormat::Docx)
              .error()
              .kind == ErrorKind::CellMissing);
    CHECK(evalharness::compare_speedup(*report, "native_docx+table",
                                       "native_docx+table", DocFormat::Xlsx)
              .error()
              .kind == ErrorKind::CellMissing);
    // The destroying cell never succeeds, so it cannot anchor a ratio.
    CHECK(evalharness::compare_speedup(*report, "ocr_destroying+table",
                                       "multimodal_reference",
                                       DocFormat::Transcript)
              .error()
              .kind == ErrorKind::CellMissing);
}
