#include <doctest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "docpipe/docgen.hpp"
#include "docpipe/ocr_sim.hpp"
#include "docpipe/rng.hpp"
#include "docpipe/textutil.hpp"

using namespace docpipe;
using ingest::Fidelity;

namespace {

docgen::DocumentRecord make_record(const char* doc_id, std::uint64_t seed,
                                   std::size_t entries) {
    docgen::DocumentRecord doc;
    doc.doc_id = doc_id;
    doc.format = DocFormat::Transcript;
    doc.truth = docgen::generate_identities(seed, entries);
    doc.template_id = static_cast<int>(seed % docgen::kTemplateCount);
    doc.seed = seed;
    return doc;
}

}  // namespace

TEST_CASE("confusable map: digits, name chars, never header labels") {
    CHECK(ocrsim::confusable(U'0') == U'8');
    CHECK(ocrsim::confusable(U'8') == U'0');
    CHECK(ocrsim::confusable(U'1') == U'7');
    CHECK(ocrsim::confusable(U'7') == U'1');
    CHECK(ocrsim::confusable(U'5') == U'6');
    CHECK(ocrsim::confusable(U'6') == U'5');
    CHECK(ocrsim::confusable(U'3') == U'8');
    CHECK_FALSE(ocrsim::confusable(U'2').has_value());
    CHECK_FALSE(ocrsim::confusable(U'4').has_value());
    CHECK_FALSE(ocrsim::confusable(U'9').has_value());
    CHECK(ocrsim::confusable(U'王').has_value());
    for (char32_t header : U"姓名身份证号")
        if (header != 0) CHECK_FALSE(ocrsim::confusable(header).has_value());
}

TEST_CASE("apply_noise at rate 0 is the identity") {
    std::mt19937_64 rng(1);
    const std::string text = "张三  110105194912310021";
    CHECK(ocrsim::apply_noise(text, 0.0, rng) == text);
}

TEST_CASE("apply_noise at rate 1 flips exactly the mapped characters") {
    std::mt19937_64 rng(1);
    CHECK(ocrsim::apply_noise("0817", 1.0, rng) == "8071");
    CHECK(ocrsim::apply_noise("249", 1.0, rng) == "249");
    CHECK(ocrsim::apply_noise("姓名身份证号", 1.0, rng) == "姓名身份证号");
    CHECK(ocrsim::apply_noise("王", 1.0, rng) == "玉");
}

TEST_CASE("apply_noise consumes one draw per codepoint") {
    std::mt19937_64 a(9), b(9);
    ocrsim::apply_noise("王二3x", 0.0, a);  // 4 codepoints
    b();
    b();
    b();
    b();
    CHECK(a() == b());
}

TEST_CASE("apply_noise corruption frequency tracks the rate") {
    // Monte-Carlo oracle: per-character corruption of a fully-mapped string
    // must match the Bernoulli rate.
    const std::string text(1000, '0');
    const double rate = 0.01;
    std::size_t corrupted = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        std::mt19937_64 rng(mix_seed(seed));
        const std::string noisy = ocrsim::apply_noise(text, rate, rng);
        for (char c : noisy)
            if (c == '8') ++corrupted;
        total += text.size();
    }
    const double freq = static_cast<double>(corrupted) / static_cast<double>(total);
    CHECK(freq > 0.008);
    CHECK(freq < 0.012);
}

TEST_CASE("preserving transcription at noise 0 is lossless") {
    const auto doc = make_record("t_lossless", 5, 12);
    const auto profile = ocrsim::preserving_profile(0.0);
    auto st = ocrsim::transcribe(doc, profile);
    REQUIRE(st.ok());
    CHECK(st->fidelity == Fidelity::Preserved);
    REQUIRE(st->table.has_value());
    REQUIRE(st->table->rows.size() == doc.truth.size());
    for (std::size_t i = 0; i < doc.truth.size(); ++i) {
        CHECK(st->table->rows[i][0] == doc.truth.pairs[i].name);
        CHECK(st->table->rows[i][1] == doc.truth.pairs[i].id_number);
    }
    CHECK(st->extract_seconds == ocrsim::kPreservingOcrSeconds);
}

TEST_CASE("destroying transcription loses the grid by contract") {
    const auto doc = make_record("t_destroyed", 6, 10);
    auto profile = ocrsim::destroying_profile(0.0);
    auto st = ocrsim::transcribe(doc, profile);
    REQUIRE(st.ok());
    CHECK(st->fidelity == Fidelity::Lost);
    CHECK_FALSE(st->table.has_value());
    CHECK(st->extract_seconds == ocrsim::kDestroyingOcrSeconds);

    // One fragment per line; all cells survive (noise 0), just reordered.
    const auto lines = split_lines(st->plain_text);
    std::vector<std::string> sorted_lines;
    for (const auto& line : lines)
        if (!line.empty()) sorted_lines.push_back(line);
    std::vector<std::string> expected;
    for (const auto& pair : doc.truth.pairs) {
        expected.push_back(pair.name);
        expected.push_back(pair.id_number);
    }
    for (const auto& cell : expected)
        CHECK(std::count(sorted_lines.begin(), sorted_lines.end(), cell) >= 1);
    // The shuffle must actually move something.
    bool moved = false;
    for (std::size_t i = 0; i + 1 < sorted_lines.size() && !moved; ++i)
        for (std::size_t j = 0; j + 1 < expected.size() && !moved; ++j)
            if (sorted_lines[i] == expected[j] &&
                sorted_lines[i + 1] != expected[j + 1] &&
                std::count(expected.begin(), expected.end(),
                           sorted_lines[i]) == 1)
                moved = true;
    CHECK(moved);
}

TEST_CASE("transcription is deterministic under (noise_seed, doc_id)") {
    const auto doc = make_record("t_det", 7, 15);
    const auto profile = ocrsim::preserving_profile(0.02, 33);
    auto a = ocrsim::transcribe(doc, profile);
    auto b = ocrsim::transcribe(doc, profile);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(a->plain_text == b->plain_text);

    auto other_doc = make_record("t_det_other", 7, 15);
    auto c = ocrsim::transcribe(other_doc, profile);
    REQUIRE(c.ok());
    CHECK(a->plain_text != c->plain_text);

    const auto reseeded = ocrsim::preserving_profile(0.02, 34);
    auto d = ocrsim::transcribe(doc, reseeded);
    REQUIRE(d.ok());
    CHECK(a->plain_text != d->plain_text);
}

TEST_CASE("noise never corrupts the header row labels") {
    const auto doc = make_record("t_header", 8, 10);
    const auto profile = ocrsim::preserving_profile(1.0, 1);
    auto st = ocrsim::transcribe(doc, profile);
    REQUIRE(st.ok());
    CHECK(st->plain_text.find("姓名") != std::string::npos);
    CHECK(st->plain_text.find("身份证号") != std::string::npos);
}

TEST_CASE("truth-less documents are not rasterizable") {
    docgen::DocumentRecord doc;
    doc.doc_id = "empty";
    doc.format = DocFormat::Transcript;
    auto st = ocrsim::transcribe(doc, ocrsim::preserving_profile());
    REQUIRE_FALSE(st.ok());
    CHECK(st.error().kind == ErrorKind::NotRasterizable);
}

TEST_CASE("profile factories carry the calibration defaults") {
    const auto preserving = ocrsim::preserving_profile();
    CHECK(preserving.mode == ocrsim::OcrMode::LayoutPreserving);
    CHECK(preserving.char_noise_rate == ocrsim::kPreservingNoiseRate);
    CHECK(preserving.simulated_ocr_seconds == ocrsim::kPreservingOcrSeconds);
    const auto destroying = ocrsim::destroying_profile();
    CHECK(destroying.mode == ocrsim::OcrMode::LayoutDestroying);
    CHECK(destroying.char_noise_rate == ocrsim::kDestroyingNoiseRate);
    CHECK(destroying.simulated_ocr_seconds == ocrsim::kDestroyingOcrSeconds);
}
