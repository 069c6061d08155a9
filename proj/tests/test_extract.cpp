#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "docpipe/docgen.hpp"
#include "docpipe/extract.hpp"
#include "docpipe/gateway.hpp"
#include "docpipe/identity.hpp"
#include "docpipe/ingest.hpp"

using namespace docpipe;
using extract::Paradigm;

namespace {

class CannedBackend : public gateway::Backend {
  public:
    explicit CannedBackend(std::string reply) : reply_(std::move(reply)) {}
    Result<std::string> run(const gateway::CompletionRequest&) override {
        return reply_;
    }
    std::string name() const override { return "canned"; }

  private:
    std::string reply_;
};

gateway::Gateway reference_gateway() {
    return gateway::Gateway(gateway::make_reference_backend());
}

gateway::Gateway canned_gateway(std::string reply) {
    return gateway::Gateway(std::make_shared<CannedBackend>(std::move(reply)));
}

ingest::StructuredText parsed_document(DocFormat format, int template_id,
                                       const identity::PairSet& truth,
                                       std::uint64_t seed) {
    auto rendered = docgen::render_document(truth, format, template_id, seed);
    REQUIRE(rendered.ok());
    Result<ingest::StructuredText> st = [&] {
        switch (format) {
            case DocFormat::Docx: return ingest::parse_docx(rendered->bytes);
            case DocFormat::Xlsx: return ingest::parse_xlsx(rendered->bytes);
            case DocFormat::Pdf: return ingest::parse_pdf(rendered->bytes);
            default: return ingest::parse_markdown(rendered->bytes);
        }
    }();
    REQUIRE(st.ok());
    return *st;
}

double f1_against(const identity::PairSet& extracted,
                  const identity::PairSet& truth) {
    return identity::compute_metrics(identity::match_pairs(extracted, truth)).f1;
}

std::vector<std::string> sorted_ids(const std::vector<std::string>& ids) {
    auto out = ids;
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> pair_ids(const identity::PairSet& set) {
    std::vector<std::string> out;
    for (const auto& pair : set.pairs) out.push_back(pair.id_number);
    return out;
}

std::vector<std::string> candidate_ids(std::string_view text) {
    std::vector<std::string> out;
    for (const auto& c : identity::find_id_candidates(text)) out.push_back(c.text);
    return out;
}

}  // namespace

TEST_CASE("placeholder map enumerates candidates in order") {
    // One valid span, one too-short run, one over-long run: only the
    // exact-18 span anchors a placeholder.
    const std::string text =
        "甲 110105194912310021 乙 99999 丙 1101051949123100221X 尾";
    const auto map = extract::build_placeholder_map(text);
    REQUIRE(map.entries.size() == 1);
    CHECK(map.entries[0].token == "⟦ID_1⟧");
    CHECK(map.entries[0].id_number == "110105194912310021");

    const auto two = extract::build_placeholder_map(
        "110105194912310021 和 220203195501012304");
    REQUIRE(two.entries.size() == 2);
    CHECK(two.entries[0].token == "⟦ID_1⟧");
    CHECK(two.entries[1].token == "⟦ID_2⟧");
    CHECK(two.entries[1].id_number == "220203195501012304");
    CHECK(two.entries[0].offset < two.entries[1].offset);
}

TEST_CASE("substitution is a reversible rewrite") {
    const std::string text =
        "名单 张三 110105194912310021 和 李四 220203195501012304 完";
    const auto map = extract::build_placeholder_map(text);
    REQUIRE(map.entries.size() == 2);

    const std::string substituted = extract::substitute_placeholders(text, map);
    CHECK(substituted.find("110105194912310021") == std::string::npos);
    CHECK(substituted.find("⟦ID_1⟧") != std::string::npos);
    CHECK(substituted.find("⟦ID_2⟧") != std::string::npos);

    // Undo the substitution token by token; the original must come back.
    std::string restored = substituted;
    for (const auto& entry : map.entries) {
        const auto at = restored.find(entry.token);
        REQUIRE(at != std::string::npos);
        restored =
            restored.substr(0, at) + entry.id_number +
            restored.substr(at + entry.token.size());
    }
    CHECK(restored == text);
}

TEST_CASE("direct extraction recovers rendered documents verbatim") {
    const auto truth = docgen::generate_identities(911, 8);
    const auto gw = reference_gateway();
    for (int template_id = 0; template_id < docgen::kTemplateCount;
         ++template_id) {
        const auto st =
            parsed_document(DocFormat::Markdown, template_id, truth, 31);
        const auto out =
            extract::extract_direct(st, gw, gateway::ClockMode::Virtual);
        CAPTURE(template_id);
        REQUIRE_FALSE(out.fatal);
        CHECK(out.paradigm == Paradigm::Direct);
        CHECK(f1_against(out.pairs, truth) == doctest::Approx(1.0));
        CHECK(out.llm_seconds > 0.25);
        CHECK(out.total_seconds ==
              doctest::Approx(out.ocr_seconds + out.llm_seconds));
    }
}

TEST_CASE("direct extraction refuses empty text") {
    ingest::StructuredText st;
    const auto out = extract::extract_direct(st, reference_gateway(),
                                             gateway::ClockMode::Virtual);
    CHECK(out.fatal);
    CHECK(out.failure_kind == ErrorKind::MalformedInput);
    CHECK(out.pairs.empty());
}

TEST_CASE("direct extraction falls back to line-per-pair responses") {
    ingest::StructuredText st;
    st.plain_text = "anything";
    const auto gw = canned_gateway(
        "张三 110105194912310021 结\n无关行\n李四 220203195501012304");
    const auto out =
        extract::extract_direct(st, gw, gateway::ClockMode::Virtual);
    REQUIRE_FALSE(out.fatal);
    REQUIRE(out.pairs.size() == 2);
    CHECK(out.pairs.pairs[0].name == "张三");
    CHECK(out.pairs.pairs[0].id_number == "110105194912310021");
    CHECK(out.pairs.pairs[1].name == "李四");
}

TEST_CASE("direct extraction flags responses it cannot read") {
    ingest::StructuredText st;
    st.plain_text = "anything";
    const auto gw = canned_gateway("no pairs in this prose at all");
    const auto out =
        extract::extract_direct(st, gw, gateway::ClockMode::Virtual);
    CHECK(out.fatal);
    CHECK(out.failure_kind == ErrorKind::UnparseableOutput);
}

TEST_CASE("replace extraction copies IDs from the text, never the model") {
    const auto truth = docgen::generate_identities(417, 12);
    const auto gw = reference_gateway();
    // The ID multiset invariant holds on every lane, including spatial
    // layouts where name resolution itself may wander.
    for (DocFormat format : {DocFormat::Pdf, DocFormat::Docx}) {
        const auto st = parsed_document(format, 0, truth, 55);
        const auto out =
            extract::extract_replace(st, gw, gateway::ClockMode::Virtual);
        CAPTURE(to_string(format));
        REQUIRE_FALSE(out.fatal);
        CHECK(out.paradigm == Paradigm::Replace);
        CHECK(sorted_ids(pair_ids(out.pairs)) ==
              sorted_ids(candidate_ids(st.plain_text)));
    }
}

TEST_CASE("replace extraction resolves names on delimiter-bracketed layouts") {
    // Markdown pipe rows keep each ID closer to its own name than to the
    // next row's, so nearest-token resolution lands correctly.
    const auto truth = docgen::generate_identities(417, 12);
    const auto st = parsed_document(DocFormat::Markdown, 0, truth, 55);
    const auto out = extract::extract_replace(st, reference_gateway(),
                                              gateway::ClockMode::Virtual);
    REQUIRE_FALSE(out.fatal);
    CHECK(sorted_ids(pair_ids(out.pairs)) ==
          sorted_ids(candidate_ids(st.plain_text)));
    CHECK(f1_against(out.pairs, truth) == doctest::Approx(1.0));
}

TEST_CASE("replace extraction needs at least one anchor") {
    ingest::StructuredText st;
    st.plain_text = "这段文字没有证件号码";
    const auto out = extract::extract_replace(st, reference_gateway(),
                                              gateway::ClockMode::Virtual);
    CHECK(out.fatal);
    CHECK(out.failure_kind == ErrorKind::NoIdsFound);
}

TEST_CASE("replace extraction requires every placeholder answered") {
    ingest::StructuredText st;
    st.plain_text = "张三 110105194912310021 李四 220203195501012304";
    const auto gw = canned_gateway("⟦ID_1⟧ 张三\n");
    const auto out =
        extract::extract_replace(st, gw, gateway::ClockMode::Virtual);
    CHECK(out.fatal);
    CHECK(out.failure_kind == ErrorKind::ArityMismatch);
}

TEST_CASE("adjacency-ambiguous layouts misattribute names but keep IDs") {
    // The decoy token sits one space after the ID; the true owner is two
    // spaces before it. Nearest-token association picks the decoy.
    ingest::StructuredText st;
    st.plain_text =
        "张三丰  110105194912310021 备注甲\n"
        "李四光  220203195501012304 备注乙\n";
    identity::PairSet truth;
    truth.pairs.push_back({"张三丰", "110105194912310021"});
    truth.pairs.push_back({"李四光", "220203195501012304"});

    const auto out = extract::extract_replace(st, reference_gateway(),
                                              gateway::ClockMode::Virtual);
    REQUIRE_FALSE(out.fatal);
    CHECK(sorted_ids(pair_ids(out.pairs)) ==
          sorted_ids(candidate_ids(st.plain_text)));
    CHECK(f1_against(out.pairs, truth) < 1.0);
    CHECK(out.pairs.pairs[0].name == "备注甲");
}

TEST_CASE("table extraction reads the located span deterministically") {
    const auto truth = docgen::generate_identities(2024, 10);
    const auto gw = reference_gateway();
    for (DocFormat format : {DocFormat::Docx, DocFormat::Xlsx, DocFormat::Pdf,
                             DocFormat::Markdown}) {
        const auto st = parsed_document(format, 1, truth, 7);
        REQUIRE(st.fidelity == ingest::Fidelity::Preserved);
        const auto out =
            extract::extract_table(st, gw, gateway::ClockMode::Virtual);
        CAPTURE(to_string(format));
        REQUIRE_FALSE(out.fatal);
        REQUIRE(out.pairs.size() == truth.size());
        for (std::size_t i = 0; i < truth.size(); ++i) {
            CHECK(out.pairs.pairs[i].name == truth.pairs[i].name);
            CHECK(out.pairs.pairs[i].id_number == truth.pairs[i].id_number);
        }
        // The locate response is four small integers: 4 tokens on the
        // virtual clock, 0.25 + 4 * 0.02 seconds.
        CHECK(out.llm_seconds == doctest::Approx(0.33));
    }
}

TEST_CASE("table extraction fails closed without a preserved grid") {
    const auto truth = docgen::generate_identities(88, 6);
    auto st = parsed_document(DocFormat::Pdf, 0, truth, 3);
    const auto degraded = ingest::wrap_table_in_tags(st);
    REQUIRE(degraded.fidelity != ingest::Fidelity::Preserved);

    const auto out = extract::extract_table(degraded, reference_gateway(),
                                            gateway::ClockMode::Virtual);
    CHECK(out.fatal);
    CHECK(out.failure_kind == ErrorKind::CoordinateUnresolvable);
    CHECK(out.pairs.empty());
    // Fail-closed means no completion was made: no model time accrued.
    CHECK(out.llm_seconds == 0.0);
}

TEST_CASE("table extraction validates the coordinate spec") {
    const auto truth = docgen::generate_identities(5150, 5);
    const auto st = parsed_document(DocFormat::Docx, 0, truth, 9);
    const auto run = [&](const std::string& reply) {
        return extract::extract_table(st, canned_gateway(reply),
                                      gateway::ClockMode::Virtual);
    };

    for (const std::string bad :
         {"99 1 0 4", "0 99 0 4", "1 1 0 4", "0 1 3 2", "0 1 0 999",
          "-1 -1 0 4"}) {
        const auto out = run(bad);
        CAPTURE(bad);
        CHECK(out.fatal);
        CHECK(out.failure_kind == ErrorKind::SpecOutOfBounds);
    }

    const auto garbled = run("the table has no useful columns");
    CHECK(garbled.fatal);
    CHECK(garbled.failure_kind == ErrorKind::UnparseableOutput);
}

TEST_CASE("run_paradigm dispatches by enum and parse_paradigm round-trips") {
    CHECK(extract::parse_paradigm("direct") == Paradigm::Direct);
    CHECK(extract::parse_paradigm("replace") == Paradigm::Replace);
    CHECK(extract::parse_paradigm("table") == Paradigm::Table);
    CHECK_FALSE(extract::parse_paradigm("tables").has_value());
    for (Paradigm p : {Paradigm::Direct, Paradigm::Replace, Paradigm::Table})
        CHECK(extract::parse_paradigm(extract::to_string(p)) == p);

    const auto truth = docgen::generate_identities(606, 4);
    const auto st = parsed_document(DocFormat::Markdown, 2, truth, 11);
    const auto gw = reference_gateway();
    for (Paradigm p : {Paradigm::Direct, Paradigm::Replace, Paradigm::Table}) {
        const auto out =
            extract::run_paradigm(p, st, gw, gateway::ClockMode::Virtual);
        CHECK(out.paradigm == p);
        REQUIRE_FALSE(out.fatal);
        CHECK(f1_against(out.pairs, truth) == doctest::Approx(1.0));
    }
}
