#include <doctest.h>

#include <string>
#include <vector>

#include "docpipe/docgen.hpp"
#include "docpipe/ingest.hpp"
#include "docpipe/zipio.hpp"

using namespace docpipe;
using ingest::Fidelity;

namespace {

/// Renders one document and parses it back with the matching parser.
ingest::StructuredText round_trip(const identity::PairSet& truth,
                                  DocFormat format, int template_id) {
    auto rendered = docgen::render_document(truth, format, template_id, 99);
    REQUIRE(rendered.ok());
    Result<ingest::StructuredText> parsed =
        format == DocFormat::Markdown ? ingest::parse_markdown(rendered->bytes)
        : format == DocFormat::Docx   ? ingest::parse_docx(rendered->bytes)
        : format == DocFormat::Xlsx   ? ingest::parse_xlsx(rendered->bytes)
                                      : ingest::parse_pdf(rendered->bytes);
    REQUIRE(parsed.ok());
    return *parsed;
}

void check_table_recovers_truth(const ingest::StructuredText& st,
                                const identity::PairSet& truth) {
    REQUIRE(st.table.has_value());
    CHECK(st.fidelity == Fidelity::Preserved);
    REQUIRE(st.table->header.size() >= 2);
    CHECK(st.table->header[0] == "姓名");
    CHECK(st.table->header[1] == "身份证号");
    REQUIRE(st.table->rows.size() == truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
        CHECK(st.table->rows[i][0] == truth.pairs[i].name);
        CHECK(st.table->rows[i][1] == truth.pairs[i].id_number);
    }
}

}  // namespace

TEST_CASE("all four structured parsers recover the generated table") {
    const auto truth = docgen::generate_identities(31, 9);
    for (DocFormat format : {DocFormat::Markdown, DocFormat::Docx,
                             DocFormat::Xlsx, DocFormat::Pdf}) {
        for (int template_id = 0; template_id < docgen::kTemplateCount;
             ++template_id) {
            const auto st = round_trip(truth, format, template_id);
            check_table_recovers_truth(st, truth);
            CHECK(st.source_format == format);
            // Context text must survive into plain_text too.
            CHECK(st.plain_text.find(truth.pairs[0].id_number) !=
                  std::string::npos);
        }
    }
}

TEST_CASE("markdown without a pipe table is symbolic only") {
    auto st = ingest::parse_markdown("# 标题\n\n正文 no table here\n");
    REQUIRE(st.ok());
    CHECK_FALSE(st->table.has_value());
    CHECK(st->fidelity == Fidelity::SymbolicOnly);
    CHECK(st->plain_text.find("正文") != std::string::npos);
}

TEST_CASE("markdown rejects invalid UTF-8") {
    auto st = ingest::parse_markdown("ok\xFF\xFEbroken");
    REQUIRE_FALSE(st.ok());
    CHECK(st.error().kind == ErrorKind::MalformedInput);
}

TEST_CASE("markdown needs a delimiter row to form a table") {
    auto st = ingest::parse_markdown("| a | b |\n| c | d |\n");
    REQUIRE(st.ok());
    CHECK_FALSE(st->table.has_value());

    auto with_rule = ingest::parse_markdown("| a | b |\n|---|---|\n| c | d |\n");
    REQUIRE(with_rule.ok());
    REQUIRE(with_rule->table.has_value());
    CHECK(with_rule->table->header == std::vector<std::string>{"a", "b"});
    REQUIRE(with_rule->table->rows.size() == 1);
    CHECK(with_rule->table->rows[0] == std::vector<std::string>{"c", "d"});
}

TEST_CASE("docx and xlsx parsers reject non-archives") {
    CHECK_FALSE(ingest::parse_docx("plainly not a zip").ok());
    CHECK_FALSE(ingest::parse_xlsx("PK\x03\x04 truncated").ok());
}

TEST_CASE("docx keeps document order around the table") {
    const auto truth = docgen::generate_identities(5, 3);
    const auto st = round_trip(truth, DocFormat::Docx, 0);
    // Intro paragraph appears before the first data row, footer after the
    // last one.
    const auto intro = st.plain_text.find("以下");
    const auto first_row = st.plain_text.find(truth.pairs[0].name);
    const auto last_row = st.plain_text.find(truth.pairs[2].id_number);
    REQUIRE(intro != std::string::npos);
    REQUIRE(first_row != std::string::npos);
    REQUIRE(last_row != std::string::npos);
    CHECK(intro < first_row);
    CHECK(first_row < last_row);
}

TEST_CASE("xlsx numeric cells re-expand scientific notation losslessly") {
    // Hand-built sheet: one header row of shared strings, one data row
    // whose ID landed as a numeric cell in scientific notation.
    const std::string shared =
        "<?xml version=\"1.0\"?><sst><si><t>姓名</t></si><si><t>身份证号</t>"
        "</si><si><t>张三</t></si></sst>";
    const std::string sheet =
        "<?xml version=\"1.0\"?><worksheet><sheetData>"
        "<row r=\"1\"><c r=\"A1\" t=\"s\"><v>0</v></c>"
        "<c r=\"B1\" t=\"s\"><v>1</v></c></row>"
        "<row r=\"2\"><c r=\"A2\" t=\"s\"><v>2</v></c>"
        "<c r=\"B2\"><v>1.1010519491231002E17</v></c></row>"
        "</sheetData></worksheet>";
    const std::string workbook = "<?xml version=\"1.0\"?><workbook/>";
    const std::string bytes = zipio::write_archive({
        {"xl/workbook.xml", workbook},
        {"xl/worksheets/sheet1.xml", sheet},
        {"xl/sharedStrings.xml", shared},
    });
    auto st = ingest::parse_xlsx(bytes);
    REQUIRE(st.ok());
    REQUIRE(st->table.has_value());
    REQUIRE(st->table->rows.size() == 1);
    CHECK(st->table->rows[0][1] == "110105194912310020");
}

TEST_CASE("pdf with a compressed stream is rejected as unsupported") {
    const std::string pdf =
        "%PDF-1.4\n1 0 obj\n<< /Length 5 /Filter /FlateDecode >>\n"
        "stream\nxxxxx\nendstream\nendobj\n%%EOF";
    auto st = ingest::parse_pdf(pdf);
    REQUIRE_FALSE(st.ok());
    CHECK(st.error().kind == ErrorKind::UnsupportedPdfFeature);
}

TEST_CASE("wrap_table_in_tags drops the grid but keeps the cells") {
    const auto truth = docgen::generate_identities(6, 4);
    const auto st = round_trip(truth, DocFormat::Pdf, 0);
    const auto wrapped = ingest::wrap_table_in_tags(st);
    CHECK_FALSE(wrapped.table.has_value());
    CHECK(wrapped.fidelity == Fidelity::SymbolicOnly);
    CHECK(wrapped.plain_text.find("<table>") != std::string::npos);
    CHECK(wrapped.plain_text.find("<td>") != std::string::npos);
    for (const auto& pair : truth.pairs) {
        CHECK(wrapped.plain_text.find(pair.name) != std::string::npos);
        CHECK(wrapped.plain_text.find(pair.id_number) != std::string::npos);
    }
}

TEST_CASE("grid_from_aligned_lines picks the widest consistent run") {
    const std::vector<std::string> lines = {
        "人员登记表",
        "姓名      身份证号",
        "张三      110105194912310021",
        "欧阳文君  530102197501012345",
        "完",
    };
    const auto grid = ingest::grid_from_aligned_lines(lines);
    REQUIRE(grid.has_value());
    CHECK(grid->n_cols == 2);
    CHECK(grid->header == std::vector<std::string>{"姓名", "身份证号"});
    REQUIRE(grid->rows.size() == 2);
    CHECK(grid->rows[1][0] == "欧阳文君");
}

TEST_CASE("grid_from_aligned_lines needs at least header plus one row") {
    CHECK_FALSE(ingest::grid_from_aligned_lines({"单列", "还是单列"}).has_value());
    CHECK_FALSE(ingest::grid_from_aligned_lines({"a  b"}).has_value());
    CHECK_FALSE(ingest::grid_from_aligned_lines({}).has_value());
}

TEST_CASE("structure_fragments rebuilds a grid from positioned runs") {
    std::vector<ingest::TextFragment> fragments = {
        {72, 790, "标题"},
        {72, 710, "姓名"},
        {220, 710, "身份证号"},
        {72, 696, "张三"},
        {220, 696, "110105194912310021"},
        {72, 682, "李四"},
        {220, 682, "110105194912310022"},
        {72, 668, "落款"},
    };
    const auto st = ingest::structure_fragments(std::move(fragments));
    REQUIRE(st.table.has_value());
    CHECK(st.fidelity == Fidelity::Preserved);
    CHECK(st.table->header == std::vector<std::string>{"姓名", "身份证号"});
    REQUIRE(st.table->rows.size() == 2);
    CHECK(st.table->rows[0][1] == "110105194912310021");
    // Single-fragment footer line ends the table instead of joining it.
    CHECK(st.plain_text.find("落款") != std::string::npos);
}

TEST_CASE("structure_fragments without any multi-fragment line is symbolic") {
    const auto st = ingest::structure_fragments(
        {{72, 700, "only"}, {72, 686, "one"}, {72, 672, "column"}});
    CHECK_FALSE(st.table.has_value());
    CHECK(st.fidelity == Fidelity::SymbolicOnly);
    CHECK(st.plain_text.find("one") != std::string::npos);
}

TEST_CASE("detect_format sniffs magic bytes before extensions") {
    const auto truth = docgen::generate_identities(9, 3);
    auto docx = docgen::render_document(truth, DocFormat::Docx, 0, 1);
    auto xlsx = docgen::render_document(truth, DocFormat::Xlsx, 0, 1);
    auto pdf = docgen::render_document(truth, DocFormat::Pdf, 0, 1);
    REQUIRE(docx.ok());
    REQUIRE(xlsx.ok());
    REQUIRE(pdf.ok());
    CHECK(ingest::detect_format("mislabeled.txt", docx->bytes) ==
          DocFormat::Docx);
    CHECK(ingest::detect_format("mislabeled.md", xlsx->bytes) ==
          DocFormat::Xlsx);
    CHECK(ingest::detect_format("doc.pdf", pdf->bytes) == DocFormat::Pdf);
    CHECK(ingest::detect_format("notes.md", "# heading") ==
          DocFormat::Markdown);
    CHECK(ingest::detect_format("notes.markdown", "text") ==
          DocFormat::Markdown);
    CHECK(ingest::detect_format("scan.txt", "some text") ==
          DocFormat::Transcript);
    CHECK(ingest::detect_format("what.bin", "some bytes") ==
          DocFormat::Unknown);
    CHECK(ingest::detect_format("empty.md", "") == DocFormat::Unknown);
}
