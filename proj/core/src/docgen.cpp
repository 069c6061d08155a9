#include "docpipe/docgen.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "docpipe/fsio.hpp"
#include "docpipe/lexicon.hpp"
#include "docpipe/rng.hpp"
#include "docpipe/textutil.hpp"
#include "docpipe/zipio.hpp"

namespace docpipe::docgen {

namespace {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Context templates

struct ContextTemplate {
    const char* title;
    const char* date_label;
    const char* serial_label;
    const char* serial_prefix;
    const char* intro;
    const char* footer;
};

constexpr ContextTemplate kTemplates[kTemplateCount] = {
    {"保险理赔登记表", "日期", "保单编号", "BX",
     "以下人员已提交理赔申请，相关身份信息经核对无误。",
     "经办人已确认以上信息真实有效。"},
    {"旅客出行记录", "出行日期", "车次", "G",
     "本次行程旅客名单如下，请妥善核对保存。",
     "以上名单由系统自动生成。"},
    {"人员登记表", "登记日期", "登记编号", "DJ",
     "下列人员基本信息已录入登记系统。",
     "登记信息如有变更请及时更新。"},
};

std::string format_date(int year, int month, int day) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

std::map<std::string, std::string> draw_context(const ContextTemplate& tmpl,
                                                std::mt19937_64& rng) {
    const int year = static_cast<int>(between(rng, 2019, 2024));
    const int month = static_cast<int>(between(rng, 1, 12));
    const int day = static_cast<int>(between(rng, 1, 28));
    std::string serial = tmpl.serial_prefix;
    for (int i = 0; i < 6; ++i)
        serial.push_back(static_cast<char>('0' + bounded(rng, 10)));
    return {
        {"title", tmpl.title},
        {"date_label", tmpl.date_label},
        {"date", format_date(year, month, day)},
        {"serial_label", tmpl.serial_label},
        {"serial", serial},
    };
}

// ---------------------------------------------------------------------------
// Identity sampling

int days_in_month(int year, int month) {
    static constexpr int kDays[12] = {31, 28, 31, 30, 31, 30,
                                      31, 31, 30, 31, 30, 31};
    if (month == 2 && (year % 4 == 0 && (year % 100 != 0 || year % 400 == 0)))
        return 29;
    return kDays[month - 1];
}

std::string draw_name(std::mt19937_64& rng) {
    const auto& surnames = lexicon::surnames();
    const auto& given = lexicon::given_name_chars();
    std::string name = surnames[bounded(rng, surnames.size())];
    const std::size_t given_len = bounded(rng, 10) < 7 ? 2 : 1;
    for (std::size_t i = 0; i < given_len; ++i)
        name += given[bounded(rng, given.size())];
    return name;
}

std::string draw_id(std::mt19937_64& rng) {
    const auto& regions = lexicon::region_codes();
    std::string body = regions[bounded(rng, regions.size())];
    const int year = static_cast<int>(between(rng, 1950, 2005));
    const int month = static_cast<int>(between(rng, 1, 12));
    const int day = static_cast<int>(between(rng, 1, days_in_month(year, month)));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d%02d%02d%03d", year, month, day,
                  static_cast<int>(between(rng, 1, 999)));
    body += buf;
    const auto check = identity::expected_check_char(body);
    body.push_back(*check);
    return body;
}

// ---------------------------------------------------------------------------
// Renderers

std::string render_markdown(const identity::PairSet& truth,
                            const ContextTemplate& tmpl,
                            const std::map<std::string, std::string>& ctx) {
    std::string out;
    out += "# " + std::string(tmpl.title) + "\n\n";
    out += std::string(tmpl.date_label) + ": " + ctx.at("date") + "\n";
    out += std::string(tmpl.serial_label) + ": " + ctx.at("serial") + "\n\n";
    out += std::string(tmpl.intro) + "\n\n";
    out += std::string("| ") + kNameHeader + " | " + kIdHeader + " |\n";
    out += "| --- | --- |\n";
    for (const auto& pair : truth.pairs)
        out += "| " + pair.name + " | " + pair.id_number + " |\n";
    out += "\n" + std::string(tmpl.footer) + "\n";
    return out;
}

std::string docx_paragraph(std::string_view text) {
    return "<w:p><w:r><w:t xml:space=\"preserve\">" + xml_escape(text) +
           "</w:t></w:r></w:p>";
}

std::string docx_cell(std::string_view text) {
    return "<w:tc>" + docx_paragraph(text) + "</w:tc>";
}

std::string render_docx(const identity::PairSet& truth,
                        const ContextTemplate& tmpl,
                        const std::map<std::string, std::string>& ctx) {
    std::string body;
    body += docx_paragraph(tmpl.title);
    body += docx_paragraph(std::string(tmpl.date_label) + ": " + ctx.at("date"));
    body += docx_paragraph(std::string(tmpl.serial_label) + ": " + ctx.at("serial"));
    body += docx_paragraph(tmpl.intro);
    body += "<w:tbl><w:tblPr><w:tblStyle w:val=\"TableGrid\"/></w:tblPr>";
    body += "<w:tr>" + docx_cell(kNameHeader) + docx_cell(kIdHeader) + "</w:tr>";
    for (const auto& pair : truth.pairs)
        body += "<w:tr>" + docx_cell(pair.name) + docx_cell(pair.id_number) +
                "</w:tr>";
    body += "</w:tbl>";
    body += docx_paragraph(tmpl.footer);

    const std::string document =
        "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
        "<w:document xmlns:w=\"http://schemas.openxmlformats.org/"
        "wordprocessingml/2006/main\"><w:body>" +
        body + "<w:sectPr/></w:body></w:document>";

    const std::string content_types =
        "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
        "<Types xmlns=\"http://schemas.openxmlformats.org/package/2006/"
        "content-types\">"
        "<Default Extension=\"rels\" ContentType=\"application/"
        "vnd.openxmlformats-package.relationships+xml\"/>"
        "<Default Extension=\"xml\" ContentType=\"application/xml\"/>"
        "<Override PartName=\"/word/document.xml\" ContentType=\"application/"
        "vnd.openxmlformats-officedocument.wordprocessingml.document.main+xml\"/>"
        "</Types>";

    const std::string rels =
        "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
        "<Relationships xmlns=\"http://schemas.openxmlformats.org/package/"
        "2006/relationships\">"
        "<Relationship Id=\"rId1\" Type=\"http://schemas.openxmlformats.org/"
        "officeDocument/2006/relationships/officeDocument\" "
        "Target=\"word/document.xml\"/></Relationships>";

    return zipio::write_archive({
        {"[Content_Types].xml", content_types},
        {"_rels/.rels", rels},
        {"word/document.xml", document},
    });
}

std::string render_xlsx(const identity::PairSet& truth,
                        const std::map<std::string, std::string>&) {
    // Shared-string pool; header first so indices 0/1 are stable.
    std::vector<std::string> strings;
    std::unordered_map<std::string, std::size_t> index;
    const auto intern = [&](const std::string& s) {
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        const std::size_t i = strings.size();
        strings.push_back(s);
        index.emplace(s, i);
        return i;
    };

    std::size_t total_refs = 0;
    std::string sheet_rows;
    const auto string_cell = [&](char col, std::size_t row, const std::string& s) {
        ++total_refs;
        sheet_rows += "<c r=\"";
        sheet_rows += col;
        sheet_rows += std::to_string(row);
        sheet_rows += "\" t=\"s\"><v>" + std::to_string(intern(s)) + "</v></c>";
    };

    sheet_rows += "<row r=\"1\">";
    string_cell('A', 1, kNameHeader);
    string_cell('B', 1, kIdHeader);
    sheet_rows += "</row>";
    for (std::size_t i = 0; i < truth.pairs.size(); ++i) {
        const std::size_t row = i + 2;  // identities start at row 2
        sheet_rows += "<row r=\"" + std::to_string(row) + "\">";
        string_cell('A', row, truth.pairs[i].name);
        string_cell('B', row, truth.pairs[i].id_number);
        sheet_rows += "</row>";
    }

    std::string shared =
        "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
        "<sst xmlns=\"http://schemas.openxmlformats.org/spreadsheetml/2006/"
        "main\" count=\"" +
        std::to_string(total_refs) + "\" uniqueCount=\"" +
        std::to_string(strings.size()) + "\">";
    for (const auto& s : strings)
        shared += "<si><t xml:space=\"preserve\">" + xml_escape(s) + "</t></si>";
    shared += "</sst>";

    const std::string worksheet =
        "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
        "<worksheet xmlns=\"http://schemas.openxmlformats.org/spreadsheetml/"
        "2006/main\"><sheetData>" +
        sheet_rows + "</sheetData></worksheet>";

    const std::string workbook =
        "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
        "<workbook xmlns=\"http://schemas.openxmlformats.org/spreadsheetml/"
        "2006/main\" xmlns:r=\"http://schemas.openxmlformats.org/"
        "officeDocument/2006/relationships\"><sheets>"
        "<sheet name=\"Sheet1\" sheetId=\"1\" r:id=\"rId1\"/>"
        "</sheets></workbook>";

    const std::string workbook_rels =
        "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
        "<Relationships xmlns=\"http://schemas.openxmlformats.org/package/"
        "2006/relationships\">"
        "<Relationship Id=\"rId1\" Type=\"http://schemas.openxmlformats.org/"
        "officeDocument/2006/relationships/worksheet\" "
        "Target=\"worksheets/sheet1.xml\"/>"
        "<Relationship Id=\"rId2\" Type=\"http://schemas.openxmlformats.org/"
        "officeDocument/2006/relationships/sharedStrings\" "
        "Target=\"sharedStrings.xml\"/></Relationships>";

    const std::string content_types =
        "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
        "<Types xmlns=\"http://schemas.openxmlformats.org/package/2006/"
        "content-types\">"
        "<Default Extension=\"rels\" ContentType=\"application/"
        "vnd.openxmlformats-package.relationships+xml\"/>"
        "<Default Extension=\"xml\" ContentType=\"application/xml\"/>"
        "<Override PartName=\"/xl/workbook.xml\" ContentType=\"application/"
        "vnd.openxmlformats-officedocument.spreadsheetml.sheet.main+xml\"/>"
        "<Override PartName=\"/xl/worksheets/sheet1.xml\" "
        "ContentType=\"application/"
        "vnd.openxmlformats-officedocument.spreadsheetml.worksheet+xml\"/>"
        "<Override PartName=\"/xl/sharedStrings.xml\" "
        "ContentType=\"application/"
        "vnd.openxmlformats-officedocument.spreadsheetml.sharedStrings+xml\"/>"
        "</Types>";

    const std::string rels =
        "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"yes\"?>\n"
        "<Relationships xmlns=\"http://schemas.openxmlformats.org/package/"
        "2006/relationships\">"
        "<Relationship Id=\"rId1\" Type=\"http://schemas.openxmlformats.org/"
        "officeDocument/2006/relationships/officeDocument\" "
        "Target=\"xl/workbook.xml\"/></Relationships>";

    return zipio::write_archive({
        {"[Content_Types].xml", content_types},
        {"_rels/.rels", rels},
        {"xl/workbook.xml", workbook},
        {"xl/_rels/workbook.xml.rels", workbook_rels},
        {"xl/sharedStrings.xml", shared},
        {"xl/worksheets/sheet1.xml", worksheet},
    });
}

// Text-only PDF: uncompressed content stream, one Tj per cell at fixed
// coordinates. Column x positions double as the reader's breakpoints.
constexpr double kPdfNameX = 72.0;
constexpr double kPdfIdX = 220.0;
constexpr double kPdfRowStep = 14.0;

std::string pdf_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (c == '\\' || c == '(' || c == ')') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

void pdf_text(std::string& stream, double x, double y, int size,
              std::string_view text) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "BT /F1 %d Tf %.1f %.1f Td (", size, x, y);
    stream += buf;
    stream += pdf_escape(text);
    stream += ") Tj ET\n";
}

std::string render_pdf(const identity::PairSet& truth,
                       const ContextTemplate& tmpl,
                       const std::map<std::string, std::string>& ctx) {
    std::string stream;
    pdf_text(stream, kPdfNameX, 790, 14, tmpl.title);
    pdf_text(stream, kPdfNameX, 770, 10,
             std::string(tmpl.date_label) + ": " + ctx.at("date"));
    pdf_text(stream, kPdfNameX, 756, 10,
             std::string(tmpl.serial_label) + ": " + ctx.at("serial"));
    pdf_text(stream, kPdfNameX, 736, 10, tmpl.intro);

    double y = 710;
    pdf_text(stream, kPdfNameX, y, 10, kNameHeader);
    pdf_text(stream, kPdfIdX, y, 10, kIdHeader);
    for (const auto& pair : truth.pairs) {
        y -= kPdfRowStep;
        pdf_text(stream, kPdfNameX, y, 10, pair.name);
        pdf_text(stream, kPdfIdX, y, 10, pair.id_number);
    }
    y -= 2 * kPdfRowStep;
    pdf_text(stream, kPdfNameX, y, 10, tmpl.footer);

    std::vector<std::string> objects;
    objects.push_back("<< /Type /Catalog /Pages 2 0 R >>");
    objects.push_back("<< /Type /Pages /Kids [3 0 R] /Count 1 >>");
    objects.push_back(
        "<< /Type /Page /Parent 2 0 R /MediaBox [0 0 595 842] "
        "/Contents 4 0 R /Resources << /Font << /F1 5 0 R >> >> >>");
    objects.push_back("<< /Length " + std::to_string(stream.size()) +
                      " >>\nstream\n" + stream + "endstream");
    objects.push_back(
        "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica >>");

    std::string out = "%PDF-1.4\n%\xE2\xE3\xCF\xD3\n";
    std::vector<std::size_t> offsets;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        offsets.push_back(out.size());
        out += std::to_string(i + 1) + " 0 obj\n" + objects[i] + "\nendobj\n";
    }
    const std::size_t xref_at = out.size();
    out += "xref\n0 " + std::to_string(objects.size() + 1) + "\n";
    out += "0000000000 65535 f \n";
    for (std::size_t offset : offsets) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%010zu 00000 n \n", offset);
        out += buf;
    }
    out += "trailer\n<< /Size " + std::to_string(objects.size() + 1) +
           " /Root 1 0 R >>\nstartxref\n" + std::to_string(xref_at) +
           "\n%%EOF\n";
    return out;
}

std::string pad_to_width(const std::string& cell, int target_width) {
    std::string out = cell;
    int width = display_width(cell);
    while (width < target_width) {
        out.push_back(' ');
        ++width;
    }
    return out;
}

std::string render_transcript(const identity::PairSet& truth,
                              const ContextTemplate& tmpl,
                              const std::map<std::string, std::string>& ctx) {
    int name_width = display_width(kNameHeader);
    for (const auto& pair : truth.pairs)
        name_width = std::max(name_width, display_width(pair.name));
    const int column = name_width + 4;  // at least two spaces between columns

    std::string out;
    out += std::string(tmpl.title) + "\n";
    out += std::string(tmpl.date_label) + ": " + ctx.at("date") + "\n";
    out += std::string(tmpl.serial_label) + ": " + ctx.at("serial") + "\n";
    out += pad_to_width(kNameHeader, column) + kIdHeader + "\n";
    for (const auto& pair : truth.pairs)
        out += pad_to_width(pair.name, column) + pair.id_number + "\n";
    out += std::string(tmpl.footer) + "\n";
    return out;
}

ordered_json pairs_to_json(const identity::PairSet& set) {
    ordered_json arr = ordered_json::array();
    for (const auto& pair : set.pairs)
        arr.push_back({{"name", pair.name}, {"id_number", pair.id_number}});
    return arr;
}

}  // namespace

Result<void> CorpusSpec::validate() const {
    if (entries_min < 1 || entries_min > entries_max)
        return make_error(ErrorKind::ConfigInvalid,
                          "entries_min must satisfy 1 <= min <= max");
    if (docs_per_format < 1)
        return make_error(ErrorKind::ConfigInvalid, "docs_per_format must be >= 1");
    if (formats.empty())
        return make_error(ErrorKind::ConfigInvalid, "no formats requested");
    for (DocFormat f : formats)
        if (f == DocFormat::Unknown)
            return make_error(ErrorKind::ConfigInvalid, "unknown format in spec");
    return {};
}

std::size_t Manifest::total_pairs() const {
    std::size_t total = 0;
    for (const auto& doc : documents) total += doc.truth.size();
    return total;
}

identity::PairSet generate_identities(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(mix_seed(seed));
    identity::PairSet set;
    std::set<std::string> seen_ids;
    while (set.pairs.size() < n) {
        identity::IdentityPair pair{draw_name(rng), draw_id(rng)};
        if (!seen_ids.insert(pair.id_number).second) continue;
        set.pairs.push_back(std::move(pair));
    }
    return set;
}

Result<RenderedDocument> render_document(const identity::PairSet& truth,
                                         DocFormat format, int template_id,
                                         std::uint64_t seed) {
    if (template_id < 0 || template_id >= kTemplateCount)
        return make_error(ErrorKind::ConfigInvalid, "template_id out of range");
    if (truth.pairs.empty())
        return make_error(ErrorKind::MalformedInput,
                          "cannot render a document with no entries");
    const ContextTemplate& tmpl = kTemplates[template_id];
    std::mt19937_64 rng(mix_seed(seed, 0xC0DE));
    RenderedDocument doc;
    doc.context_fields = draw_context(tmpl, rng);

    switch (format) {
        case DocFormat::Markdown:
            doc.bytes = render_markdown(truth, tmpl, doc.context_fields);
            return doc;
        case DocFormat::Docx:
            doc.bytes = render_docx(truth, tmpl, doc.context_fields);
            return doc;
        case DocFormat::Xlsx:
            doc.bytes = render_xlsx(truth, doc.context_fields);
            return doc;
        case DocFormat::Pdf:
            doc.bytes = render_pdf(truth, tmpl, doc.context_fields);
            return doc;
        case DocFormat::Transcript:
            doc.bytes = render_transcript(truth, tmpl, doc.context_fields);
            return doc;
        case DocFormat::Unknown:
            break;
    }
    return make_error(ErrorKind::UnsupportedFormat, "cannot render format");
}

Result<Manifest> generate_corpus(const CorpusSpec& spec,
                                 const std::filesystem::path& out_dir) {
    if (auto valid = spec.validate(); !valid) return valid.error();

    Manifest manifest;
    manifest.corpus_seed = spec.seed;
    for (DocFormat format : spec.formats) {
        const std::uint64_t format_seed =
            mix_seed(spec.seed, static_cast<std::uint64_t>(format) + 1);
        for (std::size_t i = 0; i < spec.docs_per_format; ++i) {
            const std::uint64_t doc_seed = mix_seed(format_seed, i + 1);
            std::mt19937_64 rng(doc_seed);
            const std::size_t entries =
                between(rng, spec.entries_min, spec.entries_max);
            const int template_id = static_cast<int>(bounded(rng, kTemplateCount));

            DocumentRecord record;
            char idbuf[32];
            std::snprintf(idbuf, sizeof(idbuf), "%s_%04zu", to_string(format), i);
            record.doc_id = idbuf;
            record.format = format;
            record.seed = doc_seed;
            record.template_id = template_id;
            record.truth = generate_identities(mix_seed(doc_seed, 0x1D), entries);
            record.truth.source_doc = record.doc_id;

            auto rendered =
                render_document(record.truth, format, template_id, doc_seed);
            if (!rendered) return rendered.error();
            record.context_fields = std::move(rendered->context_fields);

            const std::filesystem::path rel =
                std::filesystem::path(to_string(format)) /
                (record.doc_id + "." + extension_of(format));
            record.payload_path = std::filesystem::absolute(out_dir / rel);
            if (auto written = write_file(record.payload_path, rendered->bytes);
                !written)
                return written.error();
            manifest.documents.push_back(std::move(record));
        }
    }

    if (auto written = write_manifest(manifest, out_dir / "manifest.json");
        !written)
        return written.error();
    return manifest;
}

Result<void> write_manifest(const Manifest& manifest,
                            const std::filesystem::path& path) {
    const std::filesystem::path base =
        std::filesystem::absolute(path).parent_path();
    ordered_json root;
    root["corpus_seed"] = manifest.corpus_seed;
    root["document_count"] = manifest.documents.size();
    root["pair_count"] = manifest.total_pairs();
    ordered_json docs = ordered_json::array();
    for (const auto& record : manifest.documents) {
        ordered_json j;
        j["doc_id"] = record.doc_id;
        j["format"] = to_string(record.format);
        auto rel = record.payload_path.lexically_relative(base);
        j["path"] = (rel.empty() ? record.payload_path : rel).generic_string();
        j["template_id"] = record.template_id;
        j["seed"] = record.seed;
        j["context"] = record.context_fields;
        j["truth"] = pairs_to_json(record.truth);
        docs.push_back(std::move(j));
    }
    root["documents"] = std::move(docs);
    return write_file(path, root.dump(2) + "\n");
}

Result<Manifest> load_manifest(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path))
        return make_error(ErrorKind::CorpusMissing,
                          "manifest not found: " + path.string());
    auto bytes = read_file(path);
    if (!bytes) return bytes.error();

    ordered_json root = ordered_json::parse(*bytes, nullptr, false);
    if (root.is_discarded() || !root.is_object() || !root.contains("documents"))
        return make_error(ErrorKind::MalformedInput,
                          "manifest is not valid JSON: " + path.string());

    const std::filesystem::path base =
        std::filesystem::absolute(path).parent_path();
    Manifest manifest;
    manifest.corpus_seed = root.value("corpus_seed", std::uint64_t{0});
    try {
        for (const auto& j : root.at("documents")) {
            DocumentRecord record;
            record.doc_id = j.at("doc_id").get<std::string>();
            const auto format = parse_format(j.at("format").get<std::string>());
            if (!format)
                return make_error(ErrorKind::MalformedInput,
                                  "manifest: unknown format for " + record.doc_id);
            record.format = *format;
            std::filesystem::path rel = j.at("path").get<std::string>();
            record.payload_path = rel.is_absolute() ? rel : base / rel;
            record.template_id = j.value("template_id", 0);
            record.seed = j.value("seed", std::uint64_t{0});
            if (j.contains("context"))
                for (const auto& [key, value] : j.at("context").items())
                    record.context_fields[key] = value.get<std::string>();
            for (const auto& p : j.at("truth"))
                record.truth.pairs.push_back(
                    {p.at("name").get<std::string>(),
                     p.at("id_number").get<std::string>()});
            record.truth.source_doc = record.doc_id;
            manifest.documents.push_back(std::move(record));
        }
    } catch (const nlohmann::json::exception& e) {
        return make_error(ErrorKind::MalformedInput,
                          std::string("manifest schema error: ") + e.what());
    }
    return manifest;
}

}  // namespace docpipe::docgen
