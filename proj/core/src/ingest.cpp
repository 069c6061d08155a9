#include "docpipe/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "docpipe/textutil.hpp"
#include "docpipe/xmlscan.hpp"
#include "docpipe/zipio.hpp"

namespace docpipe::ingest {

namespace {

class ParseTimer {
  public:
    ParseTimer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

// Attaches the table only when it is non-degenerate (>= 2 columns and >= 1
// data row); degenerate grids leave the text SymbolicOnly.
void adopt_table(StructuredText& st, std::optional<TableModel> table) {
    if (table && table->n_cols >= 2 && !table->rows.empty()) {
        st.table = std::move(table);
        st.fidelity = Fidelity::Preserved;
    } else {
        st.fidelity = Fidelity::SymbolicOnly;
    }
}

void normalize_row(std::vector<std::string>& row, std::size_t n_cols) {
    row.resize(n_cols);
}

// ---------------------------------------------------------------------------
// Markdown

std::vector<std::string> split_pipe_row(std::string_view line) {
    std::string_view body = trim(line);
    if (!body.empty() && body.front() == '|') body.remove_prefix(1);
    if (!body.empty() && body.back() == '|') body.remove_suffix(body.size() ? 1 : 0);
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
        if (i == body.size() || body[i] == '|') {
            cells.emplace_back(trim(body.substr(start, i - start)));
            start = i + 1;
        }
    }
    return cells;
}

bool is_pipe_row(std::string_view line) {
    return !trim(line).empty() && trim(line).front() == '|';
}

bool is_delimiter_row(std::string_view line) {
    if (!is_pipe_row(line)) return false;
    bool has_dash = false;
    for (const auto& cell : split_pipe_row(line)) {
        if (cell.empty()) return false;
        for (char c : cell) {
            if (c == '-') has_dash = true;
            else if (c != ':') return false;
        }
    }
    return has_dash;
}

// ---------------------------------------------------------------------------
// PDF content streams

// Tokenizes one uncompressed content stream, tracking enough of the text
// state (Td/TD/Tm translations within BT..ET) to place each shown string.
class PdfStreamReader {
  public:
    explicit PdfStreamReader(std::string_view stream) : s_(stream) {}

    void run(std::vector<TextFragment>& out) {
        std::vector<double> numbers;
        std::string pending_string;
        bool have_string = false;
        while (pos_ < s_.size()) {
            skip_space();
            if (pos_ >= s_.size()) break;
            const char c = s_[pos_];
            if (c == '(') {
                pending_string = read_string();
                have_string = true;
            } else if (c == '[') {
                pending_string = read_array_strings();
                have_string = true;
            } else if (c == '/') {
                read_name();
            } else if (c == '-' || c == '+' || c == '.' ||
                       std::isdigit(static_cast<unsigned char>(c))) {
                numbers.push_back(read_number());
                continue;  // keep accumulating operands
            } else {
                const std::string op = read_operator();
                apply(op, numbers, pending_string, have_string, out);
                numbers.clear();
                have_string = false;
                continue;
            }
        }
    }

  private:
    void apply(const std::string& op, const std::vector<double>& numbers,
               const std::string& str, bool have_string,
               std::vector<TextFragment>& out) {
        if (op == "BT") {
            x_ = y_ = 0;
        } else if (op == "Td" || op == "TD") {
            if (numbers.size() >= 2) {
                x_ += numbers[numbers.size() - 2];
                y_ += numbers[numbers.size() - 1];
            }
        } else if (op == "Tm") {
            if (numbers.size() >= 6) {
                x_ = numbers[numbers.size() - 2];
                y_ = numbers[numbers.size() - 1];
            }
        } else if ((op == "Tj" || op == "TJ" || op == "'") && have_string) {
            if (!str.empty()) out.push_back({x_, y_, str});
        }
        // Tf, ET and anything else need no state here.
    }

    void skip_space() {
        while (pos_ < s_.size() &&
               std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    double read_number() {
        std::size_t end = pos_;
        while (end < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[end])) ||
                s_[end] == '.' || s_[end] == '-' || s_[end] == '+'))
            ++end;
        const double value = std::strtod(std::string(s_.substr(pos_, end - pos_)).c_str(), nullptr);
        pos_ = end;
        return value;
    }

    std::string read_string() {
        ++pos_;  // consume '('
        std::string out;
        int depth = 1;
        while (pos_ < s_.size()) {
            const char c = s_[pos_++];
            if (c == '\\' && pos_ < s_.size()) {
                out.push_back(s_[pos_++]);
            } else if (c == '(') {
                ++depth;
                out.push_back(c);
            } else if (c == ')') {
                if (--depth == 0) break;
                out.push_back(c);
            } else {
                out.push_back(c);
            }
        }
        return out;
    }

    std::string read_array_strings() {
        ++pos_;  // consume '['
        std::string out;
        while (pos_ < s_.size() && s_[pos_] != ']') {
            if (s_[pos_] == '(') out += read_string();
            else ++pos_;
        }
        if (pos_ < s_.size()) ++pos_;  // consume ']'
        return out;
    }

    void read_name() {
        ++pos_;
        while (pos_ < s_.size() &&
               !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
               s_[pos_] != '/' && s_[pos_] != '(' && s_[pos_] != '[')
            ++pos_;
    }

    std::string read_operator() {
        std::size_t end = pos_;
        while (end < s_.size() &&
               !std::isspace(static_cast<unsigned char>(s_[end])) &&
               s_[end] != '(' && s_[end] != '[' && s_[end] != '/')
            ++end;
        std::string op(s_.substr(pos_, end - pos_));
        pos_ = end == pos_ ? pos_ + 1 : end;
        return op;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    double x_ = 0;
    double y_ = 0;
};

struct PdfLine {
    double y = 0;
    std::vector<TextFragment> fragments;  // sorted by x
};

std::vector<PdfLine> bucket_lines(std::vector<TextFragment> fragments) {
    std::sort(fragments.begin(), fragments.end(), [](const auto& a, const auto& b) {
        if (a.y != b.y) return a.y > b.y;  // top of page first
        return a.x < b.x;
    });

    // Line height inferred as the smallest vertical gap between distinct
    // baselines; tolerance is half of that.
    double line_height = std::numeric_limits<double>::infinity();
    double prev_y = 0;
    bool have_prev = false;
    for (const auto& frag : fragments) {
        if (have_prev && prev_y - frag.y > 0.01)
            line_height = std::min(line_height, prev_y - frag.y);
        prev_y = frag.y;
        have_prev = true;
    }
    if (!std::isfinite(line_height)) line_height = 12.0;
    const double tolerance = line_height / 2.0;

    std::vector<PdfLine> lines;
    for (auto& frag : fragments) {
        if (lines.empty() || lines.back().y - frag.y > tolerance) {
            lines.push_back({frag.y, {}});
        }
        lines.back().fragments.push_back(std::move(frag));
    }
    return lines;
}

// Maps a fragment to the nearest header breakpoint.
std::size_t column_of(double x, const std::vector<double>& breakpoints) {
    std::size_t best = 0;
    double best_dist = std::abs(x - breakpoints[0]);
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        const double dist = std::abs(x - breakpoints[i]);
        if (dist < best_dist) {
            best_dist = dist;
            best = i;
        }
    }
    return best;
}

}  // namespace

DocFormat detect_format(const std::filesystem::path& path,
                        std::string_view bytes) {
    if (starts_with(bytes, "PK\x03\x04")) {
        auto archive = zipio::Archive::open(bytes);
        if (archive) {
            if (archive->contains("word/document.xml")) return DocFormat::Docx;
            if (archive->contains("xl/workbook.xml")) return DocFormat::Xlsx;
        }
        return DocFormat::Unknown;
    }
    if (starts_with(bytes, "%PDF-")) return DocFormat::Pdf;
    if (bytes.empty()) return DocFormat::Unknown;

    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    if (ext == ".md" || ext == ".markdown") return DocFormat::Markdown;
    if (ext == ".txt") return DocFormat::Transcript;
    return DocFormat::Unknown;
}

Result<StructuredText> parse_markdown(std::string_view bytes) {
    ParseTimer timer;
    if (!is_valid_utf8(bytes))
        return make_error(ErrorKind::MalformedInput, "markdown is not UTF-8");

    StructuredText st;
    st.source_format = DocFormat::Markdown;
    st.plain_text = std::string(bytes);

    const auto lines = split_lines(bytes);
    std::optional<TableModel> table;
    for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
        if (!is_pipe_row(lines[i]) || !is_delimiter_row(lines[i + 1])) continue;
        TableModel model;
        model.header = split_pipe_row(lines[i]);
        model.n_cols = model.header.size();
        for (std::size_t j = i + 2; j < lines.size() && is_pipe_row(lines[j]); ++j) {
            auto row = split_pipe_row(lines[j]);
            normalize_row(row, model.n_cols);
            model.rows.push_back(std::move(row));
        }
        table = std::move(model);
        break;  // first pipe table wins
    }
    adopt_table(st, std::move(table));

    if (st.plain_text.empty())
        return make_error(ErrorKind::MalformedInput, "empty markdown document");
    st.extract_seconds = timer.seconds();
    return st;
}

Result<StructuredText> parse_docx(std::string_view bytes) {
    ParseTimer timer;
    auto archive = zipio::Archive::open(bytes);
    if (!archive)
        return make_error(ErrorKind::MalformedInput,
                          "docx: " + archive.error().message);
    auto xml = archive->read("word/document.xml");
    if (!xml)
        return make_error(ErrorKind::MalformedInput,
                          "docx: missing word/document.xml");

    StructuredText st;
    st.source_format = DocFormat::Docx;

    std::optional<TableModel> table;
    TableModel current;
    std::vector<std::string> row;
    std::string cell;
    std::string paragraph;
    int table_depth = 0, cell_depth = 0;
    bool table_done = false;

    xmlscan::Scanner scanner(*xml);
    std::vector<std::string> lines;
    for (auto token = scanner.next(); token.kind != xmlscan::TokenKind::End;
         token = scanner.next()) {
        switch (token.kind) {
            case xmlscan::TokenKind::StartTag:
                if (token.name == "w:tbl") ++table_depth;
                else if (token.name == "w:tc" && table_depth > 0) {
                    ++cell_depth;
                    cell.clear();
                }
                break;
            case xmlscan::TokenKind::EndTag:
                if (token.name == "w:tbl") {
                    if (--table_depth == 0 && !table_done && !current.header.empty()) {
                        current.n_cols = current.header.size();
                        for (auto& r : current.rows) normalize_row(r, current.n_cols);
                        table = std::move(current);
                        table_done = true;
                        current = {};
                    }
                } else if (token.name == "w:tr" && table_depth > 0) {
                    std::string joined;
                    for (const auto& c : row) {
                        if (!joined.empty()) joined.push_back(' ');
                        joined += c;
                    }
                    lines.push_back(std::move(joined));
                    if (!table_done) {
                        if (current.header.empty()) current.header = std::move(row);
                        else current.rows.push_back(std::move(row));
                    }
                    row.clear();
                } else if (token.name == "w:tc" && table_depth > 0) {
                    --cell_depth;
                    row.push_back(std::string(trim(cell)));
                } else if (token.name == "w:p" && table_depth == 0) {
                    lines.push_back(std::string(trim(paragraph)));
                    paragraph.clear();
                }
                break;
            case xmlscan::TokenKind::Text:
                if (cell_depth > 0) cell += token.text;
                else if (table_depth == 0) paragraph += token.text;
                break;
            default:
                break;
        }
    }
    if (!scanner.good())
        return make_error(ErrorKind::MalformedInput, "docx: malformed XML");

    // Linearize in document order: paragraphs and table rows (cells joined
    // by a single space) in the order they appeared.
    std::string text;
    for (const auto& line : lines) {
        if (!line.empty()) {
            text += line;
            text.push_back('\n');
        }
    }
    st.plain_text = std::move(text);
    adopt_table(st, std::move(table));

    if (st.plain_text.empty())
        return make_error(ErrorKind::MalformedInput, "docx: no text content");
    st.extract_seconds = timer.seconds();
    return st;
}

namespace {

// An <si> may contain either one <t> or several <r><t> runs.
Result<std::vector<std::string>> read_shared_strings(const zipio::Archive& archive) {
    std::vector<std::string> strings;
    if (!archive.contains("xl/sharedStrings.xml")) return strings;
    auto xml = archive.read("xl/sharedStrings.xml");
    if (!xml) return xml.error();

    xmlscan::Scanner scanner(*xml);
    std::string current;
    bool in_si = false, in_t = false;
    for (auto token = scanner.next(); token.kind != xmlscan::TokenKind::End;
         token = scanner.next()) {
        if (token.kind == xmlscan::TokenKind::StartTag) {
            if (token.name == "si") {
                in_si = true;
                current.clear();
            } else if (token.name == "t") {
                in_t = true;
            }
        } else if (token.kind == xmlscan::TokenKind::EndTag) {
            if (token.name == "si") {
                in_si = false;
                strings.push_back(current);
            } else if (token.name == "t") {
                in_t = false;
            }
        } else if (token.kind == xmlscan::TokenKind::Text && in_si && in_t) {
            current += token.text;
        }
    }
    if (!scanner.good())
        return make_error(ErrorKind::MalformedInput,
                          "xlsx: malformed sharedStrings.xml");
    return strings;
}

std::size_t column_index(std::string_view cell_ref) {
    std::size_t col = 0;
    for (char c : cell_ref) {
        if (c >= 'A' && c <= 'Z') col = col * 26 + static_cast<std::size_t>(c - 'A' + 1);
        else break;
    }
    return col == 0 ? 0 : col - 1;
}

// Spreadsheet numeric coercion turns long IDs into scientific notation.
// Re-expand pure-decimal exponent forms lexically (no floating point, so
// no precision cliff); anything else passes through unchanged.
std::string expand_numeric(const std::string& raw) {
    const std::size_t e_pos = raw.find_first_of("eE");
    if (e_pos == std::string::npos) return raw;

    std::string mantissa = raw.substr(0, e_pos);
    std::string exp_text = raw.substr(e_pos + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.erase(0, 1);
    if (mantissa.empty() || exp_text.empty()) return raw;
    for (char c : exp_text)
        if (!std::isdigit(static_cast<unsigned char>(c))) return raw;

    std::string digits;
    std::size_t point = std::string::npos;
    for (std::size_t i = 0; i < mantissa.size(); ++i) {
        const char c = mantissa[i];
        if (c == '.') {
            if (point != std::string::npos) return raw;
            point = digits.size();
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
        } else {
            return raw;
        }
    }
    if (point == std::string::npos) point = digits.size();

    const long exponent = std::strtol(exp_text.c_str(), nullptr, 10);
    long int_len = static_cast<long>(point) + exponent;
    if (int_len < static_cast<long>(digits.size())) return raw;  // fractional result
    digits.append(static_cast<std::size_t>(int_len) - digits.size(), '0');
    return digits;
}

}  // namespace

Result<StructuredText> parse_xlsx(std::string_view bytes) {
    ParseTimer timer;
    auto archive = zipio::Archive::open(bytes);
    if (!archive)
        return make_error(ErrorKind::MalformedInput,
                          "xlsx: " + archive.error().message);

    auto shared = read_shared_strings(*archive);
    if (!shared) return shared.error();

    std::string sheet_name;
    for (const auto& name : archive->names()) {
        if (starts_with(name, "xl/worksheets/") && ends_with(name, ".xml")) {
            sheet_name = name;
            break;
        }
    }
    if (sheet_name.empty())
        return make_error(ErrorKind::MalformedInput, "xlsx: no worksheet part");
    auto xml = archive->read(sheet_name);
    if (!xml) return make_error(ErrorKind::MalformedInput, xml.error().message);

    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> row;
    std::size_t col = 0;
    std::string cell_type, value;
    bool in_row = false, in_value = false, in_inline_t = false;

    auto flush_cell = [&]() {
        if (row.size() <= col) row.resize(col + 1);
        if (cell_type == "s") {
            const std::size_t idx =
                static_cast<std::size_t>(std::strtoul(value.c_str(), nullptr, 10));
            row[col] = idx < shared->size() ? (*shared)[idx] : "";
        } else if (cell_type.empty() || cell_type == "n") {
            row[col] = expand_numeric(value);
        } else {
            row[col] = value;  // str / inlineStr / b — taken literally
        }
    };

    xmlscan::Scanner scanner(*xml);
    for (auto token = scanner.next(); token.kind != xmlscan::TokenKind::End;
         token = scanner.next()) {
        if (token.kind == xmlscan::TokenKind::StartTag ||
            token.kind == xmlscan::TokenKind::EmptyTag) {
            if (token.name == "row") {
                in_row = true;
                row.clear();
            } else if (token.name == "c" && in_row) {
                const std::string* ref = token.attr("r");
                col = ref ? column_index(*ref) : row.size();
                const std::string* type = token.attr("t");
                cell_type = type ? *type : "";
                value.clear();
                if (token.kind == xmlscan::TokenKind::EmptyTag) flush_cell();
            } else if (token.name == "v") {
                in_value = true;
            } else if (token.name == "t") {
                in_inline_t = true;
            }
        } else if (token.kind == xmlscan::TokenKind::EndTag) {
            if (token.name == "row") {
                in_row = false;
                grid.push_back(std::move(row));
                row.clear();
            } else if (token.name == "c" && in_row) {
                flush_cell();
            } else if (token.name == "v") {
                in_value = false;
            } else if (token.name == "t") {
                in_inline_t = false;
            }
        } else if (token.kind == xmlscan::TokenKind::Text &&
                   (in_value || in_inline_t)) {
            value += token.text;
        }
    }
    if (!scanner.good())
        return make_error(ErrorKind::MalformedInput, "xlsx: malformed worksheet XML");
    if (grid.empty())
        return make_error(ErrorKind::MalformedInput, "xlsx: worksheet has no rows");

    TableModel model;
    model.header = grid.front();
    model.n_cols = model.header.size();
    for (std::size_t i = 1; i < grid.size(); ++i) {
        normalize_row(grid[i], model.n_cols);
        model.rows.push_back(std::move(grid[i]));
    }

    StructuredText st;
    st.source_format = DocFormat::Xlsx;
    std::string text;
    auto append_row = [&text](const std::vector<std::string>& cells) {
        std::string joined;
        for (const auto& c : cells) {
            if (!joined.empty()) joined.push_back(' ');
            joined += c;
        }
        text += joined;
        text.push_back('\n');
    };
    append_row(model.header);
    for (const auto& r : model.rows) append_row(r);
    st.plain_text = std::move(text);
    adopt_table(st, std::move(model));
    st.extract_seconds = timer.seconds();
    return st;
}

Result<StructuredText> parse_pdf(std::string_view bytes) {
    ParseTimer timer;
    if (!starts_with(bytes, "%PDF-"))
        return make_error(ErrorKind::MalformedInput, "pdf: missing %PDF- header");

    std::vector<TextFragment> fragments;
    std::size_t search = 0;
    bool found_stream = false;
    while (true) {
        const std::size_t at = bytes.find("stream", search);
        if (at == std::string_view::npos) break;
        // "endstream" also contains "stream"; require a keyword boundary.
        if (at > 0 && std::isalpha(static_cast<unsigned char>(bytes[at - 1]))) {
            search = at + 6;
            continue;
        }
        std::size_t body = at + 6;
        if (body < bytes.size() && bytes[body] == '\r') ++body;
        if (body < bytes.size() && bytes[body] == '\n') ++body;
        const std::size_t end = bytes.find("endstream", body);
        if (end == std::string_view::npos)
            return make_error(ErrorKind::MalformedInput, "pdf: unterminated stream");

        // The object dictionary sits between the previous "obj" and "stream".
        const std::size_t obj_at = bytes.rfind("obj", at);
        const std::string_view dict = bytes.substr(
            obj_at == std::string_view::npos ? 0 : obj_at, at - (obj_at == std::string_view::npos ? 0 : obj_at));
        if (dict.find("/Filter") != std::string_view::npos)
            return make_error(ErrorKind::UnsupportedPdfFeature,
                              "pdf: compressed content stream");

        found_stream = true;
        PdfStreamReader reader(bytes.substr(body, end - body));
        reader.run(fragments);
        search = end + 9;
    }
    if (!found_stream)
        return make_error(ErrorKind::MalformedInput, "pdf: no content stream");
    if (fragments.empty())
        return make_error(ErrorKind::MalformedInput, "pdf: no text operators");

    StructuredText st = structure_fragments(std::move(fragments));
    st.source_format = DocFormat::Pdf;
    st.extract_seconds = timer.seconds();
    return st;
}

StructuredText structure_fragments(std::vector<TextFragment> fragments) {
    StructuredText st;
    const auto lines = bucket_lines(std::move(fragments));

    std::string text;
    for (const auto& line : lines) {
        std::string joined;
        for (const auto& frag : line.fragments) {
            if (!joined.empty()) joined.push_back(' ');
            joined += frag.text;
        }
        text += joined;
        text.push_back('\n');
    }
    st.plain_text = std::move(text);

    // Column inference: the first multi-fragment line fixes the x
    // breakpoints; the run of multi-fragment lines after it supplies the
    // data rows (a single-fragment line such as a footer ends the table).
    std::optional<TableModel> table;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].fragments.size() < 2) continue;
        std::vector<double> breakpoints;
        for (const auto& frag : lines[i].fragments) breakpoints.push_back(frag.x);

        TableModel model;
        model.n_cols = breakpoints.size();
        for (const auto& frag : lines[i].fragments) model.header.push_back(frag.text);
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            if (lines[j].fragments.size() < 2) break;
            std::vector<std::string> row(model.n_cols);
            for (const auto& frag : lines[j].fragments) {
                const std::size_t c = column_of(frag.x, breakpoints);
                if (!row[c].empty()) row[c].push_back(' ');
                row[c] += frag.text;
            }
            model.rows.push_back(std::move(row));
        }
        table = std::move(model);
        break;
    }
    adopt_table(st, std::move(table));
    return st;
}

StructuredText wrap_table_in_tags(const StructuredText& st) {
    StructuredText out;
    out.source_format = st.source_format;
    out.fidelity = Fidelity::SymbolicOnly;
    out.extract_seconds = st.extract_seconds;
    if (!st.table) {
        out.plain_text = st.plain_text;
        return out;
    }

    std::string text = "<table>";
    auto tag_row = [&text](const std::vector<std::string>& cells) {
        text += "<tr>";
        for (const auto& c : cells) text += "<td>" + c + "</td>";
        text += "</tr>";
    };
    tag_row(st.table->header);
    for (const auto& row : st.table->rows) tag_row(row);
    text += "</table>";
    out.plain_text = std::move(text);
    return out;
}

std::optional<TableModel> grid_from_aligned_lines(
    const std::vector<std::string>& lines) {
    // Longest run of consecutive lines splitting into the same >= 2 column
    // count wins; its first line is the header.
    std::vector<std::vector<std::string>> cells;
    cells.reserve(lines.size());
    for (const auto& line : lines) cells.push_back(split_columns(line));

    std::size_t best_start = 0, best_len = 0;
    std::size_t i = 0;
    while (i < cells.size()) {
        if (cells[i].size() < 2) {
            ++i;
            continue;
        }
        const std::size_t width = cells[i].size();
        std::size_t j = i;
        while (j < cells.size() && cells[j].size() == width) ++j;
        if (j - i > best_len) {
            best_len = j - i;
            best_start = i;
        }
        i = j;
    }
    if (best_len < 2) return std::nullopt;  // header plus at least one row

    TableModel model;
    model.header = cells[best_start];
    model.n_cols = model.header.size();
    for (std::size_t k = best_start + 1; k < best_start + best_len; ++k)
        model.rows.push_back(cells[k]);
    return model;
}

}  // namespace docpipe::ingest
