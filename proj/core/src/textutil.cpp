#include "docpipe/textutil.hpp"

namespace docpipe {

char32_t decode_utf8(std::string_view text, std::size_t& pos) {
    const auto byte = [&](std::size_t i) -> std::uint8_t {
        return static_cast<std::uint8_t>(text[i]);
    };
    if (pos >= text.size()) return kInvalidCodepoint;

    const std::uint8_t b0 = byte(pos);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }

    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++pos;
        return kInvalidCodepoint;
    }
    if (pos + len > text.size()) {
        ++pos;
        return kInvalidCodepoint;
    }
    for (int i = 1; i < len; ++i) {
        const std::uint8_t b = byte(pos + i);
        if ((b & 0xC0) != 0x80) {
            ++pos;
            return kInvalidCodepoint;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong encodings and surrogates.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || (cp >= 0xD800 && cp <= 0xDFFF) ||
        cp > 0x10FFFF) {
        ++pos;
        return kInvalidCodepoint;
    }
    pos += len;
    return cp;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_valid_utf8(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (decode_utf8(text, pos) == kInvalidCodepoint) return false;
    }
    return true;
}

namespace {

bool is_wide(char32_t cp) {
    return is_cjk(cp) ||
           (cp >= 0x3000 && cp <= 0x303F) ||   // CJK punctuation
           (cp >= 0xFF00 && cp <= 0xFF60) ||   // fullwidth forms
           (cp >= 0xFE30 && cp <= 0xFE4F);
}

}  // namespace

int display_width(std::string_view text) {
    int width = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const char32_t cp = decode_utf8(text, pos);
        width += (cp != kInvalidCodepoint && is_wide(cp)) ? 2 : 1;
    }
    return width;
}

std::string_view trim(std::string_view text) {
    const auto strippable_prefix = [](std::string_view s) -> std::size_t {
        if (s.empty()) return 0;
        const char c = s.front();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
            c == '\v')
            return 1;
        // U+00A0 and U+3000 in UTF-8.
        if (s.size() >= 2 && static_cast<unsigned char>(s[0]) == 0xC2 &&
            static_cast<unsigned char>(s[1]) == 0xA0)
            return 2;
        if (s.size() >= 3 && static_cast<unsigned char>(s[0]) == 0xE3 &&
            static_cast<unsigned char>(s[1]) == 0x80 &&
            static_cast<unsigned char>(s[2]) == 0x80)
            return 3;
        return 0;
    };
    while (true) {
        const std::size_t n = strippable_prefix(text);
        if (n == 0) break;
        text.remove_prefix(n);
    }
    while (true) {
        // Trailing multi-byte spaces: test the tail by re-running the prefix
        // check on the last 1..3 bytes.
        std::size_t n = 0;
        for (std::size_t k = 1; k <= 3 && k <= text.size(); ++k) {
            std::string_view tail = text.substr(text.size() - k);
            if (strippable_prefix(tail) == k) n = k;
        }
        if (n == 0) break;
        text.remove_suffix(n);
    }
    return text;
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            std::string_view line = text.substr(start, i - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines.emplace_back(line);
            start = i + 1;
        }
    }
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::vector<std::string> split_columns(std::string_view line) {
    std::vector<std::string> cells;
    const std::size_t n = line.size();
    std::size_t i = 0;
    while (i < n && line[i] == ' ') ++i;
    while (i < n) {
        const std::size_t start = i;
        while (i < n) {
            if (line[i] != ' ') {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < n && line[j] == ' ') ++j;
            if (j - i >= 2 || j == n) break;  // column gap or trailing space
            i = j;  // single interior space stays in the cell
        }
        std::string_view cell = trim(line.substr(start, i - start));
        if (!cell.empty()) cells.emplace_back(cell);
        while (i < n && line[i] == ' ') ++i;
    }
    return cells;
}

std::vector<CjkToken> cjk_tokens(std::string_view text) {
    std::vector<CjkToken> tokens;
    std::size_t pos = 0;
    std::string current;
    std::size_t current_start = 0;
    while (pos < text.size()) {
        const std::size_t cp_start = pos;
        const char32_t cp = decode_utf8(text, pos);
        if (cp != kInvalidCodepoint && is_cjk(cp)) {
            if (current.empty()) current_start = cp_start;
            append_utf8(current, cp);
        } else if (!current.empty()) {
            tokens.push_back({std::move(current), current_start});
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back({std::move(current), current_start});
    return tokens;
}

bool starts_with(std::string_view text, std::string_view prefix) {
    return text.size() >= prefix.size() &&
           text.substr(0, prefix.size()) == prefix;
}

bool ends_with(std::string_view text, std::string_view suffix) {
    return text.size() >= suffix.size() &&
           text.substr(text.size() - suffix.size()) == suffix;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace docpipe
