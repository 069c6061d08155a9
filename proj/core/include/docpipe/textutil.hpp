#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace docpipe {

inline constexpr char32_t kInvalidCodepoint = 0xFFFFFFFF;

/// Decodes one UTF-8 sequence starting at `pos`; advances `pos` past it.
/// Returns kInvalidCodepoint (and advances by one byte) on malformed input.
char32_t decode_utf8(std::string_view text, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

bool is_valid_utf8(std::string_view text);

/// CJK unified ideographs (the blocks used by Chinese names and labels).
constexpr bool is_cjk(char32_t cp) {
    return (cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF);
}

constexpr bool is_ascii_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

/// Terminal display columns: CJK and fullwidth forms take two, else one.
int display_width(std::string_view text);

/// Strips surrounding ASCII whitespace plus NBSP (U+00A0) and the
/// ideographic space (U+3000).
std::string_view trim(std::string_view text);

std::vector<std::string> split_lines(std::string_view text);

/// Splits a line on runs of two or more ASCII spaces; single spaces stay
/// inside a cell. Cells are trimmed; empty cells dropped.
std::vector<std::string> split_columns(std::string_view line);

/// Maximal runs of CJK codepoints, with their byte offsets.
struct CjkToken {
    std::string text;
    std::size_t offset;
};
std::vector<CjkToken> cjk_tokens(std::string_view text);

bool starts_with(std::string_view text, std::string_view prefix);
bool ends_with(std::string_view text, std::string_view suffix);

/// XML 1.0 character escaping for text nodes and attribute values.
std::string xml_escape(std::string_view text);

}  // namespace docpipe
