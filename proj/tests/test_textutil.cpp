#include <doctest.h>

#include "docpipe/textutil.hpp"

using namespace docpipe;

TEST_CASE("decode_utf8 walks mixed-width text") {
    const std::string text = "a王b";  // 1 + 3 + 1 bytes
    std::size_t pos = 0;
    CHECK(decode_utf8(text, pos) == U'a');
    CHECK(pos == 1);
    CHECK(decode_utf8(text, pos) == U'王');
    CHECK(pos == 4);
    CHECK(decode_utf8(text, pos) == U'b');
    CHECK(pos == 5);
}

TEST_CASE("decode_utf8 flags malformed sequences and advances one byte") {
    const std::string bad = "\xE7\x8E";  // truncated 3-byte sequence
    std::size_t pos = 0;
    CHECK(decode_utf8(bad, pos) == kInvalidCodepoint);
    CHECK(pos == 1);
    CHECK_FALSE(is_valid_utf8(bad));
    CHECK(is_valid_utf8("身份证号 abc 123"));
}

TEST_CASE("append_utf8 round-trips decode_utf8") {
    for (char32_t cp : {U'A', U'é', U'王', char32_t{0x10348}}) {
        std::string buf;
        append_utf8(buf, cp);
        std::size_t pos = 0;
        CHECK(decode_utf8(buf, pos) == cp);
        CHECK(pos == buf.size());
    }
}

TEST_CASE("is_cjk covers the unified ideograph blocks only") {
    CHECK(is_cjk(U'王'));
    CHECK(is_cjk(U'验'));
    CHECK(is_cjk(0x3400));
    CHECK_FALSE(is_cjk(U'A'));
    CHECK_FALSE(is_cjk(U'7'));
    CHECK_FALSE(is_cjk(0x3000));  // ideographic space is punctuation
}

TEST_CASE("display_width doubles CJK") {
    CHECK(display_width("abc") == 3);
    CHECK(display_width("王力") == 4);
    CHECK(display_width("王a力") == 5);
    CHECK(display_width("") == 0);
}

TEST_CASE("trim strips ASCII whitespace, NBSP and ideographic space") {
    CHECK(trim("  x  ") == "x");
    CHECK(trim("\t张三\r\n") == "张三");
    CHECK(trim("\xC2\xA0y\xC2\xA0") == "y");          // NBSP
    CHECK(trim("\xE3\x80\x80z\xE3\x80\x80") == "z");  // U+3000
    CHECK(trim("   ") == "");
}

TEST_CASE("split_lines handles LF and CRLF") {
    const auto lines = split_lines("a\r\nb\nc");
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "a");
    CHECK(lines[1] == "b");
    CHECK(lines[2] == "c");
}

TEST_CASE("split_columns splits on runs of two or more spaces") {
    const auto cells = split_columns("张 三    110105194912310021   备注");
    REQUIRE(cells.size() == 3);
    CHECK(cells[0] == "张 三");  // single interior space stays in the cell
    CHECK(cells[1] == "110105194912310021");
    CHECK(cells[2] == "备注");
    CHECK(split_columns("   ").empty());
}

TEST_CASE("cjk_tokens finds maximal runs with byte offsets") {
    const std::string text = "姓名: 张三  id 李四x王五";
    const auto tokens = cjk_tokens(text);
    REQUIRE(tokens.size() == 4);
    CHECK(tokens[0].text == "姓名");
    CHECK(tokens[0].offset == 0);
    CHECK(tokens[1].text == "张三");
    CHECK(tokens[2].text == "李四");
    CHECK(tokens[3].text == "王五");
    CHECK(text.substr(tokens[3].offset, tokens[3].text.size()) == "王五");
}

TEST_CASE("xml_escape covers the five predefined entities") {
    CHECK(xml_escape("a<b>&\"'c") == "a&lt;b&gt;&amp;&quot;&apos;c");
    CHECK(xml_escape("张三") == "张三");
}

TEST_CASE("starts_with and ends_with") {
    CHECK(starts_with("manifest.json", "mani"));
    CHECK_FALSE(starts_with("m", "mani"));
    CHECK(ends_with("doc.xlsx", ".xlsx"));
    CHECK_FALSE(ends_with("x", ".xlsx"));
}
