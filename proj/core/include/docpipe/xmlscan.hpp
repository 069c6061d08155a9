#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace docpipe::xmlscan {

/// Pull scanner for the small OOXML subset this project reads and writes.
/// It understands start/end/empty tags, attributes, text nodes, and the
/// five predefined entities plus numeric character references. It does not
/// handle CDATA, processing beyond skipping <?...?>, comments beyond
/// skipping <!--...-->, or DTDs.
enum class TokenKind { StartTag, EndTag, EmptyTag, Text, End };

struct Attribute {
    std::string name;
    std::string value;
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string name;               // tag name, with namespace prefix intact
    std::vector<Attribute> attrs;   // start/empty tags only
    std::string text;               // Text tokens, entities decoded

    const std::string* attr(std::string_view name) const;
};

class Scanner {
  public:
    explicit Scanner(std::string_view xml) : xml_(xml) {}

    /// Next token; TokenKind::End once exhausted. Malformed markup is
    /// surfaced via good() turning false.
    Token next();

    bool good() const { return good_; }

  private:
    std::string_view xml_;
    std::size_t pos_ = 0;
    bool good_ = true;
};

std::string decode_entities(std::string_view text);

}  // namespace docpipe::xmlscan
