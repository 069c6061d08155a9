#include "docpipe/xmlscan.hpp"

#include <cstdlib>

#include "docpipe/textutil.hpp"

namespace docpipe::xmlscan {

namespace {

bool is_name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == ':' || c == '_' || c == '-' ||
           c == '.';
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
}

}  // namespace

std::string decode_entities(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '&') {
            out.push_back(text[i++]);
            continue;
        }
        const std::size_t semi = text.find(';', i);
        if (semi == std::string_view::npos || semi - i > 10) {
            out.push_back(text[i++]);
            continue;
        }
        const std::string_view entity = text.substr(i + 1, semi - i - 1);
        if (entity == "amp") out.push_back('&');
        else if (entity == "lt") out.push_back('<');
        else if (entity == "gt") out.push_back('>');
        else if (entity == "quot") out.push_back('"');
        else if (entity == "apos") out.push_back('\'');
        else if (!entity.empty() && entity[0] == '#') {
            const std::string digits(entity.substr(1));
            const char32_t cp = static_cast<char32_t>(
                digits.size() > 1 && (digits[0] == 'x' || digits[0] == 'X')
                    ? std::strtoul(digits.c_str() + 1, nullptr, 16)
                    : std::strtoul(digits.c_str(), nullptr, 10));
            append_utf8(out, cp);
        } else {
            out.append(text.substr(i, semi - i + 1));
        }
        i = semi + 1;
    }
    return out;
}

const std::string* Token::attr(std::string_view name) const {
    for (const auto& a : attrs)
        if (a.name == name) return &a.value;
    return nullptr;
}

Token Scanner::next() {
    Token token;
    while (pos_ < xml_.size()) {
        if (xml_[pos_] != '<') {
            const std::size_t start = pos_;
            const std::size_t lt = xml_.find('<', pos_);
            const std::size_t end = lt == std::string_view::npos ? xml_.size() : lt;
            pos_ = end;
            std::string_view raw = xml_.substr(start, end - start);
            // Whitespace-only runs between tags are structural noise.
            bool all_space = true;
            for (char c : raw)
                if (!is_space(c)) { all_space = false; break; }
            if (all_space) continue;
            token.kind = TokenKind::Text;
            token.text = decode_entities(raw);
            return token;
        }

        // Skip declarations and comments.
        if (pos_ + 1 < xml_.size() && xml_[pos_ + 1] == '?') {
            const std::size_t end = xml_.find("?>", pos_);
            if (end == std::string_view::npos) { good_ = false; break; }
            pos_ = end + 2;
            continue;
        }
        if (pos_ + 3 < xml_.size() && xml_.substr(pos_, 4) == "<!--") {
            const std::size_t end = xml_.find("-->", pos_);
            if (end == std::string_view::npos) { good_ = false; break; }
            pos_ = end + 3;
            continue;
        }
        if (pos_ + 1 < xml_.size() && xml_[pos_ + 1] == '!') {
            const std::size_t end = xml_.find('>', pos_);
            if (end == std::string_view::npos) { good_ = false; break; }
            pos_ = end + 1;
            continue;
        }

        std::size_t i = pos_ + 1;
        const bool closing = i < xml_.size() && xml_[i] == '/';
        if (closing) ++i;
        const std::size_t name_start = i;
        while (i < xml_.size() && is_name_char(xml_[i])) ++i;
        if (i == name_start) { good_ = false; break; }
        token.name = std::string(xml_.substr(name_start, i - name_start));

        // Attributes.
        while (i < xml_.size() && xml_[i] != '>' && xml_[i] != '/') {
            while (i < xml_.size() && is_space(xml_[i])) ++i;
            if (i >= xml_.size() || xml_[i] == '>' || xml_[i] == '/') break;
            const std::size_t attr_start = i;
            while (i < xml_.size() && is_name_char(xml_[i])) ++i;
            std::string attr_name(xml_.substr(attr_start, i - attr_start));
            while (i < xml_.size() && is_space(xml_[i])) ++i;
            if (i >= xml_.size() || xml_[i] != '=') { good_ = false; return token; }
            ++i;
            while (i < xml_.size() && is_space(xml_[i])) ++i;
            if (i >= xml_.size() || (xml_[i] != '"' && xml_[i] != '\'')) {
                good_ = false;
                return token;
            }
            const char quote = xml_[i++];
            const std::size_t val_start = i;
            while (i < xml_.size() && xml_[i] != quote) ++i;
            if (i >= xml_.size()) { good_ = false; return token; }
            token.attrs.push_back(
                {std::move(attr_name),
                 decode_entities(xml_.substr(val_start, i - val_start))});
            ++i;
        }

        bool empty = false;
        if (i < xml_.size() && xml_[i] == '/') {
            empty = true;
            ++i;
        }
        if (i >= xml_.size() || xml_[i] != '>') { good_ = false; break; }
        pos_ = i + 1;
        token.kind = closing ? TokenKind::EndTag
                   : empty  ? TokenKind::EmptyTag
                            : TokenKind::StartTag;
        return token;
    }
    token.kind = TokenKind::End;
    return token;
}

}  // namespace docpipe::xmlscan
