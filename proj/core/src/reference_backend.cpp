#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "docpipe/gateway.hpp"
#include "docpipe/identity.hpp"
#include "docpipe/textutil.hpp"

namespace docpipe::gateway {

namespace {

std::string json_quote(const std::string& text) {
    return nlohmann::json(text).dump();
}

// Last CJK token starting before `offset`. Tokens are in text order, so
// this is the same-line predecessor when one exists and the nearest
// preceding line's final token otherwise.
std::string nearest_preceding_name(const std::vector<CjkToken>& tokens,
                                   std::size_t offset) {
    std::string name;
    for (const auto& token : tokens) {
        if (token.offset >= offset) break;
        name = token.text;
    }
    return name;
}

std::string behave_direct(std::string_view payload) {
    const auto candidates = identity::find_id_candidates(payload);
    const auto tokens = cjk_tokens(payload);

    std::string out = "[\n";
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const std::string name =
            nearest_preceding_name(tokens, candidates[i].offset);
        out += " { \"row\": " + std::to_string(i + 1) +
               ", \"name\": " + json_quote(name) +
               ", \"id_number\": " + json_quote(candidates[i].text) + " }";
        if (i + 1 < candidates.size()) out += ",";
        out += "\n";
    }
    out += "]";
    return out;
}

struct PlaceholderSpan {
    std::string token;
    std::size_t begin = 0;
    std::size_t end = 0;
};

std::vector<PlaceholderSpan> find_placeholders(std::string_view payload) {
    std::vector<PlaceholderSpan> spans;
    std::size_t pos = 0;
    while (true) {
        const std::size_t at = payload.find("⟦ID_", pos);
        if (at == std::string_view::npos) break;
        const std::size_t close = payload.find("⟧", at);
        if (close == std::string_view::npos) break;
        const std::size_t end = close + std::string_view("⟧").size();
        spans.push_back({std::string(payload.substr(at, end - at)), at, end});
        pos = end;
    }
    return spans;
}

std::string behave_replace(std::string_view payload) {
    const auto spans = find_placeholders(payload);
    const auto tokens = cjk_tokens(payload);

    std::string out;
    for (const auto& span : spans) {
        // Nearest CJK token by byte gap, either side; preceding wins ties
        // (gaps are doubled and following gaps get +1 so the comparison
        // encodes that). This is where adjacency-ambiguous layouts produce
        // wrong names.
        std::string best;
        std::size_t best_gap = std::string::npos;
        for (const auto& token : tokens) {
            const std::size_t token_end = token.offset + token.text.size();
            std::size_t gap;
            if (token_end <= span.begin) gap = 2 * (span.begin - token_end);
            else if (token.offset >= span.end) gap = 2 * (token.offset - span.end) + 1;
            else continue;
            if (gap < best_gap) {
                best_gap = gap;
                best = token.text;
            }
        }
        out += span.token;
        if (!best.empty()) {
            out.push_back(' ');
            out += best;
        }
        out.push_back('\n');
    }
    return out;
}

bool is_name_label(std::string_view cell) {
    const std::string_view c = trim(cell);
    return c.find("姓名") != std::string_view::npos || c == "名字" ||
           c == "姓 名";
}

bool is_id_label(std::string_view cell) {
    const std::string_view c = trim(cell);
    return c.find("身份证") != std::string_view::npos ||
           c.find("证件号") != std::string_view::npos;
}

std::vector<std::string> split_on_bars(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = line.find(" | ", start);
        if (at == std::string_view::npos) {
            cells.emplace_back(trim(line.substr(start)));
            break;
        }
        cells.emplace_back(trim(line.substr(start, at - start)));
        start = at + 3;
    }
    return cells;
}

std::string behave_table_locate(std::string_view payload) {
    long name_col = -1, id_col = -1, row_count = 0;
    for (const auto& line : split_lines(payload)) {
        if (starts_with(line, "columns:")) {
            const auto cells = split_on_bars(std::string_view(line).substr(8));
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (name_col < 0 && is_name_label(cells[i]))
                    name_col = static_cast<long>(i);
                if (id_col < 0 && is_id_label(cells[i]))
                    id_col = static_cast<long>(i);
            }
        } else if (starts_with(line, "row_count:")) {
            row_count = std::strtol(line.c_str() + 10, nullptr, 10);
        }
    }
    return std::to_string(name_col) + " " + std::to_string(id_col) + " 0 " +
           std::to_string(row_count - 1);
}

class ReferenceBackend final : public Backend {
  public:
    Result<std::string> run(const CompletionRequest& req) override {
        for (TaskKind kind : {TaskKind::DirectExtract, TaskKind::ReplaceResolve,
                              TaskKind::TableLocate}) {
            if (req.system_prompt.find(task_marker(kind)) != std::string::npos)
                return reference_behavior(kind, req.user_prompt);
        }
        return make_error(ErrorKind::RemoteFailure,
                          "reference backend: prompt carries no task marker");
    }

    std::string name() const override { return "reference"; }
};

}  // namespace

std::string reference_behavior(TaskKind kind, std::string_view payload) {
    switch (kind) {
        case TaskKind::DirectExtract: return behave_direct(payload);
        case TaskKind::ReplaceResolve: return behave_replace(payload);
        case TaskKind::TableLocate: return behave_table_locate(payload);
    }
    return {};
}

std::shared_ptr<Backend> make_reference_backend() {
    return std::make_shared<ReferenceBackend>();
}

}  // namespace docpipe::gateway
