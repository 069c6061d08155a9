#include "docpipe/extract.hpp"

#include <cstdlib>

#include <json.hpp>

#include "docpipe/textutil.hpp"

namespace docpipe::extract {

namespace {

constexpr std::size_t kDirectMaxTokens = 4096;
constexpr std::size_t kReplaceMaxTokens = 2048;
constexpr std::size_t kLocateMaxTokens = 64;

ExtractionOutcome fatal_outcome(Paradigm paradigm, double ocr_seconds,
                                double llm_seconds, ErrorKind kind,
                                std::string message) {
    ExtractionOutcome out;
    out.paradigm = paradigm;
    out.ocr_seconds = ocr_seconds;
    out.llm_seconds = llm_seconds;
    out.total_seconds = ocr_seconds + llm_seconds;
    out.fatal = true;
    out.failure_kind = kind;
    out.failure_message = std::move(message);
    return out;
}

double pick_latency(const gateway::CompletionResponse& resp,
                    gateway::ClockMode clock) {
    return clock == gateway::ClockMode::Virtual ? resp.virtual_latency
                                                : resp.wall_latency;
}

// Accepts "id_number", "id", or "id_no" so lenient parsing survives minor
// schema drift from remote models.
std::optional<std::string> id_field(const nlohmann::json& object) {
    for (const char* key : {"id_number", "id", "id_no"})
        if (object.contains(key) && object.at(key).is_string())
            return object.at(key).get<std::string>();
    return std::nullopt;
}

std::optional<identity::PairSet> parse_direct_json(const std::string& text) {
    const auto parsed = nlohmann::json::parse(text, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_array()) return std::nullopt;
    identity::PairSet pairs;
    for (const auto& entry : parsed) {
        if (!entry.is_object()) return std::nullopt;
        const auto id = id_field(entry);
        if (!id) return std::nullopt;
        std::string name;
        if (entry.contains("name") && entry.at("name").is_string())
            name = entry.at("name").get<std::string>();
        pairs.pairs.push_back({std::move(name), *id});
    }
    return pairs;
}

// Fallback: any line holding an ID candidate yields one pair, named by the
// line's last CJK token.
std::optional<identity::PairSet> parse_direct_lines(const std::string& text) {
    identity::PairSet pairs;
    for (const auto& line : split_lines(text)) {
        const auto ids = identity::find_id_candidates(line);
        if (ids.empty()) continue;
        const auto tokens = cjk_tokens(line);
        std::string name;
        for (const auto& token : tokens)
            if (token.offset < ids.front().offset) name = token.text;
        pairs.pairs.push_back({std::move(name), ids.front().text});
    }
    if (pairs.empty()) return std::nullopt;
    return pairs;
}

}  // namespace

std::optional<Paradigm> parse_paradigm(std::string_view name) {
    if (name == "direct") return Paradigm::Direct;
    if (name == "replace") return Paradigm::Replace;
    if (name == "table") return Paradigm::Table;
    return std::nullopt;
}

PlaceholderMap build_placeholder_map(std::string_view text) {
    PlaceholderMap map;
    const auto candidates = identity::find_id_candidates(text);
    map.entries.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        map.entries.push_back({"⟦ID_" + std::to_string(i + 1) + "⟧",
                               candidates[i].text, candidates[i].offset});
    }
    return map;
}

std::string substitute_placeholders(std::string_view text,
                                    const PlaceholderMap& map) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    for (const auto& entry : map.entries) {
        out += text.substr(pos, entry.offset - pos);
        out += entry.token;
        pos = entry.offset + entry.id_number.size();
    }
    out += text.substr(pos);
    return out;
}

ExtractionOutcome extract_direct(const ingest::StructuredText& st,
                                 const gateway::Gateway& gw,
                                 gateway::ClockMode clock) {
    const double ocr = st.extract_seconds;
    if (st.plain_text.empty())
        return fatal_outcome(Paradigm::Direct, ocr, 0, ErrorKind::MalformedInput,
                             "direct extraction requires non-empty text");

    gateway::CompletionRequest req;
    req.system_prompt =
        gateway::task_marker(gateway::TaskKind::DirectExtract) +
        "\nRead the document text and list every (name, id_number) pair in "
        "it. Respond with a JSON array of objects, one object per pair, "
        "each with \"name\" and \"id_number\" fields.";
    req.user_prompt = st.plain_text;
    req.max_output_tokens = kDirectMaxTokens;

    const auto resp = gw.complete(req);
    if (!resp)
        return fatal_outcome(Paradigm::Direct, ocr, 0, ErrorKind::GatewayFailure,
                             resp.error().message);

    auto pairs = parse_direct_json(resp->text);
    if (!pairs) pairs = parse_direct_lines(resp->text);
    if (!pairs)
        return fatal_outcome(Paradigm::Direct, ocr, pick_latency(*resp, clock),
                             ErrorKind::UnparseableOutput,
                             "direct response is neither a pair array nor "
                             "line-per-pair text");

    ExtractionOutcome out;
    out.paradigm = Paradigm::Direct;
    out.pairs = std::move(*pairs);
    out.ocr_seconds = ocr;
    out.llm_seconds = pick_latency(*resp, clock);
    out.total_seconds = out.ocr_seconds + out.llm_seconds;
    return out;
}

ExtractionOutcome extract_replace(const ingest::StructuredText& st,
                                  const gateway::Gateway& gw,
                                  gateway::ClockMode clock) {
    const double ocr = st.extract_seconds;
    if (st.plain_text.empty())
        return fatal_outcome(Paradigm::Replace, ocr, 0, ErrorKind::MalformedInput,
                             "replace extraction requires non-empty text");

    const PlaceholderMap map = build_placeholder_map(st.plain_text);
    if (map.entries.empty())
        return fatal_outcome(Paradigm::Replace, ocr, 0, ErrorKind::NoIdsFound,
                             "no ID-shaped spans to anchor on");

    gateway::CompletionRequest req;
    req.system_prompt =
        gateway::task_marker(gateway::TaskKind::ReplaceResolve) +
        "\nThe document text has ID numbers replaced by placeholder tokens "
        "like ⟦ID_3⟧. For every placeholder, answer exactly one "
        "line: the token, one space, the person name it belongs to.";
    req.user_prompt = substitute_placeholders(st.plain_text, map);
    req.max_output_tokens = kReplaceMaxTokens;

    const auto resp = gw.complete(req);
    if (!resp)
        return fatal_outcome(Paradigm::Replace, ocr, 0, ErrorKind::GatewayFailure,
                             resp.error().message);

    // token -> resolved name; a batched response must answer every token.
    std::vector<std::string> names(map.entries.size());
    std::vector<bool> seen(map.entries.size(), false);
    std::size_t resolved = 0;
    for (const auto& line : split_lines(resp->text)) {
        const std::string_view body = trim(line);
        if (body.empty()) continue;
        for (std::size_t i = 0; i < map.entries.size(); ++i) {
            const std::string& token = map.entries[i].token;
            if (!starts_with(body, token)) continue;
            if (!seen[i]) {
                seen[i] = true;
                names[i] = std::string(trim(body.substr(token.size())));
                ++resolved;
            }
            break;
        }
    }
    if (resolved != map.entries.size())
        return fatal_outcome(Paradigm::Replace, ocr, pick_latency(*resp, clock),
                             ErrorKind::ArityMismatch,
                             "response resolved " + std::to_string(resolved) +
                                 " of " + std::to_string(map.entries.size()) +
                                 " placeholders");

    ExtractionOutcome out;
    out.paradigm = Paradigm::Replace;
    for (std::size_t i = 0; i < map.entries.size(); ++i)
        out.pairs.pairs.push_back({names[i], map.entries[i].id_number});
    out.ocr_seconds = ocr;
    out.llm_seconds = pick_latency(*resp, clock);
    out.total_seconds = out.ocr_seconds + out.llm_seconds;
    return out;
}

ExtractionOutcome extract_table(const ingest::StructuredText& st,
                                const gateway::Gateway& gw,
                                gateway::ClockMode clock) {
    const double ocr = st.extract_seconds;
    if (!st.table || st.fidelity != ingest::Fidelity::Preserved)
        return fatal_outcome(Paradigm::Table, ocr, 0,
                             ErrorKind::CoordinateUnresolvable,
                             "no spatial structure survived text extraction");
    const ingest::TableModel& table = *st.table;

    const auto join_cells = [](const std::vector<std::string>& cells) {
        std::string out;
        for (const auto& cell : cells) {
            if (!out.empty()) out += " | ";
            out += cell;
        }
        return out;
    };

    gateway::CompletionRequest req;
    req.system_prompt =
        gateway::task_marker(gateway::TaskKind::TableLocate) +
        "\nGiven a table's header and one sample row, answer four integers "
        "separated by spaces: name column, id column, first data row, last "
        "data row (0-based, inclusive).";
    req.user_prompt = "columns: " + join_cells(table.header) +
                      "\nsample_row: " + join_cells(table.rows.front()) +
                      "\nrow_count: " + std::to_string(table.rows.size());
    req.max_output_tokens = kLocateMaxTokens;

    const auto resp = gw.complete(req);
    if (!resp)
        return fatal_outcome(Paradigm::Table, ocr, 0, ErrorKind::GatewayFailure,
                             resp.error().message);

    CellCoordinateSpec spec;
    {
        long long v[4];
        int n = 0;
        const char* p = resp->text.c_str();
        char* end = nullptr;
        while (n < 4) {
            const long long value = std::strtoll(p, &end, 10);
            if (end == p) break;
            v[n++] = value;
            p = end;
        }
        if (n != 4)
            return fatal_outcome(Paradigm::Table, ocr,
                                 pick_latency(*resp, clock),
                                 ErrorKind::UnparseableOutput,
                                 "locate response is not four integers: " +
                                     resp->text);
        spec = {v[0], v[1], v[2], v[3]};
    }

    const auto cols = static_cast<std::int64_t>(table.n_cols);
    const auto rows = static_cast<std::int64_t>(table.rows.size());
    if (spec.name_col < 0 || spec.name_col >= cols || spec.id_col < 0 ||
        spec.id_col >= cols || spec.name_col == spec.id_col ||
        spec.row_start < 0 || spec.row_start > spec.row_end ||
        spec.row_end >= rows)
        return fatal_outcome(Paradigm::Table, ocr, pick_latency(*resp, clock),
                             ErrorKind::SpecOutOfBounds,
                             "coordinate spec does not fit the table");

    // Deterministic cell reader; no further model involvement. Cells whose
    // ID fails the checksum are OCR damage, not data: a single substituted
    // digit always breaks MOD 11-2, so dropping the row trades a wrong pair
    // for a recall miss instead of reporting garbage.
    ExtractionOutcome out;
    out.paradigm = Paradigm::Table;
    for (std::int64_t r = spec.row_start; r <= spec.row_end; ++r) {
        const auto& row = table.rows[static_cast<std::size_t>(r)];
        std::string id(trim(row[static_cast<std::size_t>(spec.id_col)]));
        if (!identity::validate_id(id)) continue;
        out.pairs.pairs.push_back(
            {std::string(trim(row[static_cast<std::size_t>(spec.name_col)])),
             std::move(id)});
    }
    out.ocr_seconds = ocr;
    out.llm_seconds = pick_latency(*resp, clock);
    out.total_seconds = out.ocr_seconds + out.llm_seconds;
    return out;
}

ExtractionOutcome run_paradigm(Paradigm paradigm,
                               const ingest::StructuredText& st,
                               const gateway::Gateway& gw,
                               gateway::ClockMode clock) {
    switch (paradigm) {
        case Paradigm::Direct: return extract_direct(st, gw, clock);
        case Paradigm::Replace: return extract_replace(st, gw, clock);
        case Paradigm::Table: return extract_table(st, gw, clock);
    }
    return fatal_outcome(paradigm, 0, 0, ErrorKind::ConfigInvalid,
                         "unknown paradigm");
}

}  // namespace docpipe::extract
