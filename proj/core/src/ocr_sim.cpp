#include "docpipe/ocr_sim.hpp"

#include <algorithm>
#include <numeric>

#include "docpipe/rng.hpp"
#include "docpipe/textutil.hpp"

namespace docpipe::ocrsim {

namespace {

// Bounded-displacement shuffle: each fragment may drift up to kWindow
// positions, so local adjacency mostly survives while global order is
// visibly scrambled. A full permutation would destroy nearly all name/ID
// adjacency and leave no degraded-but-usable direct-extraction lane.
constexpr std::uint64_t kShuffleWindow = 2;

struct ConfusablePair {
    char32_t from;
    char32_t to;
};

// Digit set per the OCR confusion model; CJK pairs picked from the name
// lexicon. 姓/名/身/份/证/号 are intentionally not present.
constexpr ConfusablePair kConfusables[] = {
    {U'0', U'8'}, {U'8', U'0'}, {U'1', U'7'}, {U'7', U'1'},
    {U'5', U'6'}, {U'6', U'5'}, {U'3', U'8'},
    {U'王', U'玉'}, {U'玉', U'王'}, {U'天', U'夫'}, {U'夫', U'天'},
    {U'田', U'由'}, {U'由', U'田'}, {U'力', U'刀'}, {U'刀', U'力'},
    {U'云', U'去'}, {U'去', U'云'}, {U'中', U'申'}, {U'申', U'中'},
    {U'子', U'了'}, {U'了', U'子'}, {U'白', U'百'}, {U'百', U'白'},
    {U'万', U'方'}, {U'方', U'万'}, {U'明', U'朋'}, {U'朋', U'明'},
    {U'青', U'清'}, {U'清', U'青'}, {U'月', U'目'}, {U'目', U'月'},
    {U'石', U'右'}, {U'右', U'石'}, {U'之', U'乏'},
};

}  // namespace

OcrProfile preserving_profile(double char_noise_rate,
                              std::uint64_t noise_seed) {
    return {OcrMode::LayoutPreserving, char_noise_rate, noise_seed,
            kPreservingOcrSeconds};
}

OcrProfile destroying_profile(double char_noise_rate,
                              std::uint64_t noise_seed) {
    return {OcrMode::LayoutDestroying, char_noise_rate, noise_seed,
            kDestroyingOcrSeconds};
}

std::optional<char32_t> confusable(char32_t cp) {
    for (const auto& pair : kConfusables)
        if (pair.from == cp) return pair.to;
    return std::nullopt;
}

std::string apply_noise(std::string_view text, double rate,
                        std::mt19937_64& rng) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t start = pos;
        const char32_t cp = decode_utf8(text, pos);
        const bool corrupt = chance(rng, rate);
        if (cp == kInvalidCodepoint) {
            out += text.substr(start, pos - start);
            continue;
        }
        if (corrupt) {
            if (const auto swap = confusable(cp)) {
                append_utf8(out, *swap);
                continue;
            }
        }
        out += text.substr(start, pos - start);
    }
    return out;
}

Result<ingest::StructuredText> transcribe(const docgen::DocumentRecord& doc,
                                          const OcrProfile& profile) {
    if (doc.truth.pairs.empty())
        return make_error(ErrorKind::NotRasterizable,
                          "document has no tabular rendering: " + doc.doc_id);
    auto rendered = docgen::render_document(doc.truth, DocFormat::Transcript,
                                            doc.template_id, doc.seed);
    if (!rendered)
        return make_error(ErrorKind::NotRasterizable, rendered.error().message);

    std::mt19937_64 rng(mix_seed(profile.noise_seed, fnv1a(doc.doc_id)));
    const auto lines = split_lines(rendered->bytes);

    ingest::StructuredText st;
    st.source_format = doc.format;
    st.extract_seconds = profile.simulated_ocr_seconds;

    if (profile.mode == OcrMode::LayoutPreserving) {
        std::vector<std::string> noisy;
        noisy.reserve(lines.size());
        for (const auto& line : lines)
            noisy.push_back(apply_noise(line, profile.char_noise_rate, rng));

        std::string text;
        for (const auto& line : noisy) {
            text += line;
            text.push_back('\n');
        }
        st.plain_text = std::move(text);

        auto table = ingest::grid_from_aligned_lines(noisy);
        if (table && table->n_cols >= 2 && !table->rows.empty()) {
            st.table = std::move(table);
            st.fidelity = ingest::Fidelity::Preserved;
        } else {
            st.fidelity = ingest::Fidelity::SymbolicOnly;
        }
        return st;
    }

    // LayoutDestroying: cells become free-floating fragments.
    std::vector<std::string> fragments;
    for (const auto& line : lines)
        for (auto& cell : split_columns(line))
            fragments.push_back(apply_noise(cell, profile.char_noise_rate, rng));

    std::vector<std::uint64_t> keys(fragments.size());
    for (std::size_t i = 0; i < keys.size(); ++i)
        keys[i] = i + bounded(rng, kShuffleWindow + 1);
    std::vector<std::size_t> order(fragments.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&keys](std::size_t a, std::size_t b) {
                         return keys[a] < keys[b];
                     });

    std::string text;
    for (std::size_t i : order) {
        text += fragments[i];
        text.push_back('\n');
    }
    st.plain_text = std::move(text);
    st.fidelity = ingest::Fidelity::Lost;
    return st;
}

}  // namespace docpipe::ocrsim
