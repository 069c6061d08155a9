#include "docpipe/identity.hpp"

#include <map>
#include <utility>

#include "docpipe/textutil.hpp"

namespace docpipe::identity {

namespace {

constexpr int kWeights[17] = {7, 9, 10, 5, 8, 4, 2, 1, 6, 3, 7, 9, 10, 5, 8, 4, 2};
constexpr char kCheckChars[12] = "0123456789X";

}  // namespace

std::optional<char> expected_check_char(std::string_view body17) {
    if (body17.size() != 17) return std::nullopt;
    int sum = 0;
    for (std::size_t i = 0; i < 17; ++i) {
        const char c = body17[i];
        if (c < '0' || c > '9') return std::nullopt;
        sum += (c - '0') * kWeights[i];
    }
    return kCheckChars[(12 - sum % 11) % 11];
}

bool validate_id(std::string_view candidate) {
    if (candidate.size() != 18) return false;
    const auto check = expected_check_char(candidate.substr(0, 17));
    return check && *check == candidate[17];
}

std::string match_key_part(std::string_view text) {
    return std::string(trim(text));
}

MatchResult match_pairs(const PairSet& extracted, const PairSet& truth) {
    MatchResult result;
    result.extracted_total = extracted.size();
    result.truth_total = truth.size();

    // Multiset of truth keys; each entry consumable once.
    std::map<std::pair<std::string, std::string>, std::size_t> remaining;
    for (const auto& pair : truth.pairs) {
        ++remaining[{match_key_part(pair.name), match_key_part(pair.id_number)}];
    }
    for (const auto& pair : extracted.pairs) {
        const auto key = std::make_pair(match_key_part(pair.name),
                                        match_key_part(pair.id_number));
        auto it = remaining.find(key);
        if (it != remaining.end() && it->second > 0) {
            --it->second;
            ++result.true_positives;
        }
    }
    return result;
}

std::vector<IdCandidate> find_id_candidates(std::string_view text) {
    const auto is_alnum = [](char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
               (c >= 'A' && c <= 'Z');
    };

    std::vector<IdCandidate> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_alnum(text[i])) {
            ++i;
            continue;
        }
        std::size_t end = i;
        while (end < text.size() && is_alnum(text[end])) ++end;

        // The whole alphanumeric run must be the candidate, so neighbors
        // are non-alphanumeric by construction.
        if (end - i == 18) {
            bool ok = text[end - 1] == 'X' || is_ascii_digit(
                                                  static_cast<unsigned char>(
                                                      text[end - 1]));
            for (std::size_t k = i; ok && k + 1 < end; ++k)
                ok = is_ascii_digit(static_cast<unsigned char>(text[k]));
            if (ok) out.push_back({std::string(text.substr(i, 18)), i});
        }
        i = end;
    }
    return out;
}

AccuracyMetrics compute_metrics(const MatchResult& m) {
    AccuracyMetrics metrics;
    const double tp = static_cast<double>(m.true_positives);
    if (m.extracted_total > 0)
        metrics.precision = tp / static_cast<double>(m.extracted_total);
    if (m.truth_total > 0)
        metrics.recall = tp / static_cast<double>(m.truth_total);
    const double pr = metrics.precision + metrics.recall;
    metrics.f1 = pr > 0.0 ? 2.0 * metrics.precision * metrics.recall / pr : 0.0;
    return metrics;
}

}  // namespace docpipe::identity
