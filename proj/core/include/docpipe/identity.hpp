#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace docpipe::identity {

/// One (name, 18-character ID) record; the atomic scoring unit.
struct IdentityPair {
    std::string name;
    std::string id_number;

    friend bool operator==(const IdentityPair&, const IdentityPair&) = default;
};

struct PairSet {
    std::vector<IdentityPair> pairs;
    std::string source_doc;

    std::size_t size() const { return pairs.size(); }
    bool empty() const { return pairs.empty(); }
};

struct MatchResult {
    std::size_t true_positives = 0;
    std::size_t extracted_total = 0;
    std::size_t truth_total = 0;
};

struct AccuracyMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// True iff `candidate` is 18 characters, the first 17 are decimal digits,
/// and the final character is the ISO 7064 MOD 11-2 check character over
/// the first 17 (weights 7 9 10 5 8 4 2 1 6 3 7 9 10 5 8 4 2; check value
/// (12 - sum mod 11) mod 11 rendered as 0-9 or X for ten).
bool validate_id(std::string_view candidate);

/// Check character for a 17-digit body, or nullopt if the body is not
/// exactly 17 decimal digits.
std::optional<char> expected_check_char(std::string_view body17);

/// Comparison key used for exact matching: surrounding whitespace stripped.
/// All text this pipeline produces is already NFC (CJK ideographs and ASCII
/// have no decomposed forms), so no composition pass is applied.
std::string match_key_part(std::string_view text);

/// Greedy exact matching: each truth pair is consumed at most once, so
/// duplicated extractions cannot inflate the true-positive count.
MatchResult match_pairs(const PairSet& extracted, const PairSet& truth);

AccuracyMetrics compute_metrics(const MatchResult& m);

/// A text span shaped like an ID: 17 digits then a digit or X, with no
/// ASCII-alphanumeric neighbor on either side. Checksum validity is not
/// required — corrupted IDs must still be found and scored wrong.
struct IdCandidate {
    std::string text;
    std::size_t offset = 0;
};

/// All candidates in order of appearance (offsets strictly increasing).
std::vector<IdCandidate> find_id_candidates(std::string_view text);

}  // namespace docpipe::identity
