#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "docpipe/docgen.hpp"
#include "docpipe/ingest.hpp"
#include "docpipe/result.hpp"

namespace docpipe::ocrsim {

/// LayoutPreserving keeps column alignment (PaddleOCR-like); the grid
/// survives and the table paradigm stays viable. LayoutDestroying emits
/// shuffled cell fragments one per line (EasyOCR-like); the grid is gone
/// for good.
enum class OcrMode { LayoutPreserving, LayoutDestroying };

struct OcrProfile {
    OcrMode mode = OcrMode::LayoutPreserving;
    double char_noise_rate = 0.0;
    std::uint64_t noise_seed = 0;
    double simulated_ocr_seconds = 0.0;
};

/// Calibration defaults; see the profile factories. Noise rates are fitted
/// to aggregate accuracy regimes, not measured engine statistics.
inline constexpr double kPreservingNoiseRate = 0.0015;
inline constexpr double kDestroyingNoiseRate = 0.02;
inline constexpr double kPreservingOcrSeconds = 0.3;
inline constexpr double kDestroyingOcrSeconds = 1.2;
inline constexpr std::uint64_t kDefaultNoiseSeed = 0;

OcrProfile preserving_profile(double char_noise_rate = kPreservingNoiseRate,
                              std::uint64_t noise_seed = kDefaultNoiseSeed);
OcrProfile destroying_profile(double char_noise_rate = kDestroyingNoiseRate,
                              std::uint64_t noise_seed = kDefaultNoiseSeed);

/// The glyph this codepoint may be misread as, if it has a confusable.
/// Digits follow the 0<->8, 1<->7, 5<->6, 3->8 OCR confusion set; a small
/// fixed CJK map covers name characters. Header label characters are
/// deliberately absent so column headers survive any noise rate.
std::optional<char32_t> confusable(char32_t cp);

/// Independently replaces each codepoint with its confusable with
/// probability `rate`. Exactly one RNG draw is consumed per codepoint, so
/// corruption positions are stable under map changes.
std::string apply_noise(std::string_view text, double rate,
                        std::mt19937_64& rng);

/// Simulated OCR over the document's transcript rendering. Deterministic
/// under (profile.noise_seed, doc.doc_id). extract_seconds is the profile's
/// simulated duration, standing in for recognition wall time.
Result<ingest::StructuredText> transcribe(const docgen::DocumentRecord& doc,
                                          const OcrProfile& profile);

/// Client for a real OCR service: POSTs image bytes, expects JSON
/// `{"lines": [{"text": ..., "bbox": [x0,y0,x1,y1]?}]}`. Responses with
/// boxes get the same grid reconstruction as PDF text; box-free responses
/// are fidelity Lost. Implemented over HTTP in remote.cpp.
Result<ingest::StructuredText> remote_ocr(const std::string& endpoint,
                                          std::string_view image_bytes,
                                          double timeout_seconds);

}  // namespace docpipe::ocrsim
