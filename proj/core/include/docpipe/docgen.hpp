#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "docpipe/format.hpp"
#include "docpipe/identity.hpp"
#include "docpipe/result.hpp"

namespace docpipe::docgen {

struct CorpusSpec {
    std::uint64_t seed = 42;
    std::size_t docs_per_format = 100;
    std::size_t entries_min = 10;
    std::size_t entries_max = 30;
    std::vector<DocFormat> formats = {DocFormat::Docx, DocFormat::Xlsx,
                                      DocFormat::Pdf, DocFormat::Transcript};

    Result<void> validate() const;
};

struct DocumentRecord {
    std::string doc_id;
    DocFormat format = DocFormat::Unknown;
    std::filesystem::path payload_path;
    identity::PairSet truth;
    std::map<std::string, std::string> context_fields;
    int template_id = 0;
    std::uint64_t seed = 0;
};

struct Manifest {
    std::uint64_t corpus_seed = 0;
    std::vector<DocumentRecord> documents;

    std::size_t total_pairs() const;
};

inline constexpr int kTemplateCount = 3;
inline constexpr const char* kNameHeader = "姓名";
inline constexpr const char* kIdHeader = "身份证号";

/// n pairs with lexicon-sampled names and checksum-valid IDs; id_numbers
/// are distinct within the set (collisions resampled). Pure in (seed, n).
identity::PairSet generate_identities(std::uint64_t seed, std::size_t n);

struct RenderedDocument {
    std::string bytes;
    std::map<std::string, std::string> context_fields;
};

Result<RenderedDocument> render_document(const identity::PairSet& truth,
                                         DocFormat format, int template_id,
                                         std::uint64_t seed);

/// Renders every document under out_dir as <format>/<doc_id>.<ext> and
/// writes out_dir/manifest.json. Byte-identical for equal CorpusSpec values.
Result<Manifest> generate_corpus(const CorpusSpec& spec,
                                 const std::filesystem::path& out_dir);

Result<void> write_manifest(const Manifest& manifest,
                            const std::filesystem::path& path);

/// Loads a manifest; payload paths are resolved relative to its directory.
Result<Manifest> load_manifest(const std::filesystem::path& path);

}  // namespace docpipe::docgen
