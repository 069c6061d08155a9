#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "docpipe/result.hpp"

namespace docpipe::zipio {

struct Entry {
    std::string name;
    std::string data;
};

/// Serializes entries as a zip archive with stored (uncompressed) members
/// and a constant timestamp, so identical inputs give identical bytes.
std::string write_archive(const std::vector<Entry>& entries);

/// Central-directory view over an in-memory archive. Does not own the
/// bytes; the buffer passed to open() must outlive the Archive.
class Archive {
  public:
    static Result<Archive> open(std::string_view bytes);

    const std::vector<std::string>& names() const { return names_; }
    bool contains(std::string_view name) const;

    /// Entry payload. Fails on unknown names and on compressed members;
    /// only stored entries are supported.
    Result<std::string> read(std::string_view name) const;

  private:
    struct Record {
        std::string name;
        std::uint16_t method;
        std::uint32_t compressed_size;
        std::uint32_t local_offset;
    };

    std::string_view bytes_;
    std::vector<Record> records_;
    std::vector<std::string> names_;
};

}  // namespace docpipe::zipio
