#include "docpipe/zipio.hpp"

#include <zlib.h>

#include <cstdint>
#include <cstring>

namespace docpipe::zipio {

namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEndSig = 0x06054b50;

// Fixed DOS timestamp (2024-01-01 00:00:00) keeps archives reproducible.
constexpr std::uint16_t kDosTime = 0;
constexpr std::uint16_t kDosDate = ((2024 - 1980) << 9) | (1 << 5) | 1;

void put16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put32(std::string& out, std::uint32_t v) {
    put16(out, static_cast<std::uint16_t>(v & 0xFFFF));
    put16(out, static_cast<std::uint16_t>(v >> 16));
}

std::uint16_t get16(std::string_view bytes, std::size_t pos) {
    return static_cast<std::uint8_t>(bytes[pos]) |
           (static_cast<std::uint16_t>(static_cast<std::uint8_t>(bytes[pos + 1])) << 8);
}

std::uint32_t get32(std::string_view bytes, std::size_t pos) {
    return get16(bytes, pos) | (static_cast<std::uint32_t>(get16(bytes, pos + 2)) << 16);
}

std::uint32_t crc_of(const std::string& data) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, reinterpret_cast<const Bytef*>(data.data()),
                static_cast<uInt>(data.size())));
}

}  // namespace

std::string write_archive(const std::vector<Entry>& entries) {
    std::string out;
    struct Placed {
        std::uint32_t offset;
        std::uint32_t crc;
    };
    std::vector<Placed> placed;
    placed.reserve(entries.size());

    for (const auto& entry : entries) {
        const std::uint32_t crc = crc_of(entry.data);
        placed.push_back({static_cast<std::uint32_t>(out.size()), crc});
        put32(out, kLocalSig);
        put16(out, 20);  // version needed
        put16(out, 0);   // flags
        put16(out, 0);   // method: stored
        put16(out, kDosTime);
        put16(out, kDosDate);
        put32(out, crc);
        put32(out, static_cast<std::uint32_t>(entry.data.size()));
        put32(out, static_cast<std::uint32_t>(entry.data.size()));
        put16(out, static_cast<std::uint16_t>(entry.name.size()));
        put16(out, 0);  // extra length
        out += entry.name;
        out += entry.data;
    }

    const std::uint32_t central_start = static_cast<std::uint32_t>(out.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& entry = entries[i];
        put32(out, kCentralSig);
        put16(out, 20);  // version made by
        put16(out, 20);  // version needed
        put16(out, 0);
        put16(out, 0);
        put16(out, kDosTime);
        put16(out, kDosDate);
        put32(out, placed[i].crc);
        put32(out, static_cast<std::uint32_t>(entry.data.size()));
        put32(out, static_cast<std::uint32_t>(entry.data.size()));
        put16(out, static_cast<std::uint16_t>(entry.name.size()));
        put16(out, 0);  // extra
        put16(out, 0);  // comment
        put16(out, 0);  // disk number
        put16(out, 0);  // internal attrs
        put32(out, 0);  // external attrs
        put32(out, placed[i].offset);
        out += entry.name;
    }
    const std::uint32_t central_size =
        static_cast<std::uint32_t>(out.size()) - central_start;

    put32(out, kEndSig);
    put16(out, 0);
    put16(out, 0);
    put16(out, static_cast<std::uint16_t>(entries.size()));
    put16(out, static_cast<std::uint16_t>(entries.size()));
    put32(out, central_size);
    put32(out, central_start);
    put16(out, 0);  // comment length
    return out;
}

Result<Archive> Archive::open(std::string_view bytes) {
    if (bytes.size() < 22)
        return make_error(ErrorKind::MalformedInput, "zip: too short");

    // End-of-central-directory scan, from the back.
    std::size_t eocd = std::string_view::npos;
    const std::size_t lowest =
        bytes.size() > 22 + 65535 ? bytes.size() - 22 - 65535 : 0;
    for (std::size_t i = bytes.size() - 22 + 1; i-- > lowest;) {
        if (get32(bytes, i) == kEndSig) {
            eocd = i;
            break;
        }
    }
    if (eocd == std::string_view::npos)
        return make_error(ErrorKind::MalformedInput,
                          "zip: end-of-central-directory not found");

    const std::uint16_t count = get16(bytes, eocd + 10);
    const std::uint32_t central_size = get32(bytes, eocd + 12);
    const std::uint32_t central_start = get32(bytes, eocd + 16);
    if (central_start + central_size > bytes.size())
        return make_error(ErrorKind::MalformedInput,
                          "zip: central directory out of range");

    Archive archive;
    archive.bytes_ = bytes;
    std::size_t pos = central_start;
    for (std::uint16_t i = 0; i < count; ++i) {
        if (pos + 46 > bytes.size() || get32(bytes, pos) != kCentralSig)
            return make_error(ErrorKind::MalformedInput,
                              "zip: bad central directory entry");
        Record rec;
        rec.method = get16(bytes, pos + 10);
        rec.compressed_size = get32(bytes, pos + 20);
        const std::uint16_t name_len = get16(bytes, pos + 28);
        const std::uint16_t extra_len = get16(bytes, pos + 30);
        const std::uint16_t comment_len = get16(bytes, pos + 32);
        rec.local_offset = get32(bytes, pos + 42);
        if (pos + 46 + name_len > bytes.size())
            return make_error(ErrorKind::MalformedInput, "zip: truncated name");
        rec.name = std::string(bytes.substr(pos + 46, name_len));
        archive.names_.push_back(rec.name);
        archive.records_.push_back(std::move(rec));
        pos += 46 + name_len + extra_len + comment_len;
    }
    return archive;
}

bool Archive::contains(std::string_view name) const {
    for (const auto& rec : records_)
        if (rec.name == name) return true;
    return false;
}

Result<std::string> Archive::read(std::string_view name) const {
    for (const auto& rec : records_) {
        if (rec.name != name) continue;
        if (rec.method != 0)
            return make_error(ErrorKind::MalformedInput,
                              "zip: compressed entries not supported: " + rec.name);
        const std::size_t lh = rec.local_offset;
        if (lh + 30 > bytes_.size() || get32(bytes_, lh) != kLocalSig)
            return make_error(ErrorKind::MalformedInput, "zip: bad local header");
        const std::uint16_t name_len = get16(bytes_, lh + 26);
        const std::uint16_t extra_len = get16(bytes_, lh + 28);
        const std::size_t data_start = lh + 30 + name_len + extra_len;
        if (data_start + rec.compressed_size > bytes_.size())
            return make_error(ErrorKind::MalformedInput, "zip: truncated data");
        return std::string(bytes_.substr(data_start, rec.compressed_size));
    }
    return make_error(ErrorKind::MalformedInput,
                      "zip: no such entry: " + std::string(name));
}

}  // namespace docpipe::zipio
