#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "docpipe/result.hpp"

namespace docpipe {

inline Result<std::string> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return make_error(ErrorKind::IoFailure,
                          "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        return make_error(ErrorKind::IoFailure, "read failed: " + path.string());
    return buf.str();
}

inline Result<void> write_file(const std::filesystem::path& path,
                               std::string_view bytes) {
    std::error_code ec;
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        return make_error(ErrorKind::IoFailure,
                          "cannot create " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        return make_error(ErrorKind::IoFailure, "write failed: " + path.string());
    return {};
}

}  // namespace docpipe
