#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

namespace qp {

// Writes via a sibling temp file and renames, so readers never observe a
// partially written artifact.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw std::runtime_error("rename failed for " + path.string() + ": " + ec.message());
}

}  // namespace qp
