#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gkl {

struct ArchiveEntry {
    std::string name;  ///< path inside the archive, '/'-separated
    std::string data;
};

/// Reads a zip archive held in memory (stored and deflate entries; no zip64,
/// no encryption). Directory entries are skipped. CRCs are verified.
/// Throws CorruptDataset on malformed input.
[[nodiscard]] std::vector<ArchiveEntry> read_zip(std::string_view bytes);

/// Writes a zip archive with deflate-compressed entries.
[[nodiscard]] std::string write_zip(const std::vector<ArchiveEntry>& entries);

/// Extracts every file entry of `bytes` into `dir`, dropping directory
/// components from the entry names. Returns the written file names.
std::vector<std::string> extract_zip_flat(std::string_view bytes, const std::filesystem::path& dir);

}  // namespace gkl
