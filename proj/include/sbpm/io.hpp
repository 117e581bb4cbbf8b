#pragma once

#include <filesystem>
#include <string>

namespace sbpm {

/// Writes via a temp file in the target directory plus rename, so readers
/// never observe a partial file.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace sbpm
