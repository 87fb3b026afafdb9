// Small file helpers shared by the CLI and tests.
#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace tacap {

// Whole-file read; nullopt when the file cannot be opened.
std::optional<std::string> read_text_file(const std::string& path);

// Writes via a temporary file in the same directory plus an atomic rename,
// so readers never observe a half-written file. On failure returns false
// and fills *err when given.
bool write_text_file_atomic(const std::string& path, std::string_view content,
                            std::string* err = nullptr);

} // namespace tacap
