#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace microepi::io {

// Doubles are printed with 17 significant digits so parsing the file
// recovers the exact value; the formatting is locale independent.
std::string format_double(double value);

// Writes header + rows with a trailing newline each. Creates parent
// directories as needed; throws std::runtime_error on I/O failure.
void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::string>& rows);

void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace microepi::io
