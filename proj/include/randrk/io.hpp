#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace randrk::io {

// 17 significant digits; infinities as `inf` / `-inf`, NaN as `nan`.
std::string format_double(double x);

// Writes to a sibling temp file and renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace randrk::io
