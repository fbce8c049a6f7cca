#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

namespace electra {

/// Writes through a temporary file in the same directory, then renames it
/// over `path`. Parent directories are created.
void atomic_write(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);

/// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace electra
