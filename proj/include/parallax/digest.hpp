#pragma once

#include <cstdint>
#include <string>

#include "parallax/geometry.hpp"

namespace parallax {

/// FNV-1a over raw bytes.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64(const std::string& text);

/// Digest of dimension, count, and coordinate bytes.
std::uint64_t digest_point_cloud(const point_cloud& cloud);

/// Digest of a file's bytes; input error when unreadable.
std::uint64_t digest_file(const std::string& path);

} // namespace parallax
