#include "parallax/digest.hpp"

#include <fstream>
#include <vector>

#include "parallax/errors.hpp"

namespace parallax {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t fnv1a64(const std::string& text) { return fnv1a64(text.data(), text.size()); }

std::uint64_t digest_point_cloud(const point_cloud& cloud) {
    std::uint64_t h = fnv1a64(&cloud, 0);
    const std::uint64_t dims[2] = {cloud.dim(), cloud.size()};
    h ^= fnv1a64(dims, sizeof dims);
    return h * 1099511628211ULL ^ fnv1a64(cloud.coords().data(), cloud.coords().size() * sizeof(double));
}

std::uint64_t digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_input("cannot read " + path);
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return fnv1a64(bytes.data(), bytes.size());
}

} // namespace parallax
