#include "glink/cache.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace glink {

const char* kConventionVersion = "glink-conventions-1";

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

ResultCache::ResultCache() {
    const char* env = std::getenv("GLINK_CACHE");
    if (env && *env) dir_ = env;
}

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) {}

std::string ResultCache::key_of(const std::string& payload) {
    std::string salted = std::string(kConventionVersion) + "\n" + payload;
    std::uint64_t h1 = fnv1a(salted, 14695981039346656037ull);
    std::uint64_t h2 = fnv1a(salted, 88172645463325252ull);
    std::ostringstream os;
    os << std::hex << h1 << h2;
    return os.str();
}

std::optional<std::string> ResultCache::get(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::filesystem::path p = std::filesystem::path(dir_) / (key + ".txt");
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void ResultCache::put(const std::string& key, const std::string& value) const {
    if (!enabled()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) return;
    std::filesystem::path p = std::filesystem::path(dir_) / (key + ".txt");
    std::ofstream out(p, std::ios::binary);
    out << value;
}

}  // namespace glink
