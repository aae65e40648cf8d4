#pragma once

#include <optional>
#include <string>

namespace glink {

/// Version string baked into every cache key; bump on any convention change
/// (grading shifts, cube signs, state-model weights).
extern const char* kConventionVersion;

/// Content-addressed result cache under the directory named by GLINK_CACHE.
/// Disabled (all misses, no writes) when the variable is unset.
class ResultCache {
public:
    ResultCache();  // reads GLINK_CACHE
    explicit ResultCache(std::string dir);

    bool enabled() const { return !dir_.empty(); }
    /// Stable 128-bit hex key of the payload plus convention version.
    static std::string key_of(const std::string& payload);
    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& value) const;

private:
    std::string dir_;
};

}  // namespace glink
