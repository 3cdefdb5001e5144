#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace manifuse {

inline constexpr const char* kToolVersion = "manifuse 0.1.0";

// Plain-text experiment record: configuration snapshot, input digests and
// per-stage timings, one key=value per line. Data outputs (not the
// manifest's timing lines) are byte-reproducible from the recorded config.
class ExperimentManifest {
public:
    explicit ExperimentManifest(std::string command);

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, long long value);
    void record_digest(const std::filesystem::path& file);
    void record_timing(const std::string& stage, double milliseconds);

    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

} // namespace manifuse
