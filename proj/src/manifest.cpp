#include "manifuse/manifest.hpp"

#include <cstdio>
#include <fstream>

#include "manifuse/errors.hpp"
#include "manifuse/io.hpp"

namespace manifuse {

ExperimentManifest::ExperimentManifest(std::string command) {
    entries_.emplace_back("tool", kToolVersion);
    entries_.emplace_back("command", std::move(command));
}

void ExperimentManifest::set(const std::string& key, const std::string& value) {
    entries_.emplace_back(key, value);
}

void ExperimentManifest::set(const std::string& key, double value) {
    entries_.emplace_back(key, io::format_double(value));
}

void ExperimentManifest::set(const std::string& key, long long value) {
    entries_.emplace_back(key, std::to_string(value));
}

void ExperimentManifest::record_digest(const std::filesystem::path& file) {
    entries_.emplace_back("digest." + file.filename().string(),
                          "fnv1a:" + io::file_digest(file));
}

void ExperimentManifest::record_timing(const std::string& stage, double milliseconds) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", milliseconds);
    entries_.emplace_back("time_ms." + stage, buf);
}

void ExperimentManifest::write(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("cannot open '" + path.string() + "' for writing");
    for (const auto& [key, value] : entries_) f << key << '=' << value << '\n';
    if (!f) throw io_error("write failed for '" + path.string() + "'");
}

} // namespace manifuse
