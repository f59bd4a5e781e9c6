#include "seqper/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace seqper {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string CacheKey::canonical() const {
    return "kind=" + kind + ";params=" + params + ";window=" + std::to_string(window_lo) + ":" +
           std::to_string(window_hi) + ";precision=" + std::to_string(precision) + ";v=" +
           DiskCache::schema_version;
}

u64 fnv1a64(const std::string& data) {
    u64 h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

DiskCache::DiskCache(std::string directory) : dir_(std::move(directory)) {
    if (dir_.empty()) return;
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) {
        std::cerr << "warning: cache directory " << dir_ << " unusable (" << ec.message()
                  << "); caching disabled\n";
        return;
    }
    // probe writability
    fs::path probe = fs::path(dir_) / (".probe-" + std::to_string(::getpid()));
    std::ofstream out(probe);
    if (!out) {
        std::cerr << "warning: cache directory " << dir_ << " not writable; caching disabled\n";
        return;
    }
    out.close();
    fs::remove(probe, ec);
    enabled_ = true;
}

namespace {

fs::path entry_path(const std::string& dir, const CacheKey& key) {
    std::string canon = key.canonical();
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(canon)));
    return fs::path(dir) / (key.kind + "-" + hex + ".json");
}

} // namespace

std::optional<std::string> DiskCache::load(const CacheKey& key) const {
    if (!enabled_) return std::nullopt;
    fs::path path = entry_path(dir_, key);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    ordered_json j = ordered_json::parse(ss.str(), nullptr, false);
    if (j.is_discarded() || !j.contains("key") || !j.contains("payload") ||
        j["key"] != key.canonical()) {
        std::cerr << "warning: cache entry " << path.string()
                  << " is stale or corrupt; recomputing\n";
        return std::nullopt;
    }
    return j["payload"].get<std::string>();
}

void DiskCache::store(const CacheKey& key, const std::string& payload) const {
    if (!enabled_) return;
    ordered_json j;
    j["key"] = key.canonical();
    j["payload"] = payload;
    fs::path path = entry_path(dir_, key);
    fs::path tmp = path;
    tmp += ".tmp-" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            std::cerr << "warning: cannot write cache entry " << path.string() << "\n";
            return;
        }
        out << j.dump(2) << "\n";
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        std::cerr << "warning: cache rename failed: " << ec.message() << "\n";
        fs::remove(tmp, ec);
    }
}

} // namespace seqper
