#include "apfree/record.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace apfree {

double round_for_record(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

Json json_real(double v) { return Json(round_for_record(v)); }

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string iso8601_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

Json make_run_record(const std::string& command, Json arguments, std::uint64_t master_seed, Json payload) {
    Json record;
    record["command"] = command;
    record["arguments"] = std::move(arguments);
    record["master_seed"] = master_seed;
    record["timestamp"] = iso8601_timestamp();
    record["artifact_version"] = kArtifactVersion;
    record["payload"] = std::move(payload);
    return record;
}

}  // namespace apfree
